// Scalar and dyadic Green functions, exact and asymptotic point-dipole fields,
// the electric/magnetic duality transform, and finite-difference residual
// checks of the harmonic Maxwell equations.
//
// Conventions: lengths in nm, Heaviside-Lorentz fields, time factor e^{-iwt}
// suppressed everywhere.  Dipole moments carry arbitrary units; everything
// downstream consumes relative intensities only.
#pragma once

#include <functional>

#include "nsom/geometry.hpp"
#include "nsom/kernels.hpp"

namespace nsom {

inline constexpr double kSpeedOfLightNmPerNs = 2.99792458e8;

struct Wavenumber {
  double k;       // rad/nm
  double lambda;  // nm

  static Wavenumber from_lambda(double lambda_nm) {
    if (!(lambda_nm > 0.0)) throw std::invalid_argument("wavelength must be positive");
    return {2.0 * M_PI / lambda_nm, lambda_nm};
  }
  static Wavenumber from_k(double k_rad_per_nm) {
    if (!(k_rad_per_nm > 0.0)) throw std::invalid_argument("wavenumber must be positive");
    return {k_rad_per_nm, 2.0 * M_PI / k_rad_per_nm};
  }
};

enum class DipoleKind { electric, magnetic };

struct PointDipole {
  CVec3 moment;     // P or M, arbitrary units
  Vec3 position;    // nm
  DipoleKind kind = DipoleKind::electric;
};

// G0(R) = e^{ikR} / (4 pi R)
cplx scalar_green(Wavenumber k, const Vec3& r, const Vec3& r0);

// Exact harmonic fields of an electric point dipole.
EMField electric_dipole_fields(const PointDipole& dip, Wavenumber k, const Vec3& r);

// kR << 1 asymptotics: static-dipole E (1/R^3) and induction B = ik(uxP)/(4piR^2).
EMField electric_dipole_nearfield(const PointDipole& dip, Wavenumber k, const Vec3& r);

// Magnetic point dipole via the duality substitution E->B, B->-E, P->M.
EMField magnetic_dipole_fields(const PointDipole& dip, Wavenumber k, const Vec3& r);

// (E, B) -> (B, -E); applying it twice gives (-E, -B).
inline EMField duality(const EMField& f) { return {f.B, -f.E}; }

using FieldSampler = std::function<EMField(const Vec3&)>;

struct MaxwellResidual {
  CVec3 curl;  // central-difference curl(E) - ik B
  cplx div;    // central-difference div(E)
};

// Central differences with the given step (nm).  The caller interprets the
// magnitudes; both should be far below the local field scale off-source.
MaxwellResidual maxwell_residual(const FieldSampler& field, Wavenumber k,
                                 const Vec3& point, double step = 0.01);

}  // namespace nsom
