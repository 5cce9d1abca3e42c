// Batched point-dipole field kernels: scalar reference implementation plus an
// AVX2 variant selected at runtime.  The batch sum is the inner loop of the
// ring-source quadrature and of every image-method decomposition, so it is the
// one place worth vectorizing.
#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "nsom/errors.hpp"
#include "nsom/geometry.hpp"

namespace nsom {

// Singularity guard radius in nm; far below any physical scale in scope.
inline constexpr double kEpsR = 1e-9;

struct EMField {
  CVec3 E, B;
};

namespace kernels {

// Structure-of-arrays batch of elementary electric dipoles.
struct DipoleBatch {
  std::vector<double> px, py, pz;                    // positions (nm)
  std::vector<double> mxr, mxi, myr, myi, mzr, mzi;  // complex moments

  void reserve(std::size_t n);
  void push_back(const Vec3& pos, const CVec3& m);
  std::size_t size() const { return px.size(); }
  bool empty() const { return px.empty(); }
};

// Exact harmonic fields of one electric point dipole, evaluated at
// displacement R = r - r0 (Heaviside-Lorentz, e^{-iwt} suppressed):
//   E = k^2 (u x P) x u e^{ikR}/(4 pi R)
//       + [3 u (u.P) - P] (1/(4 pi R^3) - ik/(4 pi R^2)) e^{ikR}
//   B = k^2 (u x P) e^{ikR}/(4 pi R) (1 + i/(kR))
inline EMField dipole_fields_at(double k, const Vec3& R, const CVec3& P) {
  const double r2 = R.norm2();
  if (r2 < kEpsR * kEpsR)
    throw SingularPoint("field requested on top of a point source");
  const double r = std::sqrt(r2);
  const double inv_r = 1.0 / r;
  const double inv_r2 = inv_r * inv_r;
  const double inv_r3 = inv_r2 * inv_r;
  const double ux = R.x * inv_r, uy = R.y * inv_r, uz = R.z * inv_r;
  const double kr = k * r;
  const cplx eikr(std::cos(kr), std::sin(kr));
  constexpr double q = 1.0 / (4.0 * M_PI);
  const cplx trans_f = (k * k * q * inv_r) * eikr;
  const cplx near_f = cplx(q * inv_r3, -k * q * inv_r2) * eikr;
  const cplx b_f = cplx(k * k * q * inv_r, k * q * inv_r2) * eikr;
  const cplx udotp = ux * P.x + uy * P.y + uz * P.z;

  EMField f;
  f.E.x = trans_f * (P.x - ux * udotp) + near_f * (3.0 * ux * udotp - P.x);
  f.E.y = trans_f * (P.y - uy * udotp) + near_f * (3.0 * uy * udotp - P.y);
  f.E.z = trans_f * (P.z - uz * udotp) + near_f * (3.0 * uz * udotp - P.z);
  f.B.x = b_f * (uy * P.z - uz * P.y);
  f.B.y = b_f * (uz * P.x - ux * P.z);
  f.B.z = b_f * (ux * P.y - uy * P.x);
  return f;
}

// Same kernel with a complex wavenumber (decaying source); only the scalar
// path needs it.
inline EMField dipole_fields_at_ck(cplx k, const Vec3& R, const CVec3& P) {
  const double r2 = R.norm2();
  if (r2 < kEpsR * kEpsR)
    throw SingularPoint("field requested on top of a point source");
  const double r = std::sqrt(r2);
  const double inv_r = 1.0 / r;
  const double inv_r2 = inv_r * inv_r;
  const double inv_r3 = inv_r2 * inv_r;
  const double ux = R.x * inv_r, uy = R.y * inv_r, uz = R.z * inv_r;
  const cplx i_unit(0.0, 1.0);
  const cplx eikr = std::exp(i_unit * k * r);
  constexpr double q = 1.0 / (4.0 * M_PI);
  const cplx trans_f = k * k * q * inv_r * eikr;
  const cplx near_f = (q * inv_r3 - i_unit * k * q * inv_r2) * eikr;
  const cplx b_f = (k * k * q * inv_r + i_unit * k * q * inv_r2) * eikr;
  const cplx udotp = ux * P.x + uy * P.y + uz * P.z;

  EMField f;
  f.E.x = trans_f * (P.x - ux * udotp) + near_f * (3.0 * ux * udotp - P.x);
  f.E.y = trans_f * (P.y - uy * udotp) + near_f * (3.0 * uy * udotp - P.y);
  f.E.z = trans_f * (P.z - uz * udotp) + near_f * (3.0 * uz * udotp - P.z);
  f.B.x = b_f * (uy * P.z - uz * P.y);
  f.B.y = b_f * (uz * P.x - ux * P.z);
  f.B.z = b_f * (ux * P.y - uy * P.x);
  return f;
}

// Accumulated fields of every dipole in the batch at one observation point.
EMField dipole_sum_scalar(double k, const Vec3& obs, const DipoleBatch& b);
#ifdef NSOM_HAVE_AVX2
EMField dipole_sum_avx2(double k, const Vec3& obs, const DipoleBatch& b);
#endif

// Runtime-dispatched entry point (AVX2 when the CPU supports it, scalar
// otherwise; NSOM_SIMD=scalar forces the reference path).
EMField dipole_sum(double k, const Vec3& obs, const DipoleBatch& b);

std::string_view active_kernel();
// "auto", "scalar" or "avx2"; throws std::invalid_argument for anything else
// or when avx2 is requested on a machine without it.
void force_kernel(std::string_view name);

}  // namespace kernels
}  // namespace nsom
