#include "nsom/em_core.hpp"

#include "nsom/errors.hpp"

namespace nsom {

cplx scalar_green(Wavenumber k, const Vec3& r, const Vec3& r0) {
  const Vec3 R = r - r0;
  const double d = R.norm();
  if (d < kEpsR) throw SingularPoint("scalar Green function evaluated at its pole");
  return std::polar(1.0 / (4.0 * M_PI * d), k.k * d);
}

EMField electric_dipole_fields(const PointDipole& dip, Wavenumber k, const Vec3& r) {
  if (dip.kind != DipoleKind::electric)
    throw std::invalid_argument("electric_dipole_fields needs an electric dipole");
  return kernels::dipole_fields_at(k.k, r - dip.position, dip.moment);
}

EMField electric_dipole_nearfield(const PointDipole& dip, Wavenumber k, const Vec3& r) {
  if (dip.kind != DipoleKind::electric)
    throw std::invalid_argument("electric_dipole_nearfield needs an electric dipole");
  const Vec3 R = r - dip.position;
  const double r2 = R.norm2();
  if (r2 < kEpsR * kEpsR)
    throw SingularPoint("field requested on top of a point source");
  const double d = std::sqrt(r2);
  const double inv_r = 1.0 / d;
  const Vec3 u = R * inv_r;
  constexpr double q = 1.0 / (4.0 * M_PI);
  const double inv_r3 = inv_r * inv_r * inv_r;
  const CVec3& P = dip.moment;
  const cplx udotp = P.dot_real(u);

  EMField f;
  f.E = (3.0 * udotp * CVec3{u.x, u.y, u.z} - P) * (q * inv_r3);
  f.B = cross(u, P) * cplx(0.0, k.k * q * inv_r * inv_r);
  return f;
}

EMField magnetic_dipole_fields(const PointDipole& dip, Wavenumber k, const Vec3& r) {
  if (dip.kind != DipoleKind::magnetic)
    throw std::invalid_argument("magnetic_dipole_fields needs a magnetic dipole");
  const EMField as_electric =
      kernels::dipole_fields_at(k.k, r - dip.position, dip.moment);
  // duality: B_m = E-kernel(M), E_m = -B-kernel(M)
  return {-as_electric.B, as_electric.E};
}

MaxwellResidual maxwell_residual(const FieldSampler& field, Wavenumber k,
                                 const Vec3& point, double step) {
  const double h = step;
  const double inv_2h = 1.0 / (2.0 * h);
  const Vec3 dx{h, 0, 0}, dy{0, h, 0}, dz{0, 0, h};

  const CVec3 exp_ = field(point + dx).E, exm = field(point - dx).E;
  const CVec3 eyp = field(point + dy).E, eym = field(point - dy).E;
  const CVec3 ezp = field(point + dz).E, ezm = field(point - dz).E;

  const CVec3 dEdx = (exp_ - exm) * inv_2h;
  const CVec3 dEdy = (eyp - eym) * inv_2h;
  const CVec3 dEdz = (ezp - ezm) * inv_2h;

  const CVec3 curl_e{dEdy.z - dEdz.y, dEdz.x - dEdx.z, dEdx.y - dEdy.x};
  const EMField center = field(point);
  const cplx ik(0.0, k.k);

  MaxwellResidual res;
  res.curl = curl_e - ik * center.B;
  res.div = dEdx.x + dEdy.y + dEdz.z;
  return res;
}

}  // namespace nsom
