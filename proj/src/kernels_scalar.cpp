#include "nsom/kernels.hpp"

namespace nsom::kernels {

void DipoleBatch::reserve(std::size_t n) {
  px.reserve(n); py.reserve(n); pz.reserve(n);
  mxr.reserve(n); mxi.reserve(n);
  myr.reserve(n); myi.reserve(n);
  mzr.reserve(n); mzi.reserve(n);
}

void DipoleBatch::push_back(const Vec3& pos, const CVec3& m) {
  px.push_back(pos.x); py.push_back(pos.y); pz.push_back(pos.z);
  mxr.push_back(m.x.real()); mxi.push_back(m.x.imag());
  myr.push_back(m.y.real()); myi.push_back(m.y.imag());
  mzr.push_back(m.z.real()); mzi.push_back(m.z.imag());
}

EMField dipole_sum_scalar(double k, const Vec3& obs, const DipoleBatch& b) {
  EMField acc;
  const std::size_t n = b.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 R{obs.x - b.px[i], obs.y - b.py[i], obs.z - b.pz[i]};
    const CVec3 P{cplx(b.mxr[i], b.mxi[i]), cplx(b.myr[i], b.myi[i]),
                  cplx(b.mzr[i], b.mzi[i])};
    const EMField f = dipole_fields_at(k, R, P);
    acc.E += f.E;
    acc.B += f.B;
  }
  return acc;
}

}  // namespace nsom::kernels
