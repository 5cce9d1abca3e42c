// Shared helpers for the test binaries: independent finite-difference
// operators, direction sets, and comparison utilities.  These stay separate
// from the library code they check.
#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "nsom/geometry.hpp"

namespace nsom::test {

inline double rel_diff(const CVec3& a, const CVec3& b) {
  const double scale = std::max(a.norm(), b.norm());
  return scale > 0.0 ? (a - b).norm() / scale : 0.0;
}

inline std::vector<Vec3> lattice_directions() {
  std::vector<Vec3> dirs;
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j)
      for (int k = -1; k <= 1; ++k) {
        if (!i && !j && !k) continue;
        dirs.push_back(Vec3{double(i), double(j), double(k)}.normalized());
      }
  return dirs;
}

// Central-difference curl of a complex vector field, independent of the
// library's own residual machinery.
inline CVec3 fd_curl(const std::function<CVec3(const Vec3&)>& f, const Vec3& p,
                     double h) {
  const double inv = 1.0 / (2.0 * h);
  const CVec3 dx = (f({p.x + h, p.y, p.z}) - f({p.x - h, p.y, p.z})) * inv;
  const CVec3 dy = (f({p.x, p.y + h, p.z}) - f({p.x, p.y - h, p.z})) * inv;
  const CVec3 dz = (f({p.x, p.y, p.z + h}) - f({p.x, p.y, p.z - h})) * inv;
  return {dy.z - dz.y, dz.x - dx.z, dx.y - dy.x};
}

inline cplx fd_div(const std::function<CVec3(const Vec3&)>& f, const Vec3& p,
                   double h) {
  const double inv = 1.0 / (2.0 * h);
  const cplx dxx = (f({p.x + h, p.y, p.z}).x - f({p.x - h, p.y, p.z}).x) * inv;
  const cplx dyy = (f({p.x, p.y + h, p.z}).y - f({p.x, p.y - h, p.z}).y) * inv;
  const cplx dzz = (f({p.x, p.y, p.z + h}).z - f({p.x, p.y, p.z - h}).z) * inv;
  return dxx + dyy + dzz;
}

inline Vec3 random_direction(std::mt19937& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 v{n(rng), n(rng), n(rng)};
  while (v.norm() < 1e-6) v = Vec3{n(rng), n(rng), n(rng)};
  return v.normalized();
}

inline CVec3 random_cvec(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {cplx(u(rng), u(rng)), cplx(u(rng), u(rng)), cplx(u(rng), u(rng))};
}

}  // namespace nsom::test
