// Real and complex 3-vectors used throughout the field solvers.
#pragma once

#include <cmath>
#include <complex>

namespace nsom {

using cplx = std::complex<double>;

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  bool operator==(const Vec3&) const = default;

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm2() const { return x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }
  Vec3 normalized() const {
    const double n = norm();
    return {x / n, y / n, z / n};
  }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

// Complex-valued 3-vector; carrier of E and B phasors (e^{-iwt} convention).
struct CVec3 {
  cplx x{}, y{}, z{};

  CVec3() = default;
  CVec3(cplx xx, cplx yy, cplx zz) : x(xx), y(yy), z(zz) {}
  explicit CVec3(const Vec3& v) : x(v.x), y(v.y), z(v.z) {}

  CVec3 operator+(const CVec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  CVec3 operator-(const CVec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  CVec3 operator-() const { return {-x, -y, -z}; }
  CVec3 operator*(cplx s) const { return {x * s, y * s, z * s}; }
  CVec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  CVec3& operator+=(const CVec3& o) {
    x += o.x; y += o.y; z += o.z;
    return *this;
  }
  CVec3& operator-=(const CVec3& o) {
    x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }

  // |x|^2 + |y|^2 + |z|^2
  double norm2() const { return std::norm(x) + std::norm(y) + std::norm(z); }
  double norm() const { return std::sqrt(norm2()); }

  Vec3 real() const { return {x.real(), y.real(), z.real()}; }
  Vec3 imag() const { return {x.imag(), y.imag(), z.imag()}; }

  CVec3 cross(const CVec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  cplx dot_real(const Vec3& u) const { return x * u.x + y * u.y + z * u.z; }
};

inline CVec3 operator*(cplx s, const CVec3& v) { return v * s; }
inline CVec3 operator*(double s, const CVec3& v) { return v * s; }

// cross of a real direction with a complex vector
inline CVec3 cross(const Vec3& u, const CVec3& p) {
  return {u.y * p.z - u.z * p.y, u.z * p.x - u.x * p.z, u.x * p.y - u.y * p.x};
}

}  // namespace nsom
