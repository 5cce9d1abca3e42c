#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "nsom/errors.hpp"
#include "nsom/sources.hpp"
#include "support.hpp"

using namespace nsom;

namespace {
const Wavenumber k600 = Wavenumber::from_lambda(600.0);

RingAperture make_ring(double a = 40.0) {
  RingAperture r;
  r.radius = a;
  return r;
}
}  // namespace

TEST_CASE("ring construction invariants") {
  RingAperture bad = make_ring(-1.0);
  CHECK_THROWS_AS(bad.validate(), InvalidGeometry);
  bad = make_ring();
  bad.n_segments = 15;
  CHECK_THROWS_AS(bad.validate(), InvalidGeometry);
  bad.n_segments = 14;
  CHECK_THROWS_AS(bad.validate(), InvalidGeometry);
  bad.n_segments = 16;
  CHECK_NOTHROW(bad.validate());
}

TEST_CASE("line densities at cardinal angles") {
  const RingAperture ring = make_ring();
  const double ka = k600.k * ring.radius;

  const RingDensities at0 = ring_line_densities(ring, k600, 0.0);
  CHECK(at0.eta == cplx(1.0));
  CHECK(at0.j_phi == cplx(0.0));
  CHECK(at0.gamma == cplx(0.0));
  CHECK(at0.k_phi == cplx(0.0, -2.0 * ka));

  const RingDensities at90 = ring_line_densities(ring, k600, M_PI_2);
  CHECK(std::abs(at90.eta) <= 1e-16);
  CHECK(at90.j_phi == cplx(0.0, ka));
}

TEST_CASE("total charge and magnetic charge are zero") {
  const RingAperture ring = make_ring();
  cplx eta_sum = 0.0, gamma_sum = 0.0;
  const double dphi = 2.0 * M_PI / ring.n_segments;
  for (int i = 0; i < ring.n_segments; ++i) {
    const RingDensities d = ring_line_densities(ring, k600, dphi * i);
    eta_sum += d.eta * ring.radius * dphi;
    gamma_sum += d.gamma * ring.radius * dphi;
  }
  CHECK(std::abs(eta_sum) < 1e-12);
  CHECK(std::abs(gamma_sum) < 1e-12);
}

TEST_CASE("equivalent electric dipole: closed form vs charge quadrature") {
  const RingAperture ring = make_ring(40.0);
  const CVec3 p = equivalent_electric_dipole(ring);
  const double expected = 1600.0 * M_PI;  // sigma0 a^2 pi
  CHECK(p.x == cplx(expected));
  CHECK(p.y == cplx(0.0));
  CHECK(p.z == cplx(0.0));

  // oracle: P = integral r eta a dphi over the rim
  Vec3 quad{};
  const double dphi = 2.0 * M_PI / ring.n_segments;
  for (int i = 0; i < ring.n_segments; ++i) {
    const double phi = dphi * i;
    quad = quad + Vec3{ring.radius * std::cos(phi), ring.radius * std::sin(phi), 0.0} *
                      (ring.sigma0 * std::cos(phi) * ring.radius * dphi);
  }
  CHECK(std::abs(quad.x - expected) <= 1e-10 * expected);
  CHECK(std::abs(quad.y) <= 1e-12 * expected);
  CHECK(std::abs(quad.z) <= 1e-12 * expected);
}

TEST_CASE("doubling the radius quadruples the dipole") {
  const CVec3 p1 = equivalent_electric_dipole(make_ring(40.0));
  const CVec3 p2 = equivalent_electric_dipole(make_ring(80.0));
  CHECK(p2.x == 4.0 * p1.x);
}

TEST_CASE("magnetic moment: zero for the electric distribution, 2 z x P otherwise") {
  RingAperture ring = make_ring(40.0);
  const double scale = ring.sigma0 * ring.radius * ring.radius;

  ring.include_magnetic = false;
  CHECK(equivalent_magnetic_dipole(ring).norm2() == 0.0);

  // oracle: M = (1/2) integral r x J over the rim; J along phi-hat
  cplx mz = 0.0;
  const double dphi = 2.0 * M_PI / ring.n_segments;
  for (int i = 0; i < ring.n_segments; ++i) {
    const double phi = dphi * i;
    const cplx j_phi(0.0, k600.k * ring.radius * ring.sigma0 * std::sin(phi));
    mz += 0.5 * ring.radius * j_phi * ring.radius * dphi;  // r x phi-hat = a z-hat
  }
  CHECK(std::abs(mz) < 1e-12 * scale);

  ring.include_magnetic = true;
  const CVec3 m = equivalent_magnetic_dipole(ring);
  CHECK(m.y == cplx(3200.0 * M_PI));
  CHECK(m.x == cplx(0.0));
  CHECK(m.z == cplx(0.0));

  // dual-route oracle: M = integral r gamma a dphi
  Vec3 quad{};
  for (int i = 0; i < ring.n_segments; ++i) {
    const double phi = dphi * i;
    quad = quad + Vec3{ring.radius * std::cos(phi), ring.radius * std::sin(phi), 0.0} *
                      (2.0 * ring.sigma0 * std::sin(phi) * ring.radius * dphi);
  }
  CHECK(std::abs(quad.y - m.y.real()) <= 1e-10 * std::abs(m.y.real()));
  CHECK(std::abs(quad.x) <= 1e-12 * scale);
}

TEST_CASE("far field on the axis approaches the equivalent dipole") {
  RingAperture ring = make_ring();
  ring.include_magnetic = false;
  const Vec3 r{0.0, 0.0, 50.0 * 600.0};
  const EMField rf = ring_fields(ring, k600, r, {.check_convergence = false});
  const PointDipole dip{equivalent_electric_dipole(ring), {}, DipoleKind::electric};
  const EMField df = electric_dipole_fields(dip, k600, r);
  CHECK((rf.E - df.E).norm() / df.E.norm() < 0.01);
  CHECK((rf.E - df.E).norm() / df.E.norm() < 10.0 * ring.radius / r.norm());
}

TEST_CASE("equatorial far field carries the finite-size Bessel factor") {
  // The rim has finite extent: along the polarization-orthogonal equator the
  // field amplitude is J0(ka) - J2(ka) of the ideal-dipole value, independent
  // of R.  This pins the quadrature against an independent special-function
  // oracle.
  RingAperture ring = make_ring();
  ring.include_magnetic = false;
  const PointDipole dip{equivalent_electric_dipole(ring), {}, DipoleKind::electric};
  const double u = k600.k * ring.radius;
  const double expected = std::cyl_bessel_j(0, u) - std::cyl_bessel_j(2, u);
  for (double R : {50.0 * 600.0, 200.0 * 600.0}) {
    const Vec3 r{0.0, R, 0.0};
    const EMField rf = ring_fields(ring, k600, r, {.check_convergence = false});
    const EMField df = electric_dipole_fields(dip, k600, r);
    CAPTURE(R);
    CHECK(std::abs(rf.E.norm() / df.E.norm() - expected) < 1e-3);
  }
}

TEST_CASE("field at the ring center is finite and x-polarized") {
  const RingAperture ring = make_ring();
  const EMField f = ring_fields(ring, k600, {0.0, 0.0, 1e-3}, {.check_convergence = false});
  CHECK(std::isfinite(f.E.norm()));
  CHECK(std::abs(f.E.y) <= 1e-12 * f.E.norm());
  CHECK(std::abs(f.E.x) > std::abs(f.E.z));
  CHECK(std::abs(f.E.x) > 0.0);
}

TEST_CASE("quadrature already converged at 180 segments far from the rim") {
  RingAperture coarse = make_ring();
  coarse.n_segments = 180;
  RingAperture fine = make_ring();
  fine.n_segments = 360;
  const Vec3 r{0.0, 0.0, 1000.0};
  const EMField a = ring_fields(coarse, k600, r, {.check_convergence = false});
  const EMField b = ring_fields(fine, k600, r, {.check_convergence = false});
  CHECK((a.E - b.E).norm() / b.E.norm() < 1e-9);
}

TEST_CASE("non-converged quadrature is reported, not silently accepted") {
  RingAperture ring = make_ring();
  ring.n_segments = 16;
  const Vec3 near_rim{41.0, 0.0, 0.0};
  CHECK_THROWS_AS(ring_fields(ring, k600, near_rim), NonConverged);
}

TEST_CASE("evaluation on the rim is singular") {
  const RingAperture ring = make_ring();
  CHECK_THROWS_AS(ring_fields(ring, k600, {40.0, 0.0, 0.0}), SingularPoint);
}

TEST_CASE("mirror symmetries of the ring field") {
  const RingAperture ring = make_ring();
  const RingFieldOptions fast{.check_convergence = false};
  for (const Vec3& p : {Vec3{25.0, 18.0, 30.0}, Vec3{-60.0, 35.0, -20.0}}) {
    const EMField f = ring_fields(ring, k600, p, fast);
    const EMField g = ring_fields(ring, k600, {p.x, -p.y, p.z}, fast);
    CHECK(std::abs(f.E.x - g.E.x) <= 1e-12 * f.E.norm());
    CHECK(std::abs(f.E.y + g.E.y) <= 1e-12 * f.E.norm());
  }
  const EMField h1 = ring_fields(ring, k600, {37.0, 0.0, 22.0}, fast);
  const EMField h2 = ring_fields(ring, k600, {-37.0, 0.0, 22.0}, fast);
  CHECK(std::abs(h1.E.x - h2.E.x) <= 1e-12 * h1.E.norm());
}

TEST_CASE("periodic trapezoid converges faster than any power") {
  const Vec3 p{45.0, 0.0, 3.0};
  RingAperture ref_ring = make_ring();
  ref_ring.n_segments = 2048;
  const EMField ref = ring_fields(ref_ring, k600, p, {.check_convergence = false});

  std::vector<double> errs;
  for (int n : {16, 32, 64, 128}) {
    RingAperture r = make_ring();
    r.n_segments = n;
    const EMField f = ring_fields(r, k600, p, {.check_convergence = false});
    errs.push_back((f.E - ref.E).norm() / ref.E.norm());
  }
  // successive ratios shrink: faster than any fixed power of 1/n
  CHECK(errs[1] / errs[0] > errs[2] / errs[1]);
  CHECK(errs[2] / errs[1] > errs[3] / errs[2]);
  CHECK(errs[3] < 1e-4);
}
