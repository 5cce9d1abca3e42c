#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "nsom/errors.hpp"
#include "nsom/halfspace.hpp"
#include "support.hpp"

using namespace nsom;

namespace {
const Wavenumber k600 = Wavenumber::from_lambda(600.0);
const HalfSpace glass{2.25};
const CVec3 generic{cplx(0.8, 0.1), cplx(-0.3, 0.4), cplx(0.5, -0.2)};
}  // namespace

TEST_CASE("reflection and transmission factors for glass") {
  const double beta = 1.25 / 3.25;  // independent arithmetic
  const double tau = 2.0 / 3.25;
  CHECK(std::abs(glass.beta() - beta) <= 1e-15);
  CHECK(std::abs(glass.tau() - tau) <= 1e-15);
  CHECK(std::abs(glass.beta() + glass.tau() - 1.0) <= 1e-15);
  const HalfSpace vac{1.0};
  CHECK(vac.beta() == 0.0);
  CHECK(vac.tau() == 1.0);
}

TEST_CASE("beta is monotone in epsilon and bounded by one") {
  double prev = 0.0;
  for (double eps : {1.5, 2.25, 4.0, 16.0, 256.0, 4096.0}) {
    const HalfSpace hs{eps};
    CHECK(hs.beta() > prev);
    CHECK(hs.beta() < 1.0);
    prev = hs.beta();
  }
}

TEST_CASE("image dipole moments") {
  const Vec3 r0{3.0, -4.0, 17.0};

  const ImageDipole horizontal = image_dipole(CVec3{1.0, 0.0, 0.0}, r0, glass);
  CHECK(std::abs(horizontal.moment.x - cplx(-1.25 / 3.25)) <= 1e-15);
  CHECK(horizontal.moment.y == cplx(0.0));
  CHECK(horizontal.moment.z == cplx(0.0));
  CHECK(horizontal.position == Vec3{3.0, -4.0, -17.0});

  const ImageDipole vertical = image_dipole(CVec3{0.0, 0.0, 1.0}, r0, glass);
  CHECK(std::abs(vertical.moment.z - cplx(1.25 / 3.25)) <= 1e-15);

  const ImageDipole none = image_dipole(CVec3{1.0, 0.0, 0.0}, r0, HalfSpace{1.0});
  CHECK(none.moment.norm2() == 0.0);

  CHECK_THROWS_AS(image_dipole(CVec3{1.0, 0.0, 0.0}, {0.0, 0.0, -5.0}, glass),
                  InvalidGeometry);
}

TEST_CASE("vacuum limit reduces exactly to the free dipole") {
  const HalfSpace vac{1.0};
  const Vec3 r0{0.0, 0.0, 25.0};
  const Vec3 r{30.0, -12.0, 8.0};
  const EMField above = field_above(generic, r0, k600, r, vac);
  const EMField free = kernels::dipole_fields_at(k600.k, r - r0, generic);
  CHECK(above.E.x == free.E.x);
  CHECK(above.E.y == free.E.y);
  CHECK(above.E.z == free.E.z);
  CHECK(above.B.z == free.B.z);

  const Vec3 below_pt{10.0, 5.0, -40.0};
  const EMField below = field_below(generic, r0, k600, below_pt, vac);
  const EMField freeb = kernels::dipole_fields_at(k600.k, below_pt - r0, generic);
  CHECK(below.E.x == freeb.E.x);
  CHECK(below.B.y == freeb.B.y);
}

TEST_CASE("transmitted field is tau times the vacuum field") {
  const Vec3 r0{0.0, 0.0, 20.0};
  const Vec3 r{15.0, -9.0, -35.0};
  const EMField below = field_below(generic, r0, k600, r, glass);
  const EMField free = kernels::dipole_fields_at(k600.k, r - r0, generic);
  const double tau = 2.0 / 3.25;
  CHECK(test::rel_diff(below.E, free.E * tau) <= 1e-15);
}

TEST_CASE("tangential E is continuous across the interface") {
  const CVec3 horizontal{cplx(1.0, 0.3), cplx(-0.6, 0.2), 0.0};
  const Vec3 r0{3.0, -4.0, 17.0};
  for (const Vec3& q : {Vec3{20.0, 10.0, 0.0}, Vec3{-35.0, 4.0, 0.0},
                        Vec3{60.0, -50.0, 0.0}}) {
    const EMField above = field_above(horizontal, r0, k600, q, glass);
    const EMField below = field_below(horizontal, r0, k600, q, glass);
    const double scale = std::max(above.E.norm(), below.E.norm());
    CHECK(std::abs(above.E.x - below.E.x) <= 1e-10 * scale);
    CHECK(std::abs(above.E.y - below.E.y) <= 1e-10 * scale);
  }
}

TEST_CASE("transmitted field is continuous in epsilon near one") {
  const Vec3 r0{0.0, 0.0, 20.0};
  const Vec3 r{10.0, 3.0, -25.0};
  const EMField at1 = field_below(generic, r0, k600, r, HalfSpace{1.0});
  const EMField lo = field_below(generic, r0, k600, r, HalfSpace{1.0 - 1e-9});
  const EMField hi = field_below(generic, r0, k600, r, HalfSpace{1.0 + 1e-9});
  CHECK(test::rel_diff(lo.E, at1.E) <= 1e-8);
  CHECK(test::rel_diff(hi.E, at1.E) <= 1e-8);
}

TEST_CASE("large epsilon approaches the perfect-conductor image") {
  const CVec3 P{1.0, 0.0, 0.0};
  const Vec3 r0{0.0, 0.0, 30.0};
  const Vec3 r{25.0, 0.0, 10.0};
  // perfect conductor: image moment exactly -P at the mirror point
  EMField pc = kernels::dipole_fields_at(k600.k, r - r0, P);
  const EMField img =
      kernels::dipole_fields_at(k600.k, r - Vec3{0.0, 0.0, -30.0}, -1.0 * P);
  pc.E += img.E;

  double prev = 1e300;
  for (double eps : {4.0, 16.0, 64.0, 256.0}) {
    const EMField f = field_above(P, r0, k600, r, HalfSpace{eps});
    const double dist = (f.E - pc.E).norm();
    CHECK(dist < prev);
    prev = dist;
  }
}

TEST_CASE("ring above the substrate reduces to the vacuum ring at eps = 1") {
  RingAperture ring;
  ring.radius = 40.0;
  ring.position = {0.0, 0.0, 20.0};
  const HalfSpace vac{1.0};
  const RingFieldOptions fast{.check_convergence = false};
  for (const Vec3& p : {Vec3{55.0, 10.0, 6.0}, Vec3{-20.0, 30.0, -15.0}}) {
    const EMField hs = ring_fields_halfspace(ring, k600, p, vac, InterfaceSide::below, fast);
    const EMField free = ring_fields(ring, k600, p, fast);
    CHECK(test::rel_diff(hs.E, free.E) <= 1e-12);
    CHECK(test::rel_diff(hs.B, free.B) <= 1e-12);
  }
}

TEST_CASE("ring far field above matches the imaged equivalent dipole pair") {
  RingAperture ring;
  ring.radius = 40.0;
  ring.position = {0.0, 0.0, 20.0};
  ring.include_magnetic = false;
  const Vec3 r{0.0, 0.0, 50.0 * 600.0};
  const EMField rf = ring_fields_halfspace(ring, k600, r, glass, InterfaceSide::below,
                                           {.check_convergence = false});

  const CVec3 P = equivalent_electric_dipole(ring);
  const EMField direct = kernels::dipole_fields_at(k600.k, r - ring.position, P);
  const ImageDipole img = image_dipole(P, ring.position, glass);
  const EMField mirror = kernels::dipole_fields_at(k600.k, r - img.position, img.moment);
  const CVec3 pair = direct.E + mirror.E;
  CHECK((rf.E - pair).norm() / pair.norm() < 0.02);
}

TEST_CASE("ring over glass: rim-localized maxima above, smoothed lobe below") {
  RingAperture ring;
  ring.radius = 40.0;
  ring.position = {0.0, 0.0, 20.0};
  const RingFieldOptions fast{.check_convergence = false};
  auto row_profile = [&](double z) {
    std::vector<double> e2;
    for (double x = -100.0; x <= 100.0; x += 2.0)
      e2.push_back(ring_fields_halfspace(ring, k600, {x, 0.0, z}, glass,
                                         InterfaceSide::below, fast)
                       .E.norm2());
    return e2;
  };
  auto argmax = [](const std::vector<double>& v) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
      if (v[i] > v[best]) best = i;
    return -100.0 + 2.0 * best;
  };
  auto center_over_peak = [](const std::vector<double>& v) {
    double peak = 0.0;
    for (double e : v) peak = std::max(peak, e);
    return v[v.size() / 2] / peak;
  };

  // between rim and interface: energy concentrates near |x| ~ a, deep dip at 0
  const auto above = row_profile(1.0);
  CHECK(std::abs(std::abs(argmax(above)) - ring.radius) <= 10.0);
  CHECK(center_over_peak(above) < 0.2);

  // transmitted side: the lobe fills in with depth and ends up single-peaked
  double prev = center_over_peak(above);
  for (double z : {-1.0, -10.0, -30.0, -60.0}) {
    const double ratio = center_over_peak(row_profile(z));
    CHECK(ratio > prev);
    prev = ratio;
  }
  const auto deep = row_profile(-60.0);
  CHECK(std::abs(argmax(deep)) <= 2.0);
}

TEST_CASE("magnetic dipole above the substrate") {
  const CVec3 M = generic;
  const Vec3 r0{0.0, 0.0, 22.0};

  SUBCASE("vacuum limit is exact") {
    const HalfSpace vac{1.0};
    const Vec3 r{14.0, 9.0, 40.0};
    const CVec3 e = magnetic_dipole_field_halfspace(M, r0, k600, r, vac);
    const PointDipole md{M, r0, DipoleKind::magnetic};
    const CVec3 ref = magnetic_dipole_fields(md, k600, r).E;
    CHECK(e.x == ref.x);
    CHECK(e.y == ref.y);
    CHECK(e.z == ref.z);
  }

  SUBCASE("matches (i/k) curl of the assembled dyadic, both branches") {
    for (const Vec3& r : {Vec3{30.0, -14.0, 35.0}, Vec3{24.0, 17.0, -28.0}}) {
      const CVec3 analytic = magnetic_dipole_field_halfspace(M, r0, k600, r, glass);
      const auto gm = [&](const Vec3& p) {
        return halfspace_dipole_fields(M, r0, k600, p, glass).E;
      };
      const CVec3 from_curl = test::fd_curl(gm, r, 0.01) * (cplx(0.0, 1.0) / k600.k);
      CHECK(test::rel_diff(analytic, from_curl) < 1e-4);
    }
  }

  SUBCASE("radiation zone falls off as 1/R on the axis") {
    const CVec3 My{0.0, 1.0, 0.0};
    const double R = 1e3 / k600.k;
    const double e1 =
        magnetic_dipole_field_halfspace(My, r0, k600, {0.0, 0.0, R}, glass).norm();
    const double e2 =
        magnetic_dipole_field_halfspace(My, r0, k600, {0.0, 0.0, 2.0 * R}, glass).norm();
    CHECK(std::abs(e1 / e2 - 2.0) < 0.05 * 2.0);
  }
}

TEST_CASE("interface-side switch controls the z = 0 branch") {
  const Vec3 r0{0.0, 0.0, 12.0};
  const Vec3 q{18.0, 6.0, 0.0};
  const EMField below = halfspace_dipole_fields(generic, r0, k600, q, glass,
                                                InterfaceSide::below);
  const EMField above = halfspace_dipole_fields(generic, r0, k600, q, glass,
                                                InterfaceSide::above);
  const EMField ref_b = field_below(generic, r0, k600, q, glass);
  const EMField ref_a = field_above(generic, r0, k600, q, glass);
  CHECK(below.E.x == ref_b.E.x);
  CHECK(above.E.x == ref_a.E.x);
  // normal E jumps, tangential E does not
  CHECK(std::abs(above.E.z - below.E.z) > 1e-6 * above.E.norm());
}

TEST_CASE("image construction preserves linearity") {
  const Vec3 r0{0.0, 0.0, 15.0};
  const Vec3 r{22.0, -8.0, 9.0};
  const CVec3 p1{cplx(1.0, 0.2), cplx(0.0, -0.5), cplx(0.3, 0.0)};
  const CVec3 p2{cplx(-0.4, 0.0), cplx(0.7, 0.1), cplx(0.0, 0.9)};
  const EMField fa = field_above(p1, r0, k600, r, glass);
  const EMField fb = field_above(p2, r0, k600, r, glass);
  const EMField fab = field_above(p1 + p2, r0, k600, r, glass);
  CHECK((fab.E - fa.E - fb.E).norm() <= 1e-12 * fab.E.norm());
}
