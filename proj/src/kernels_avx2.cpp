// AVX2 + FMA variant of the batched dipole kernel.  Processes four sources per
// iteration; the phase factor e^{ikR} uses a Cephes-style polynomial sincos
// with Cody-Waite range reduction (accurate to a few ulp for the |kR| < 1e6
// arguments that occur here).  Compiled with -mavx2 -mfma in its own TU; the
// dispatcher never calls it unless the CPU reports both features.
#include "nsom/kernels.hpp"

#ifdef NSOM_HAVE_AVX2

#include <immintrin.h>

namespace nsom::kernels {

namespace {

// pi/4 split for Cody-Waite reduction and the sin/cos minimax polynomials
// over [-pi/4, pi/4].
const __m256d kDP1 = _mm256_set1_pd(7.85398125648498535156e-1);
const __m256d kDP2 = _mm256_set1_pd(3.77489470793079817668e-8);
const __m256d kDP3 = _mm256_set1_pd(2.69515142907905952645e-15);
const __m256d kFourOverPi = _mm256_set1_pd(1.27323954473516268615);

const double kSinCof[6] = {
    1.58962301576546568060e-10, -2.50507477628578072866e-8,
    2.75573136213857245213e-6,  -1.98412698295895385996e-4,
    8.33333333332211858878e-3,  -1.66666666666666307295e-1};
const double kCosCof[6] = {
    -1.13585365213876817300e-11, 2.08757008419747316778e-9,
    -2.75573141792967388112e-7,  2.48015872888517179954e-5,
    -1.38888888888730564116e-3,  4.16666666666665929218e-2};

inline __m256d polevl6(__m256d zz, const double c[6]) {
  __m256d p = _mm256_set1_pd(c[0]);
  for (int i = 1; i < 6; ++i)
    p = _mm256_fmadd_pd(p, zz, _mm256_set1_pd(c[i]));
  return p;
}

// sin and cos of four non-negative arguments.
inline void sincos4(__m256d x, __m256d& s, __m256d& c) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  const __m256d ax = _mm256_andnot_pd(sign_mask, x);
  const __m256d xsign = _mm256_and_pd(sign_mask, x);

  __m256d y = _mm256_floor_pd(_mm256_mul_pd(ax, kFourOverPi));
  __m128i ji = _mm256_cvtpd_epi32(y);  // y is integral; conversion exact
  const __m128i odd = _mm_and_si128(ji, _mm_set1_epi32(1));
  ji = _mm_add_epi32(ji, odd);
  y = _mm256_add_pd(y, _mm256_cvtepi32_pd(odd));

  // z = ((ax - y*DP1) - y*DP2) - y*DP3, |z| <= pi/4
  __m256d z = _mm256_fnmadd_pd(y, kDP1, ax);
  z = _mm256_fnmadd_pd(y, kDP2, z);
  z = _mm256_fnmadd_pd(y, kDP3, z);
  const __m256d zz = _mm256_mul_pd(z, z);

  const __m256d sin_z =
      _mm256_fmadd_pd(_mm256_mul_pd(z, zz), polevl6(zz, kSinCof), z);
  __m256d cos_z = _mm256_fnmadd_pd(zz, _mm256_set1_pd(0.5), _mm256_set1_pd(1.0));
  cos_z = _mm256_fmadd_pd(_mm256_mul_pd(zz, zz), polevl6(zz, kCosCof), cos_z);

  // octant selection: j even in {0,2,4,6}
  const __m128i zero = _mm_setzero_si128();
  const __m128i bit1 =
      _mm_cmpeq_epi32(_mm_and_si128(ji, _mm_set1_epi32(2)), zero);  // !=0 -> 0
  const __m128i bit2 = _mm_cmpeq_epi32(_mm_and_si128(ji, _mm_set1_epi32(4)), zero);
  // masks are all-ones where the bit is CLEAR
  const __m256d keep = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(bit1));
  const __m256d pos2 = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(bit2));

  const __m256d sin_oct = _mm256_blendv_pd(cos_z, sin_z, keep);
  const __m256d cos_oct = _mm256_blendv_pd(sin_z, cos_z, keep);

  // sin sign flips when j&4, plus the sign of x; cos sign when (j&2)^(j&4)
  const __m256d neg4 = _mm256_andnot_pd(pos2, sign_mask);
  const __m256d neg2 = _mm256_andnot_pd(keep, sign_mask);
  s = _mm256_xor_pd(sin_oct, _mm256_xor_pd(neg4, xsign));
  c = _mm256_xor_pd(cos_oct, _mm256_xor_pd(neg4, neg2));
}

struct CAcc {  // complex accumulator, one vector each for re/im
  __m256d re = _mm256_setzero_pd();
  __m256d im = _mm256_setzero_pd();
  void fmadd(__m256d fr, __m256d fi, __m256d vr, __m256d vi) {
    // (fr + i fi) * (vr + i vi)
    re = _mm256_fmadd_pd(fr, vr, re);
    re = _mm256_fnmadd_pd(fi, vi, re);
    im = _mm256_fmadd_pd(fr, vi, im);
    im = _mm256_fmadd_pd(fi, vr, im);
  }
  cplx horizontal() const {
    alignas(32) double r[4], i[4];
    _mm256_store_pd(r, re);
    _mm256_store_pd(i, im);
    return {((r[0] + r[1]) + r[2]) + r[3], ((i[0] + i[1]) + i[2]) + i[3]};
  }
};

}  // namespace

EMField dipole_sum_avx2(double k, const Vec3& obs, const DipoleBatch& b) {
  const std::size_t n = b.size();
  const std::size_t n4 = n - n % 4;

  const __m256d ox = _mm256_set1_pd(obs.x);
  const __m256d oy = _mm256_set1_pd(obs.y);
  const __m256d oz = _mm256_set1_pd(obs.z);
  const __m256d kk = _mm256_set1_pd(k);
  const __m256d q = _mm256_set1_pd(1.0 / (4.0 * M_PI));
  const __m256d k2q = _mm256_set1_pd(k * k / (4.0 * M_PI));
  const __m256d kq = _mm256_set1_pd(k / (4.0 * M_PI));
  const __m256d eps2 = _mm256_set1_pd(kEpsR * kEpsR);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d three = _mm256_set1_pd(3.0);

  CAcc ex, ey, ez, bx, by, bz;

  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d rx = _mm256_sub_pd(ox, _mm256_loadu_pd(&b.px[i]));
    const __m256d ry = _mm256_sub_pd(oy, _mm256_loadu_pd(&b.py[i]));
    const __m256d rz = _mm256_sub_pd(oz, _mm256_loadu_pd(&b.pz[i]));

    __m256d r2 = _mm256_mul_pd(rx, rx);
    r2 = _mm256_fmadd_pd(ry, ry, r2);
    r2 = _mm256_fmadd_pd(rz, rz, r2);
    if (_mm256_movemask_pd(_mm256_cmp_pd(r2, eps2, _CMP_LT_OQ)) != 0)
      throw SingularPoint("field requested on top of a point source");

    const __m256d r = _mm256_sqrt_pd(r2);
    const __m256d inv_r = _mm256_div_pd(one, r);
    const __m256d inv_r2 = _mm256_mul_pd(inv_r, inv_r);
    const __m256d inv_r3 = _mm256_mul_pd(inv_r2, inv_r);
    const __m256d ux = _mm256_mul_pd(rx, inv_r);
    const __m256d uy = _mm256_mul_pd(ry, inv_r);
    const __m256d uz = _mm256_mul_pd(rz, inv_r);

    __m256d cs, sn;
    sincos4(_mm256_mul_pd(kk, r), sn, cs);

    // trans_f = k^2 q/r (cs + i sn)
    const __m256d tmag = _mm256_mul_pd(k2q, inv_r);
    const __m256d trans_re = _mm256_mul_pd(tmag, cs);
    const __m256d trans_im = _mm256_mul_pd(tmag, sn);
    // near_f = (q/r^3 - i k q/r^2)(cs + i sn)
    const __m256d nr = _mm256_mul_pd(q, inv_r3);
    const __m256d ni = _mm256_mul_pd(kq, inv_r2);  // minus sign applied below
    const __m256d near_re = _mm256_fmadd_pd(ni, sn, _mm256_mul_pd(nr, cs));
    const __m256d near_im = _mm256_fnmadd_pd(ni, cs, _mm256_mul_pd(nr, sn));
    // b_f = (k^2 q/r + i k q/r^2)(cs + i sn)
    const __m256d b_re = _mm256_fnmadd_pd(ni, sn, _mm256_mul_pd(tmag, cs));
    const __m256d b_im = _mm256_fmadd_pd(ni, cs, _mm256_mul_pd(tmag, sn));

    const __m256d pxr = _mm256_loadu_pd(&b.mxr[i]), pxi = _mm256_loadu_pd(&b.mxi[i]);
    const __m256d pyr = _mm256_loadu_pd(&b.myr[i]), pyi = _mm256_loadu_pd(&b.myi[i]);
    const __m256d pzr = _mm256_loadu_pd(&b.mzr[i]), pzi = _mm256_loadu_pd(&b.mzi[i]);

    // u . P
    __m256d udr = _mm256_mul_pd(ux, pxr);
    udr = _mm256_fmadd_pd(uy, pyr, udr);
    udr = _mm256_fmadd_pd(uz, pzr, udr);
    __m256d udi = _mm256_mul_pd(ux, pxi);
    udi = _mm256_fmadd_pd(uy, pyi, udi);
    udi = _mm256_fmadd_pd(uz, pzi, udi);

    // per-component E = trans_f (P - u (u.P)) + near_f (3 u (u.P) - P)
    auto accum_e = [&](CAcc& acc, __m256d u, __m256d pr, __m256d pi) {
      const __m256d t_r = _mm256_fnmadd_pd(u, udr, pr);
      const __m256d t_i = _mm256_fnmadd_pd(u, udi, pi);
      const __m256d n_r = _mm256_fmsub_pd(_mm256_mul_pd(three, u), udr, pr);
      const __m256d n_i = _mm256_fmsub_pd(_mm256_mul_pd(three, u), udi, pi);
      acc.fmadd(trans_re, trans_im, t_r, t_i);
      acc.fmadd(near_re, near_im, n_r, n_i);
    };
    accum_e(ex, ux, pxr, pxi);
    accum_e(ey, uy, pyr, pyi);
    accum_e(ez, uz, pzr, pzi);

    // B = b_f (u x P)
    auto accum_b = [&](CAcc& acc, __m256d ua, __m256d par, __m256d pai,
                       __m256d ub, __m256d pbr, __m256d pbi) {
      const __m256d c_r = _mm256_fmsub_pd(ua, par, _mm256_mul_pd(ub, pbr));
      const __m256d c_i = _mm256_fmsub_pd(ua, pai, _mm256_mul_pd(ub, pbi));
      acc.fmadd(b_re, b_im, c_r, c_i);
    };
    accum_b(bx, uy, pzr, pzi, uz, pyr, pyi);
    accum_b(by, uz, pxr, pxi, ux, pzr, pzi);
    accum_b(bz, ux, pyr, pyi, uy, pxr, pxi);
  }

  EMField acc;
  acc.E = CVec3(ex.horizontal(), ey.horizontal(), ez.horizontal());
  acc.B = CVec3(bx.horizontal(), by.horizontal(), bz.horizontal());

  for (std::size_t i = n4; i < n; ++i) {
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

#endif  // NSOM_HAVE_AVX2
