#include "nsom/emitter.hpp"

#include "nsom/errors.hpp"

namespace nsom {

double survival_probability(const TwoLevelEmitter& em, double t_ns) {
  if (t_ns < 0.0) throw NegativeTime("survival probability needs t >= 0");
  return std::exp(-em.gamma * t_ns);
}

double spontaneous_rate(const CVec3& mu_ge, double omega_eg) {
  const double w3 = omega_eg * omega_eg * omega_eg;
  return w3 * mu_ge.norm2() / (3.0 * M_PI);
}

CVec3 transient_field(const TwoLevelEmitter& em, const Vec3& r, double t_ns) {
  const Vec3 R = r - em.position;
  const double d = R.norm();
  if (d < kEpsR) throw SingularPoint("transient field requested on the emitter");
  const double t_ret = t_ns - d / kSpeedOfLightNmPerNs;
  if (t_ret < 0.0) return {};  // before the light front

  const cplx w0 = em.pole();
  const cplx k0 = w0 / kSpeedOfLightNmPerNs;  // rad/nm, Im < 0
  // exact dipole E kernel with complex k, e^{ik0 R} excluded here because the
  // retarded factor e^{-i w0 (t - R/c)} already carries the full phase
  const double inv_r = 1.0 / d;
  const double inv_r2 = inv_r * inv_r;
  const double inv_r3 = inv_r2 * inv_r;
  const Vec3 u = R * inv_r;
  constexpr double q = 1.0 / (4.0 * M_PI);
  const CVec3& mu = em.mu_ge;
  const cplx udotp = mu.dot_real(u);
  const cplx i_unit(0.0, 1.0);

  const cplx trans_f = k0 * k0 * q * inv_r;
  const cplx near_f = q * inv_r3 - i_unit * k0 * q * inv_r2;
  const CVec3 uC{u.x, u.y, u.z};
  const CVec3 spatial =
      trans_f * (mu - udotp * uC) + near_f * (3.0 * udotp * uC - mu);
  const cplx phase = std::exp(-i_unit * w0 * t_ret);
  return spatial * phase;
}

double pumping_rate(const LaserDrive& drive, const TwoLevelEmitter& em) {
  const double half_gamma = 0.5 * em.gamma;
  const double detuning = drive.omega_L - em.omega_eg + em.lamb_shift;
  return 0.5 * std::norm(drive.rabi) * half_gamma /
         (half_gamma * half_gamma + detuning * detuning);
}

Populations evolve_populations(double sigma_ee0, double gamma, double gamma_prime,
                               double t_ns) {
  if (sigma_ee0 < 0.0 || sigma_ee0 > 1.0)
    throw InvalidPopulation("sigma_ee0 must lie in [0, 1]");
  if (t_ns < 0.0) throw NegativeTime("evolve_populations needs t >= 0");
  const double total = 2.0 * gamma_prime + gamma;
  const double s = gamma_prime / total;
  const double ee = s + (sigma_ee0 - s) * std::exp(-total * t_ns);
  return {ee, 1.0 - ee};
}

StationaryState stationary_population(double gamma, double gamma_prime) {
  const double s = gamma_prime / (2.0 * gamma_prime + gamma);
  return {s, s};
}

EMField classical_equivalent_fields(const TwoLevelEmitter& em, double sigma_eg_abs,
                                    double omega_L, const Vec3& r,
                                    const Environment& env) {
  const Wavenumber k = Wavenumber::from_k(omega_L / kSpeedOfLightNmPerNs);
  return env_dipole_fields(em.mu_ge * sigma_eg_abs, em.position, k, r, env);
}

double emission_intensity_coh(const TwoLevelEmitter& em, double sigma_eg_sq,
                              double omega_L, const Vec3& r, const Environment& env) {
  const Wavenumber k = Wavenumber::from_k(omega_L / kSpeedOfLightNmPerNs);
  const EMField g = env_dipole_fields(em.mu_ge, em.position, k, r, env);
  return g.E.norm2() * sigma_eg_sq;
}

double emission_intensity(const TwoLevelEmitter& em, const LaserDrive& drive,
                          const Vec3& r, const Environment& env) {
  const StationaryState s = stationary_population(em.gamma, pumping_rate(drive, em));
  return emission_intensity_coh(em, s.sigma_eg_sq, drive.omega_L, r, env);
}

double magnetic_intensity(const TwoLevelEmitter& em, const LaserDrive& drive,
                          const Vec3& r, const Environment& env) {
  const StationaryState s = stationary_population(em.gamma, pumping_rate(drive, em));
  const Wavenumber k = Wavenumber::from_k(drive.omega_L / kSpeedOfLightNmPerNs);
  const EMField g = env_dipole_fields(em.mu_ge, em.position, k, r, env);
  return g.B.norm2() * s.sigma_eg_sq;
}

double mixed_detector(cplx a, cplx b, Axis i, Axis j, const TwoLevelEmitter& em,
                      const LaserDrive& drive, const Vec3& r, const Environment& env) {
  const int ii = static_cast<int>(i), jj = static_cast<int>(j);
  if (ii < 0 || ii > 2 || jj < 0 || jj > 2)
    throw std::invalid_argument("mixed_detector axis index out of range");
  const StationaryState s = stationary_population(em.gamma, pumping_rate(drive, em));
  const EMField f = classical_equivalent_fields(em, std::sqrt(s.sigma_eg_sq),
                                                drive.omega_L, r, env);
  const cplx e_i = ii == 0 ? f.E.x : (ii == 1 ? f.E.y : f.E.z);
  const cplx b_j = jj == 0 ? f.B.x : (jj == 1 ? f.B.y : f.B.z);
  return std::norm(a * e_i + b * b_j);
}

}  // namespace nsom
