// Two-level emitter photophysics: spontaneous decay, the transient retarded
// field of a decaying dipole, pumping under weak coherent drive, stationary
// populations, and the classical-equivalent photodetection intensities.
//
// Rates are 1/ns, frequencies rad/ns, positions nm.  spontaneous_rate works in
// natural units (hbar = c = 1, lengths in nm); rate_to_inverse_ns converts.
#pragma once

#include "nsom/environment.hpp"

namespace nsom {

struct TwoLevelEmitter {
  double omega_eg;         // transition frequency, rad/ns
  double gamma;            // spontaneous rate, 1/ns
  double lamb_shift = 0.0; // rad/ns
  CVec3 mu_ge;             // transition dipole, arbitrary units
  Vec3 position{};

  // complex pole w0 = w_eg - Delta - i Gamma/2
  cplx pole() const { return {omega_eg - lamb_shift, -0.5 * gamma}; }
};

struct LaserDrive {
  double omega_L;   // rad/ns
  cplx rabi;        // Rabi frequency, rad/ns
  double phase0 = 0.0;
};

// p_e(t) = e^{-Gamma t}
double survival_probability(const TwoLevelEmitter& em, double t_ns);

// Gamma = (w/c)^3 |mu|^2 / (3 pi) with hbar = c = 1.
double spontaneous_rate(const CVec3& mu_ge, double omega_eg);
// Natural rate is per nm of light travel; multiply by c in nm/ns.
inline double rate_to_inverse_ns(double rate_natural) {
  return rate_natural * kSpeedOfLightNmPerNs;
}

// Retarded transient field of the decaying dipole: the exact dipole E kernel
// with k -> w0/c times e^{-i w0 (t - R/c)}, zero before the light front.
CVec3 transient_field(const TwoLevelEmitter& em, const Vec3& r, double t_ns);

// Gamma' = (|Omega|^2/2) (Gamma/2) / ((Gamma/2)^2 + (w_L - w_eg + Delta)^2)
double pumping_rate(const LaserDrive& drive, const TwoLevelEmitter& em);

struct Populations {
  double ee, gg;
};
// Closed-form solution of the two-level rate equations with trace 1:
// sigma_ee(t) = s + (sigma_ee0 - s) e^{-(2G'+G)t}, s = G'/(2G'+G).
Populations evolve_populations(double sigma_ee0, double gamma, double gamma_prime,
                               double t_ns);

struct StationaryState {
  double sigma_ee;     // G'/(2G'+G)
  double sigma_eg_sq;  // |sigma_eg|^2, equal to sigma_ee in the weak-field regime
};
StationaryState stationary_population(double gamma, double gamma_prime);

// Fields of the classical equivalent dipole mu_ge * sigma_eg driven at w_L.
EMField classical_equivalent_fields(const TwoLevelEmitter& em, double sigma_eg_abs,
                                    double omega_L, const Vec3& r,
                                    const Environment& env);

// I_e = |G_wL . mu_ge|^2 |sigma_eg|^2 -- numerically the |E|^2 of the
// classical equivalent dipole.
double emission_intensity(const TwoLevelEmitter& em, const LaserDrive& drive,
                          const Vec3& r, const Environment& env);
// Same with the coherence magnitude supplied directly.
double emission_intensity_coh(const TwoLevelEmitter& em, double sigma_eg_sq,
                              double omega_L, const Vec3& r, const Environment& env);

// I_m = (c/w_L)^2 |curl G . mu|^2 |sigma_eg|^2 = |B|^2 of the equivalent dipole.
double magnetic_intensity(const TwoLevelEmitter& em, const LaserDrive& drive,
                          const Vec3& r, const Environment& env);

enum class Axis { x = 0, y = 1, z = 2 };

// |a E_i + b B_j|^2 of the equivalent classical fields.
double mixed_detector(cplx a, cplx b, Axis i, Axis j, const TwoLevelEmitter& em,
                      const LaserDrive& drive, const Vec3& r, const Environment& env);

}  // namespace nsom
