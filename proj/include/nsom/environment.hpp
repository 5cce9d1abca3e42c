// Propagation environment: vacuum or a dielectric half-space below z = 0.
#pragma once

#include <variant>

#include "nsom/halfspace.hpp"

namespace nsom {

struct Vacuum {
  bool operator==(const Vacuum&) const = default;
};

struct DielectricHalfSpace {
  HalfSpace hs{};
  InterfaceSide side_at_zero = InterfaceSide::below;
};

using Environment = std::variant<Vacuum, DielectricHalfSpace>;

// Fields of an electric point dipole in the given environment.
inline EMField env_dipole_fields(const CVec3& P, const Vec3& r0, Wavenumber k,
                                 const Vec3& r, const Environment& env) {
  if (const auto* d = std::get_if<DielectricHalfSpace>(&env))
    return halfspace_dipole_fields(P, r0, k, r, d->hs, d->side_at_zero);
  return kernels::dipole_fields_at(k.k, r - r0, P);
}

}  // namespace nsom
