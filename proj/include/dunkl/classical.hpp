#pragma once

#include "dunkl/models.hpp"

namespace dunkl {

/// Element of Q(sqrt(s0)): a + b*sqrt(s0). Used for exact evaluation of the
/// classical symbols at rational phase-space points, where |x| enters
/// KC-type Hamiltonians. s0 is chosen to be a non-square rational so that
/// the extension is a field.
struct QuadExt {
    mpq_class a{0}, b{0};

    bool isZero() const { return a == 0 && b == 0; }
    QuadExt operator-() const { return {-a, -b}; }
    QuadExt operator+(const QuadExt& o) const { return {a + o.a, b + o.b}; }
    QuadExt operator-(const QuadExt& o) const { return {a - o.a, b - o.b}; }
};

/// Exact rank of the Jacobian of {H, C^[m], C_[m]} classical symbols at a
/// random rational point, with mu = gamma = 0. Points are drawn from the
/// seed, avoiding coordinate zeros, denominator-atom zeros, and perfect
/// square |x|^2. `duplicateFirst` appends a copy of the first function (the
/// negative control: the rank must not change).
int independenceRank(const ModelSpec& spec, uint64_t seed, bool duplicateFirst = false);

/// Number of functions the rank check uses (H plus the 2N-3 universal
/// integrals).
int independenceFunctionCount(const ModelSpec& spec);

} // namespace dunkl
