/*
 * arthur-kit: combinatorial skeleton of Arthur packets for classical and
 * similitude groups over a p-adic field.
 *
 * Distributed under the MIT license; see LICENSE at the repository root.
 */

/**
 * Exponent vectors of parameters and the dominance orders: Xi of an
 * L-parameter, the plus-map for split even orthogonal groups, the orders
 * <=_N and <=_G, and the endoscopic / Levi merge constructions.
 */

#pragma once

#include "params.hpp"

#include <vector>

namespace arthur {

// Weakly decreasing list of rationals of length = group rank.
using ExponentVector = std::vector<Rat>;

// Xi_{[phi]} = (Re xi)^+: the multiset of positive exponents |x|, each with
// d_rho * a slots per dual pair, zero-padded to the rank and sorted
// decreasing.  Error: DimensionMismatch.
ExponentVector xi_of_lparam(const LParameter &phi, const GroupDescriptor &group);

// Xi^+ : identity for Sp and non-split SO_even; absolute value on the last
// coordinate for split SO_even.  Error: NotDominant.
ExponentVector xi_plus(const ExponentVector &xi, const GroupDescriptor &group);

// Xi <=_N Xi': the difference, embedded theta_N-equivariantly into R^N as
// v -> (v, 0^{N-2n}, -reverse(v)), lies in the closed positive-root cone of
// GL(N): all prefix sums nonnegative.
bool leq_N(const ExponentVector &xi, const ExponentVector &xi2,
           const GroupDescriptor &group);

// Xi <=_G Xi': the difference lies in the nonnegative span of the simple
// coroots of the dual root system (type B_n for Sp, type D_n for SO_even);
// exact rational cone membership.
bool leq_G(const ExponentVector &xi, const ExponentVector &xi2,
           const GroupDescriptor &group);

// Endoscopic merge: plain multiset union, sorted decreasing.
ExponentVector merge_endoscopic(const ExponentVector &xi_I, const ExponentVector &xi_II);

// Levi merge: with mu-bar the reversed negation of mu_GL, pick t + s =
// len(mu_GL) maximizing the sum of the two prefixes and merge with Xi_minus.
ExponentVector merge_levi(const std::vector<Rat> &mu_GL, const ExponentVector &xi_minus);

} // namespace arthur
