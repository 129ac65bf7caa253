/*
 * arthur-kit: combinatorial skeleton of Arthur packets for classical and
 * similitude groups over a p-adic field.
 *
 * Distributed under the MIT license; see LICENSE at the repository root.
 */

/**
 * F2 presentations of the component groups S_psi^{Sigma0}, S_psi and their
 * similitude analogues: character enumeration, the pairing, the Cont/Ext
 * adjoint maps, the alpha map to quadratic twist characters, kernel/image
 * computations, and the multiplicity formula.
 */

#pragma once

#include "params.hpp"

#include <vector>

namespace arthur {

// Signs +1/-1 indexed by an ordered Jordan set.
using SignVector = std::vector<int>;

/** Formal product of quadratic tags (composed with lambda_Gtilde). */
struct TwistCharacterSymbol {
    std::set<std::string> tags; // F2 exponents; empty = trivial

    bool trivial() const { return tags.empty(); }
    TwistCharacterSymbol operator*(const TwistCharacterSymbol &o) const;
    bool operator==(const TwistCharacterSymbol &o) const { return tags == o.tags; }
    bool operator<(const TwistCharacterSymbol &o) const { return tags < o.tags; }
    std::string str() const;
};

TwistCharacterSymbol twist_symbol(const std::string &tag);

/** Character of S^{Sigma0} (or of S, modulo eps_0). */
struct Character {
    SignVector values;     // per dedup index
    bool mod_eps0 = false; // taken modulo eps_0 (SO_even level S)

    bool operator==(const Character &o) const {
        return values == o.values && mod_eps0 == o.mod_eps0;
    }
    bool operator<(const Character &o) const {
        return std::tie(values, mod_eps0) < std::tie(o.values, o.mod_eps0);
    }
};

/**
 * Presentation of S_psi^{Sigma0} = (Z/2Z)^{Jord(psi)_p} / <s_0> over the
 * deduplicated good-parity Jordan set.
 */
struct CentralizerDescriptor {
    GroupDescriptor group;
    std::vector<JordanBlock> jordan; // Jord(psi)_p, deduplicated, ordered
    std::vector<int> mult;           // l_i
    std::vector<long long> dim;      // n_i
    SignVector s0;                   // s_{0,i} = +1 iff l_i even
    SignVector eps0;                 // eps_{0,i} = +1 iff n_i even (SO_even)
    bool so_even = false;

    // Map from the multiplicity-expanded good-parity Jordan list to the
    // deduplicated index (for Cont/Ext and label indexing).
    std::vector<std::size_t> expanded_to_dedup;

    std::size_t k() const { return jordan.size(); }
    long long size_S_sigma0() const; // |S^{Sigma0}|
    bool s0_trivial() const;
};

enum class WhichGroup { S_Sigma0, S };

// Build the descriptor over Jord(psi)_p.  An empty good-parity part yields
// the trivial-group descriptor (k = 0) rather than an error.
CentralizerDescriptor build_centralizer(const ArthurParameter &psi);

// All characters: sign tuples with prod eps_i^{l_i} = 1; for S on SO_even,
// canonical representatives modulo eps_0 (earliest coordinate +1 preferred).
std::vector<Character> characters(const CentralizerDescriptor &desc, WhichGroup which);

// Canonical representatives of the group elements (sign vectors modulo s_0;
// for S on SO_even, additionally prod s_i^{n_i} = 1).
std::vector<SignVector> group_elements(const CentralizerDescriptor &desc, WhichGroup which);

// <eps, s> = prod (eps_i * s_i), with * = -1 iff both arguments are -1.
// Error: IndexMismatch.
int pairing(const Character &eps, const SignVector &s);
int pairing(const SignVector &eps, const SignVector &s);

// Cont: sign vector on Jord(psi_p) (with multiplicity) -> product over copies.
SignVector cont(const CentralizerDescriptor &desc, const SignVector &s_expanded);

// Ext: character on Jord(psi)_p -> replication over Jord(psi_p).
SignVector ext(const CentralizerDescriptor &desc, const SignVector &eps_dedup);

// alpha(s) = prod_{i : s_i = -1} eta_i, composed with lambda_Gtilde, reduced
// modulo the group discriminant so that alpha(s_0) is trivial on valid
// parameters.
TwistCharacterSymbol alpha(const CentralizerDescriptor &desc, const SignVector &s);

// F2 basis of the lifted kernel of alpha inside {+-1}^k (together with s_0);
// with intersect_S, additionally intersected with the S-constraint.
std::vector<SignVector> ker_alpha_lift(const CentralizerDescriptor &desc, bool intersect_S);

// Order of ker(alpha) inside the quotient S^{Sigma0}.
long long ker_alpha_order(const CentralizerDescriptor &desc);

// X(psi-tilde) = alpha(S_psi): the image as a sorted list of twist symbols.
std::vector<TwistCharacterSymbol> x_group(const CentralizerDescriptor &desc);

// s_psi on the dedup index set: s_{psi,i} = (-1)^{b_i - 1}.
SignVector s_psi_vector(const CentralizerDescriptor &desc);

// m_psi * |S|^{-1} * sum_s <s, pi> eps_psi(s); always a nonnegative integer.
long long multiplicity(const CentralizerDescriptor &desc, const Character &char_of_pi,
                       const Character &eps_psi, int m_psi);

} // namespace arthur
