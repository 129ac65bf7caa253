/*
 * arthur-kit: combinatorial skeleton of Arthur packets for classical and
 * similitude groups over a p-adic field.
 *
 * Distributed under the MIT license; see LICENSE at the repository root.
 */

/**
 * Endoscopic decomposition along a semisimple element s of the centralizer:
 * the (plus, minus) factor parameters with their quadratic twists, the
 * induced splitting of characters, transfer coefficient vectors, and the
 * Levi factorization pulling GL blocks out of a parameter.
 */

#pragma once

#include "groth.hpp"
#include "packet.hpp"

namespace arthur {

// rho (x) tag: 1-dimensional orthogonal labels multiply as characters (the
// trivial character is named "1"); higher-dimensional labels toggle the tag
// in a normalized "*"-separated twist set in the name.
SupercuspidalLabel twist_label(const SupercuspidalLabel &rho, const std::string &tag);

struct EndoscopicFactor {
    GroupDescriptor group;   // Sp((N-1)/2 pairs) for odd N, SO_even otherwise
    ArthurParameter psi;     // factor parameter, twisted when N is odd
    std::string eta_factor = kTrivialTag; // product of eta_block over the factor
    bool twisted = false;    // blocks carry rho (x) eta_factor
    long long N = 0;         // dimension of the factor
};

struct EndoscopicDatum {
    EndoscopicFactor plus;  // blocks with s_i = +1
    EndoscopicFactor minus; // blocks with s_i = -1
};

// Split psi along s (signs per deduplicated good-parity block).
// Errors: NotGoodParity, IndexMismatch, TagProduct.
EndoscopicDatum decompose(const ArthurParameter &psi, const SignVector &s);

// Split a character of S_psi^{Sigma0} into characters of the two factor
// centralizers.  Error: IndexMismatch.
std::pair<Character, Character> product_character(const ArthurParameter &psi,
                                                  const Character &eps,
                                                  const EndoscopicDatum &datum);

// Element-wise <s * s_psi, pi> over the packet.  Error: IndexMismatch.
std::vector<int> transfer_coefficients(const Packet &packet, const SignVector &s);

struct LeviFactorization {
    std::vector<JordanBlock> gl;      // blocks moved to GL factors
    ArthurParameter psi_minus;        // remaining parameter, revalidated
    std::vector<std::string> markers; // "Sp(St(rho,a),b)" per GL factor
    TwistChar twist;                  // accumulated chi_rho^{A-B+1}
};

// Pull `count` GL copies of each selected block out of psi: self-dual blocks
// need multiplicity >= 2*count, dual pairs need `count` on both sides.
// Errors: BlockNotFound, InvalidPartition.
LeviFactorization levi_factorization(
    const ArthurParameter &psi,
    const std::vector<std::pair<JordanBlock, int>> &gl_blocks);

} // namespace arthur
