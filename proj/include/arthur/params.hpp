/*
 * arthur-kit: combinatorial skeleton of Arthur packets for classical and
 * similitude groups over a p-adic field.
 *
 * Distributed under the MIT license; see LICENSE at the repository root.
 */

/**
 * Core parameter types: supercuspidal labels, Jordan blocks, Arthur
 * parameters, L-parameters, infinitesimal characters and admissible orders,
 * together with their classification and structural operations.
 */

#pragma once

#include "common.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace arthur {

enum class Parity { orthogonal, symplectic, none };

std::string parity_str(Parity p);
Parity parity_parse(const std::string &s);

// Central-character / quadratic-twist tags form an elementary abelian
// 2-group generated by named quadratic characters.  "1" is the identity.
inline const std::string kTrivialTag = "1";

// Product of two quadratic tags.  Only same-or-trivial products arise from
// single tags; general products live in TwistCharacterSymbol
// (component_group.hpp).
inline std::string tag_mul(const std::string &x, const std::string &y) {
    if (x == kTrivialTag)
        return y;
    if (y == kTrivialTag)
        return x;
    if (x == y)
        return kTrivialTag;
    fail("TagProduct", "product of distinct quadratic tags '" + x + "', '" + y +
                           "' is not a single tag");
}

// The dual of a non-self-dual label "x" is named "x^v" (suffix toggled).
std::string dual_name(const std::string &name);

/** Abstract self-dual (or dual-paired) unitary supercuspidal symbol rho. */
struct SupercuspidalLabel {
    std::string name;
    int dim = 1;                     // d_rho
    Parity parity = Parity::none;    // none <=> not self-dual
    std::string eta = kTrivialTag;   // central character eta_rho, order <= 2

    bool self_dual() const { return parity != Parity::none; }
    SupercuspidalLabel dual() const;

    // Label-level invariants; throws Error("InvalidLabel").
    void check() const;

    auto key() const { return std::tie(name, dim, parity, eta); }
    bool operator==(const SupercuspidalLabel &o) const { return key() == o.key(); }
    bool operator<(const SupercuspidalLabel &o) const { return key() < o.key(); }
};

enum class Family { Sp, SO_even };

/** Quasisplit classical group Sp(2n) or SO(2n) with discriminant character. */
struct GroupDescriptor {
    Family family = Family::Sp;
    int rank = 1;                          // n
    std::string discriminant = kTrivialTag; // eta_{E/F}; "1" means split / Sp

    int N() const { return family == Family::Sp ? 2 * rank + 1 : 2 * rank; }
    // Dual standard representation is orthogonal for both families here.
    Parity dual_parity() const { return Parity::orthogonal; }

    void check() const;
    bool operator==(const GroupDescriptor &o) const {
        return family == o.family && rank == o.rank && discriminant == o.discriminant;
    }
};

/**
 * Jordan block (rho, a, b), equivalently (rho, A, B, zeta) with
 * A = (a+b)/2 - 1, B = |a-b|/2, zeta = sign(a-b) (+1 by convention at a=b).
 */
struct JordanBlock {
    SupercuspidalLabel rho;
    int a = 1;
    int b = 1;
    int zeta = +1;

    Rat A() const { return Rat(a + b, 2) - 1; }
    Rat B() const { return Rat(std::abs(a - b), 2); }
    std::string eta_block() const {       // eta_rho^{a*b}
        return (a * b) % 2 == 0 ? kTrivialTag : rho.eta;
    }
    long long n_block() const { return (long long)rho.dim * a * b; }
    Parity parity() const;

    auto key() const { return std::make_tuple(rho.key(), a, b, zeta); }
    bool operator==(const JordanBlock &o) const { return key() == o.key(); }
    bool operator<(const JordanBlock &o) const { return key() < o.key(); }
};

// Construct from (a, b) with the zeta convention; Error("ZetaConflict") if a
// zeta hint contradicts sign(a-b).
JordanBlock block_from_ab(const SupercuspidalLabel &rho, int a, int b,
                          std::optional<int> zeta_hint = std::nullopt);

// Construct from (A, B, zeta): a = A+B+1, b = A-B+1 when zeta=+1 and the
// swap otherwise.  A, B must be half-integers with A >= B >= 0, A-B integral.
JordanBlock block_from_ABz(const SupercuspidalLabel &rho, const Rat &A,
                           const Rat &B, int zeta);

Parity block_parity(const JordanBlock &blk);

/** Arthur parameter: multiset of Jordan blocks attached to a group. */
struct ArthurParameter {
    struct Entry {
        JordanBlock block;
        int mult = 1; // l_i >= 1
    };

    GroupDescriptor group;
    std::vector<Entry> blocks; // canonically sorted, duplicates merged

    // Canonicalize: sort by (rho name, a, b, zeta), merge equal blocks.
    void normalize();

    std::vector<JordanBlock> expanded() const; // with multiplicity
    long long total_dim() const;
};

ArthurParameter make_parameter(const GroupDescriptor &g,
                               std::vector<ArthurParameter::Entry> blocks);

// Full validation: dimension, self-duality pairing, determinant condition.
// Errors: DimensionMismatch, SelfDualityViolation, DeterminantMismatch.
void validate(const ArthurParameter &psi);

// psi = psi_np + psi_p + psi_np^vee: good-parity part and a canonical half of
// the rest.  Error: OddMultiplicityNonGoodBlock.
std::pair<ArthurParameter, ArthurParameter> split_good_parity(const ArthurParameter &psi);

// psi_d = psi o Delta via Clebsch-Gordan: (rho,a,b) -> {(rho, a+b-1-2k, 1)}.
ArthurParameter diagonal_restriction(const ArthurParameter &psi);

struct ClassifyFlags {
    bool good_parity = false;
    bool tempered = false;
    bool discrete = false;
    bool elementary = false;
    bool ddr = false; // discrete diagonal restriction
};

ClassifyFlags classify(const ArthurParameter &psi);

/** L-parameter: multiset of (rho, a, exponent x). */
struct LParameter {
    struct Entry {
        SupercuspidalLabel rho;
        int a = 1;
        Rat x = Rat(0);
        int mult = 1;
    };
    std::vector<Entry> entries;
    long long total_dim() const;
};

// phi_psi: (rho,a,b) -> {(rho, a, (b-1)/2 - j) : j = 0..b-1}.
LParameter phi_of_psi(const ArthurParameter &psi);

/** Infinitesimal character: multiset of (rho name, rational exponent). */
struct InfChar {
    std::map<std::pair<std::string, Rat>, int> entries;

    void add(const std::string &rho_name, const Rat &x, int mult = 1);
    bool operator==(const InfChar &o) const { return entries == o.entries; }
};

InfChar inf_char(const LParameter &phi);
InfChar inf_char(const ArthurParameter &psi);

// Aubert-type relabeling: swap (a,b) for blocks with rho in rho_set.
// Requires psi = psi_p.
ArthurParameter sharp_dual(const ArthurParameter &psi,
                           const std::set<std::string> &rho_set);

/**
 * Admissible order: per-rho bottom-to-top sequence of indices into
 * psi.expanded().  Property (P): A > A', B > B', zeta = zeta' forces the
 * larger block above the smaller.
 */
struct AdmissibleOrder {
    std::map<std::string, std::vector<std::size_t>> per_rho;
};

AdmissibleOrder natural_order(const ArthurParameter &psi);
bool is_admissible(const ArthurParameter &psi, const AdmissibleOrder &order);

struct DominatingResult {
    ArthurParameter psi_gg;          // dominating parameter, ddr = true
    std::vector<long long> shifts;   // T per index of psi.expanded()
};

// Minimal greedy dominating parameter with respect to an admissible order.
// Error: NotGoodParity.
DominatingResult dominating(const ArthurParameter &psi, const AdmissibleOrder &order);

} // namespace arthur
