/*
 * arthur-kit: combinatorial skeleton of Arthur packets for classical and
 * similitude groups over a p-adic field.
 *
 * Distributed under the MIT license; see LICENSE at the repository root.
 */

/**
 * Grothendieck-group rewrite engine: formal sums of induced / Jacquet terms
 * over annotated parameter atoms, the one-block expansion identity and its
 * full recursive expansion, Jacquet rewrite rules with a termination budget,
 * shift contraction, infinitesimal-character bookkeeping, block-order
 * independence and restriction consistency checks, and the resolved
 * constituent count used to certify the empty-block convention.
 */

#pragma once

#include "component_group.hpp"

#include <memory>
#include <optional>

namespace arthur {

/**
 * Interpretation of an empty block annotation (rho, A = B-1, B): either the
 * annotation is discarded, or the whole term is zero unless its sign is +1.
 */
enum class EmptyBlockConvention { discard, zero_unless_plus };

std::string convention_str(EmptyBlockConvention c);
EmptyBlockConvention convention_parse(const std::string &s);

// Convention frozen at build time, overridable through the environment
// variable ARTHUR_KIT_CONVENTION ("discard" / "zero_unless_plus").
EmptyBlockConvention frozen_convention();

/**
 * Twist character pulled out to the top of each term: a formal product of
 * quadratic characters eta (rational exponents mod 2), unramified characters
 * omega_rho (rational exponents) and central characters chi_rho (integer
 * exponents), all composed with the similitude character.
 */
struct TwistChar {
    std::map<std::string, Rat> eta_exp;       // tag -> exponent in [0, 2)
    std::map<std::string, Rat> omega_exp;     // rho name -> exponent
    std::map<std::string, long long> chi_exp; // rho name -> exponent

    bool trivial() const;
    TwistChar operator*(const TwistChar &o) const;
    bool operator==(const TwistChar &o) const = default;
    std::string str() const;
};

TwistChar eta_twist(const std::string &tag, const Rat &exp);
TwistChar omega_twist(const std::string &rho_name, const Rat &exp);
TwistChar chi_twist(const std::string &rho_name, long long exp);

/** GL segment <from, ..., to>_rho with unit steps toward `to`. */
struct Segment {
    SupercuspidalLabel rho;
    Rat from, to;

    long long length() const;
    std::vector<Rat> exponents() const;
    std::string str() const;
    auto key() const { return std::make_tuple(rho.key(), from, to); }
    bool operator==(const Segment &o) const { return key() == o.key(); }
};

struct AnnotatedBlock {
    JordanBlock block;
    int eta = +1;
    auto key() const { return std::make_tuple(block.key(), eta); }
    bool operator<(const AnnotatedBlock &o) const { return key() < o.key(); }
};

/** Record of an empty block annotation (rho, B-1, B, zeta; eta). */
struct EmptyNote {
    std::string rho_name;
    Rat B;
    int zeta = +1;
    int eta = +1;
    auto key() const { return std::make_tuple(rho_name, B, zeta, eta); }
    bool operator<(const EmptyNote &o) const { return key() < o.key(); }
};

/** Sign-annotated parameter atom pi(psi; eta-system). */
struct Atom {
    Family family = Family::Sp;
    std::string discriminant = kTrivialTag; // recomputed from the blocks
    bool classical = false;                 // restriction-side atom
    std::vector<AnnotatedBlock> blocks;     // sorted
    std::vector<EmptyNote> notes;           // sorted

    std::string str() const;
};

// Canonicalize: sort, recompute the discriminant.  Error: TagProduct.
Atom make_atom(Family family, bool classical, std::vector<AnnotatedBlock> blocks,
               std::vector<EmptyNote> notes);

// The atom's blocks as a parameter of the recomputed group.
ArthurParameter atom_parameter(const Atom &atom);

struct Term;
using TermPtr = std::shared_ptr<const Term>;

/** Term tree: a chain of Ind / Jac nodes over an atom leaf. */
struct Term {
    enum class Kind { atom, ind, jac };
    Kind kind = Kind::atom;
    Atom atom;               // kind == atom
    Segment seg;             // kind == ind
    SupercuspidalLabel jrho; // kind == jac
    Rat jx;                  // kind == jac
    TermPtr child;           // ind / jac

    std::string key() const;
};

TermPtr make_atom_term(Atom atom);
TermPtr make_ind(Segment seg, TermPtr child);
TermPtr make_jac(SupercuspidalLabel rho, const Rat &x, TermPtr child);

/** Integer combination of twisted terms, keyed by canonical form. */
struct FormalSum {
    struct Entry {
        TermPtr term;
        TwistChar twist;
        long long coeff = 0;
    };
    std::map<std::string, Entry> entries;

    void add(TermPtr term, const TwistChar &twist, long long coeff);
    void add_sum(const FormalSum &other, const TwistChar &twist, long long coeff);
    std::size_t size() const { return entries.size(); }
    bool operator==(const FormalSum &o) const;
};

// X^T for a target block (rows B..A, row r = zeta(r+T), ..., zeta(r+1)),
// together with the entry sum |X^T|.
std::pair<std::vector<std::vector<Rat>>, Rat> jac_shift_matrix(const JordanBlock &target,
                                                               long long T);
// Column-major exponent sequence (top-to-bottom, then left-to-right).
std::vector<Rat> jac_shift_sequence(const JordanBlock &target, long long T);

// One-block expansion identity for a multiplicity-free good-parity parameter
// with discrete diagonal restriction.  `eps` indexes Jord(psi); block_index
// selects a reducible (A > B) block.  Errors: NotDDR, ElementaryBlock.
FormalSum expand_step(const ArthurParameter &psi, const Character &eps,
                      std::size_t block_index,
                      EmptyBlockConvention conv = frozen_convention(),
                      bool classical = false);

// Full recursive expansion into elementary atoms, normalized.  Expansion
// policy: largest A - B first (tie: smallest block key); `first_block`
// overrides the choice for the initial step only.
FormalSum expand_full(const ArthurParameter &psi, const Character &eps,
                      EmptyBlockConvention conv = frozen_convention(),
                      bool classical = false,
                      std::optional<std::size_t> first_block = std::nullopt);

// Apply the Jacquet rewrite rules to a fixpoint.  Error: NonTermination.
FormalSum normal_form(const FormalSum &sum);

// Jac^rho_x applied to every term, then normalized.
FormalSum jac_apply(const FormalSum &sum, const SupercuspidalLabel &rho, const Rat &x);

// Shift contraction (rho, A+T, B+T, zeta) -> (rho, A, B, zeta) on the leaf
// atoms, twisting by omega_rho^{-|X^T|/2}.  Error: BlockNotFound.
FormalSum jac_contract(const FormalSum &sum, const SupercuspidalLabel &rho,
                       const Rat &A, const Rat &B, int zeta, long long T);

// Infinitesimal character of a term (twists excluded).
// Error: InfCharMismatch if a Jac node removes an absent entry.
InfChar infchar_of_term(const TermPtr &term);

// True iff all terms of the sum share one infinitesimal character.
bool constant_infchar(const FormalSum &sum, InfChar *out = nullptr);

// expand_full results agree for every choice of first expanded block.
bool verify_block_independence(const ArthurParameter &psi, const Character &eps,
                               EmptyBlockConvention conv = frozen_convention());

// Number of irreducible constituents of the eta-system representation,
// resolved recursively block by block under the given convention.
long long resolved_count(const ArthurParameter &psi, const Character &eps,
                         EmptyBlockConvention conv = frozen_convention());

// Coefficient-level restriction to the classical group: twists dropped, each
// atom replaced by the sum over the characters of its centralizer trivial on
// the kernel of alpha.
FormalSum restrict_sum(const FormalSum &sum);

// restrict_sum(expand_full(psi, eps)) equals the classical expansion summed
// over the restriction fiber of eps.
bool verify_restriction(const ArthurParameter &psi, const Character &eps,
                        EmptyBlockConvention conv = frozen_convention());

// General good-parity case through a dominating parameter: expand nothing,
// contract the shifted blocks in decreasing order with the compensating
// omega twists; the twists cancel and the atom of psi is recovered.
FormalSum expand_general(const ArthurParameter &psi, const Character &eps,
                         const AdmissibleOrder &order,
                         EmptyBlockConvention conv = frozen_convention());

} // namespace arthur
