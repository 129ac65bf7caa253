/*
 * arthur-kit: combinatorial skeleton of Arthur packets for classical and
 * similitude groups over a p-adic field.
 *
 * Distributed under the MIT license; see LICENSE at the repository root.
 */

/**
 * Moeglin-style (l, eta) labels on Jordan blocks, their characters, the
 * three equivalence relations, packet enumeration for the classical and
 * similitude groups, restriction fibers, stable-sum coefficient vectors,
 * the involution relabeling and L-packet sublabels.
 */

#pragma once

#include "component_group.hpp"

#include <vector>

namespace arthur {

/**
 * Label (l, eta) indexed by the good-parity Jordan blocks with multiplicity,
 * in the canonical normalized order (rho name, a, b, zeta, copy index).
 */
struct PacketLabel {
    std::vector<int> l;   // 0 <= l_i <= floor((A-B+1)/2)
    std::vector<int> eta; // +-1

    bool operator==(const PacketLabel &o) const { return l == o.l && eta == o.eta; }
    bool operator<(const PacketLabel &o) const {
        return std::tie(l, eta) < std::tie(o.l, o.eta);
    }
};

enum class EqLevel { Sigma0, Gtilde_Sigma0, Gtilde };

enum class PacketLevel { classical, similitude };

struct PacketElement {
    PacketLabel rep;                  // lexicographically least member
    std::vector<PacketLabel> members; // full equivalence class
    Character eps;                    // epsilon_{l,eta} on the dedup index set
    TwistCharacterSymbol twist_record;
    bool nonvanishing_known = true;   // false for non-DDR parameters
};

struct Packet {
    ArthurParameter psi;   // full parameter
    ArthurParameter psi_p; // good-parity part carrying the labels
    ArthurParameter psi_np; // recorded Sp(St(rho,a),b) induction tags
    PacketLevel level = PacketLevel::classical;
    std::vector<PacketElement> elements;
};

// Canonically ordered good-parity Jordan blocks with multiplicity.
std::vector<JordanBlock> label_index(const ArthurParameter &psi);

// Per-block range bound floor((A-B+1)/2).
int label_l_max(const JordanBlock &blk);

// epsilon_{l,eta} componentwise:
// eta^{A-B+1} * (-1)^{floor((A-B+1)/2) + l} per block, contracted to the
// dedup index set of the centralizer.
Character epsilon_of_label(const ArthurParameter &psi, const PacketLabel &label);

// Full Cartesian product of per-block (l, eta) ranges.
std::vector<PacketLabel> enumerate_labels(const ArthurParameter &psi);

// The elementary continuation of a label: blocks (rho, C, C, zeta) for
// C in [B+l, A-l] with sign eta * (-1)^{C-B-l}, over all blocks.
struct ElementaryContinuation {
    ArthurParameter param;          // multiset of the continuation blocks
    std::vector<JordanBlock> blocks; // expanded, aligned with signs
    std::vector<int> signs;
};
ElementaryContinuation elementary_continuation(const ArthurParameter &psi,
                                               const PacketLabel &label);

// Equivalence of labels at the three levels.  Error: ParameterMismatch.
bool equivalent(const ArthurParameter &psi, const PacketLabel &a,
                const PacketLabel &b, EqLevel level);

// Classes of labels with epsilon_{l,eta} = eps under ~_{Sigma0}.
// Error: CharacterNotInDual.
Packet classical_packet(const ArthurParameter &psi, const Character &eps);

// Classes of all realizable labels under ~_{Gtilde}.
Packet similitude_packet(const ArthurParameter &psi);

// The ~_{Sigma0} classes inside the element's ~_{Gtilde^{Sigma0}} class.
std::vector<PacketElement> restriction(const ArthurParameter &psi,
                                       const PacketElement &element);

// element -> pairing(eps_element, s * s_psi).  Error: IndexMismatch.
std::vector<int> stable_sum(const Packet &packet, const SignVector &s);

// Sublabels with l = floor((A-B+1)/2) under the ladder condition.
// Error: LadderConditionViolated.
std::vector<PacketElement> l_packet_sublabels(const ArthurParameter &psi);

// Packet of sharp_dual(psi, rho_set) with identical labels.
Packet involution_relabel(const Packet &packet, const std::set<std::string> &rho_set);

// Add omega to every element's twist record.
Packet twist(const Packet &packet, const TwistCharacterSymbol &omega);

} // namespace arthur
