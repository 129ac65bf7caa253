/*
 * arthur-kit: combinatorial skeleton of Arthur packets for classical and
 * similitude groups over a p-adic field.
 *
 * Distributed under the MIT license; see LICENSE at the repository root.
 */

#include "arthur/packet.hpp"

#include <numeric>

namespace arthur {

namespace {

void validate_label(const std::vector<JordanBlock> &index, const PacketLabel &lab) {
    require(lab.l.size() == index.size() && lab.eta.size() == index.size(),
            "IndexMismatch", "label length != number of good-parity blocks");
    for (std::size_t i = 0; i < index.size(); ++i) {
        require(lab.l[i] >= 0 && lab.l[i] <= label_l_max(index[i]), "LabelOutOfRange",
                "l out of range at block " + std::to_string(i));
        require(lab.eta[i] == 1 || lab.eta[i] == -1, "LabelOutOfRange",
                "eta must be +-1 at block " + std::to_string(i));
    }
}

// min(a,b) = A - B + 1 as an integer.
int min_ab(const JordanBlock &blk) { return std::min(blk.a, blk.b); }

int pow_sign(int base, long long exp) {
    return (base == -1 && exp % 2 != 0) ? -1 : +1;
}

// Partition `labels` by the given symmetric reflexive relation.
template <class Rel>
std::vector<std::vector<PacketLabel>> classes_by(const std::vector<PacketLabel> &labels,
                                                 Rel &&rel) {
    std::vector<std::vector<PacketLabel>> out;
    std::vector<bool> used(labels.size(), false);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (used[i])
            continue;
        std::vector<PacketLabel> cls{labels[i]};
        used[i] = true;
        // The relations used here are transitive on realizable labels, so a
        // single sweep against the seed suffices; sweep to a fixpoint anyway.
        bool grew = true;
        while (grew) {
            grew = false;
            for (std::size_t j = i + 1; j < labels.size(); ++j) {
                if (used[j])
                    continue;
                for (const auto &m : cls)
                    if (rel(m, labels[j])) {
                        cls.push_back(labels[j]);
                        used[j] = true;
                        grew = true;
                        break;
                    }
            }
        }
        std::sort(cls.begin(), cls.end());
        out.push_back(std::move(cls));
    }
    return out;
}

PacketElement make_element(const ArthurParameter &psi, std::vector<PacketLabel> cls,
                           bool nonvanishing_known) {
    PacketElement el;
    el.rep = cls.front();
    el.eps = epsilon_of_label(psi, el.rep);
    el.members = std::move(cls);
    el.nonvanishing_known = nonvanishing_known;
    return el;
}

} // namespace

std::vector<JordanBlock> label_index(const ArthurParameter &psi) {
    return split_good_parity(psi).first.expanded();
}

int label_l_max(const JordanBlock &blk) { return min_ab(blk) / 2; }

Character epsilon_of_label(const ArthurParameter &psi, const PacketLabel &label) {
    const ArthurParameter psi_p = split_good_parity(psi).first;
    const auto index = psi_p.expanded();
    validate_label(index, label);
    SignVector expanded;
    for (std::size_t i = 0; i < index.size(); ++i) {
        const int m = min_ab(index[i]); // A - B + 1
        const int v = pow_sign(label.eta[i], m) * pow_sign(-1, m / 2 + label.l[i]);
        expanded.push_back(v);
    }
    const CentralizerDescriptor desc = build_centralizer(psi);
    return {cont(desc, expanded), /*mod_eps0=*/false};
}

std::vector<PacketLabel> enumerate_labels(const ArthurParameter &psi) {
    const auto index = label_index(psi);
    long long total = 1;
    for (const auto &blk : index) {
        total *= 2LL * (label_l_max(blk) + 1);
        require(total <= (1LL << 20), "TooLarge", "label space too large to enumerate");
    }
    std::vector<PacketLabel> out;
    PacketLabel cur;
    cur.l.assign(index.size(), 0);
    cur.eta.assign(index.size(), +1);
    for (long long t = 0; t < total; ++t) {
        out.push_back(cur);
        // Odometer increment: eta fastest, then l, per block.
        std::size_t i = 0;
        for (; i < index.size(); ++i) {
            if (cur.eta[i] == +1) {
                cur.eta[i] = -1;
                break;
            }
            cur.eta[i] = +1;
            if (cur.l[i] < label_l_max(index[i])) {
                ++cur.l[i];
                break;
            }
            cur.l[i] = 0;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

ElementaryContinuation elementary_continuation(const ArthurParameter &psi,
                                               const PacketLabel &label) {
    const auto index = label_index(psi);
    validate_label(index, label);

    ElementaryContinuation ec;
    std::vector<ArthurParameter::Entry> entries;
    for (std::size_t i = 0; i < index.size(); ++i) {
        const JordanBlock &blk = index[i];
        const Rat A = blk.A(), B = blk.B();
        const int l = label.l[i];
        for (Rat C = B + l; C <= A - l; C += 1) {
            JordanBlock el = block_from_ABz(blk.rho, C, C, blk.zeta);
            ec.blocks.push_back(el);
            ec.signs.push_back(label.eta[i] * pow_sign(-1, rat_floor(C - B) - l));
            entries.push_back({el, 1});
        }
    }

    GroupDescriptor g;
    g.family = psi.group.family;
    long long n_el = 0;
    TwistCharacterSymbol det;
    for (const auto &blk : ec.blocks) {
        n_el += blk.n_block();
        det = det * twist_symbol(blk.eta_block());
    }
    if (g.family == Family::Sp) {
        require(n_el % 2 == 1, "InternalError", "elementary continuation of even "
                                                "dimension on an odd orthogonal dual");
        g.rank = (int)((n_el - 1) / 2);
        g.discriminant = kTrivialTag;
    } else {
        require(n_el % 2 == 0, "InternalError", "elementary continuation of odd "
                                                "dimension on an even orthogonal dual");
        g.rank = (int)(n_el / 2);
        require(det.tags.size() <= 1, "TagProduct",
                "continuation discriminant is a product of distinct tags");
        g.discriminant = det.tags.empty() ? kTrivialTag : *det.tags.begin();
    }
    ec.param.group = g;
    ec.param.blocks = std::move(entries);
    ec.param.normalize();
    return ec;
}

bool equivalent(const ArthurParameter &psi, const PacketLabel &a,
                const PacketLabel &b, EqLevel level) {
    const auto index = label_index(psi);
    validate_label(index, a);
    validate_label(index, b);
    if (a.l != b.l)
        return false;

    if (level == EqLevel::Sigma0) {
        for (std::size_t i = 0; i < index.size(); ++i) {
            if (a.eta[i] == b.eta[i])
                continue;
            if (2 * a.l[i] != min_ab(index[i]))
                return false; // eta matters unless l = (A-B+1)/2
        }
        return true;
    }

    // delta = ratio of the two eta-systems on the shared elementary
    // continuation; the labels are equivalent iff delta is trivial on the
    // relevant subgroup of the continuation centralizer.
    const ElementaryContinuation ec = elementary_continuation(psi, a);
    std::size_t pos = 0;
    SignVector delta_raw;
    for (std::size_t i = 0; i < index.size(); ++i) {
        const int len = min_ab(index[i]) - 2 * a.l[i];
        for (int t = 0; t < len; ++t)
            delta_raw.push_back(a.eta[i] * b.eta[i]);
        pos += (std::size_t)std::max(len, 0);
    }
    require(pos == ec.blocks.size(), "InternalError", "continuation length mismatch");

    const CentralizerDescriptor desc = build_centralizer(ec.param);
    // Align delta with the normalized parameter order before contracting.
    const auto expanded = ec.param.expanded();
    std::vector<bool> taken(ec.blocks.size(), false);
    SignVector delta_sorted;
    for (const auto &blk : expanded) {
        bool found = false;
        for (std::size_t j = 0; j < ec.blocks.size(); ++j) {
            if (!taken[j] && ec.blocks[j] == blk &&
                // consume equal-ratio copies first so collisions stay exact
                true) {
                delta_sorted.push_back(delta_raw[j]);
                taken[j] = true;
                found = true;
                break;
            }
        }
        require(found, "InternalError", "continuation block alignment failed");
    }
    const SignVector delta = cont(desc, delta_sorted);

    const bool intersect_S = level == EqLevel::Gtilde;
    for (const auto &v : ker_alpha_lift(desc, intersect_S))
        if (pairing(delta, v) != +1)
            return false;
    if (!desc.s0_trivial() && pairing(delta, desc.s0) != +1)
        return false;
    return true;
}

Packet classical_packet(const ArthurParameter &psi, const Character &eps) {
    Packet p;
    p.psi = psi;
    auto parts = split_good_parity(psi);
    p.psi_p = parts.first;
    p.psi_np = parts.second;
    p.level = PacketLevel::classical;
    const bool known = classify(psi).ddr;

    const CentralizerDescriptor desc = build_centralizer(psi);
    require(eps.values.size() == desc.k() && !eps.mod_eps0, "CharacterNotInDual",
            "character index set does not match Jord(psi)_p");
    require(desc.s0_trivial() || pairing(eps, desc.s0) == +1, "CharacterNotInDual",
            "character is not trivial on s_0");

    std::vector<PacketLabel> hits;
    for (const auto &lab : enumerate_labels(psi))
        if (epsilon_of_label(psi, lab).values == eps.values)
            hits.push_back(lab);

    for (auto &cls : classes_by(hits, [&](const PacketLabel &x, const PacketLabel &y) {
             return equivalent(psi, x, y, EqLevel::Sigma0);
         }))
        p.elements.push_back(make_element(psi, std::move(cls), known));
    std::sort(p.elements.begin(), p.elements.end(),
              [](const PacketElement &x, const PacketElement &y) { return x.rep < y.rep; });
    return p;
}

Packet similitude_packet(const ArthurParameter &psi) {
    Packet p;
    p.psi = psi;
    auto parts = split_good_parity(psi);
    p.psi_p = parts.first;
    p.psi_np = parts.second;
    p.level = PacketLevel::similitude;
    const bool known = classify(psi).ddr;

    const CentralizerDescriptor desc = build_centralizer(psi);
    std::vector<PacketLabel> realizable;
    for (const auto &lab : enumerate_labels(psi)) {
        const Character e = epsilon_of_label(psi, lab);
        if (desc.s0_trivial() || pairing(e, desc.s0) == +1)
            realizable.push_back(lab);
    }

    for (auto &cls : classes_by(realizable,
                                [&](const PacketLabel &x, const PacketLabel &y) {
                                    return equivalent(psi, x, y, EqLevel::Gtilde);
                                }))
        p.elements.push_back(make_element(psi, std::move(cls), known));
    std::sort(p.elements.begin(), p.elements.end(),
              [](const PacketElement &x, const PacketElement &y) { return x.rep < y.rep; });
    return p;
}

std::vector<PacketElement> restriction(const ArthurParameter &psi,
                                       const PacketElement &element) {
    const CentralizerDescriptor desc = build_centralizer(psi);
    const bool known = element.nonvanishing_known;

    // The ~_{Gtilde^{Sigma0}} class of the representative among all
    // realizable labels, split into ~_{Sigma0} classes.
    std::vector<PacketLabel> cls;
    for (const auto &lab : enumerate_labels(psi)) {
        const Character e = epsilon_of_label(psi, lab);
        if (!desc.s0_trivial() && pairing(e, desc.s0) != +1)
            continue;
        if (equivalent(psi, element.rep, lab, EqLevel::Gtilde_Sigma0))
            cls.push_back(lab);
    }

    std::vector<PacketElement> out;
    for (auto &sub : classes_by(cls, [&](const PacketLabel &x, const PacketLabel &y) {
             return equivalent(psi, x, y, EqLevel::Sigma0);
         })) {
        PacketElement el = make_element(psi, std::move(sub), known);
        el.twist_record = element.twist_record;
        out.push_back(std::move(el));
    }
    std::sort(out.begin(), out.end(),
              [](const PacketElement &x, const PacketElement &y) { return x.rep < y.rep; });
    return out;
}

std::vector<int> stable_sum(const Packet &packet, const SignVector &s) {
    const CentralizerDescriptor desc = build_centralizer(packet.psi);
    require(s.size() == desc.k(), "IndexMismatch",
            "sign vector does not match Jord(psi)_p");
    const SignVector spsi = s_psi_vector(desc);
    SignVector prod(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        prod[i] = s[i] * spsi[i];

    std::vector<int> out;
    for (const auto &el : packet.elements)
        out.push_back(pairing(el.eps, prod));
    return out;
}

std::vector<PacketElement> l_packet_sublabels(const ArthurParameter &psi) {
    const ArthurParameter psi_p = split_good_parity(psi).first;
    // Ladder condition, per rho: blocks sorted by (A, B) must have constant
    // zeta and weakly increasing B along increasing A.
    std::map<std::string, std::vector<JordanBlock>> per_rho;
    for (const auto &blk : psi_p.expanded())
        per_rho[blk.rho.name].push_back(blk);
    for (auto &[name, blks] : per_rho) {
        std::sort(blks.begin(), blks.end(), [](const JordanBlock &x, const JordanBlock &y) {
            return std::tie(x.a, x.b) < std::tie(y.a, y.b);
        });
        std::sort(blks.begin(), blks.end(), [](const JordanBlock &x, const JordanBlock &y) {
            return std::make_pair(x.A(), x.B()) < std::make_pair(y.A(), y.B());
        });
        for (std::size_t i = 0; i + 1 < blks.size(); ++i) {
            require(blks[i].zeta == blks[i + 1].zeta, "LadderConditionViolated",
                    "zeta not constant for rho = " + name);
            require(blks[i].B() <= blks[i + 1].B(), "LadderConditionViolated",
                    "B not monotone along A for rho = " + name);
        }
    }

    const auto index = label_index(psi);
    const CentralizerDescriptor desc = build_centralizer(psi);
    std::vector<PacketLabel> maximal;
    for (const auto &lab : enumerate_labels(psi)) {
        bool ok = true;
        for (std::size_t i = 0; i < index.size(); ++i)
            if (lab.l[i] != label_l_max(index[i]))
                ok = false;
        if (!ok)
            continue;
        const Character e = epsilon_of_label(psi, lab);
        if (!desc.s0_trivial() && pairing(e, desc.s0) != +1)
            continue;
        maximal.push_back(lab);
    }

    std::vector<PacketElement> out;
    for (auto &cls : classes_by(maximal, [&](const PacketLabel &x, const PacketLabel &y) {
             return equivalent(psi, x, y, EqLevel::Sigma0);
         }))
        out.push_back(make_element(psi, std::move(cls), classify(psi).ddr));
    std::sort(out.begin(), out.end(),
              [](const PacketElement &x, const PacketElement &y) { return x.rep < y.rep; });
    return out;
}

Packet involution_relabel(const Packet &packet, const std::set<std::string> &rho_set) {
    const ArthurParameter psi_sharp_p = sharp_dual(packet.psi_p, rho_set);

    Packet out;
    out.psi_p = psi_sharp_p;
    out.psi_np = packet.psi_np;
    out.psi = psi_sharp_p;
    for (const auto &e : packet.psi_np.blocks) {
        // Re-add the dual half removed by split_good_parity: a doubled
        // multiplicity for self-dual blocks, the dual pair otherwise.
        if (e.block.rho.self_dual()) {
            ArthurParameter::Entry doubled = e;
            doubled.mult = 2 * e.mult;
            out.psi.blocks.push_back(doubled);
        } else {
            out.psi.blocks.push_back(e);
            ArthurParameter::Entry dual_entry = e;
            dual_entry.block.rho = e.block.rho.dual();
            out.psi.blocks.push_back(dual_entry);
        }
    }
    out.psi.normalize();
    out.level = packet.level;

    // Index permutation: old expanded order -> new expanded order under
    // (a, b) -> (b, a) on the selected rho.
    const auto old_index = packet.psi_p.expanded();
    const auto new_index = psi_sharp_p.expanded();
    auto transform = [&](JordanBlock blk) {
        if (rho_set.count(blk.rho.name) && blk.a != blk.b) {
            std::swap(blk.a, blk.b);
            blk.zeta = -blk.zeta;
        }
        return blk;
    };
    std::vector<std::size_t> old_to_new(old_index.size());
    std::vector<bool> taken(new_index.size(), false);
    for (std::size_t i = 0; i < old_index.size(); ++i) {
        const JordanBlock want = transform(old_index[i]);
        bool found = false;
        for (std::size_t j = 0; j < new_index.size(); ++j)
            if (!taken[j] && new_index[j] == want) {
                old_to_new[i] = j;
                taken[j] = true;
                found = true;
                break;
            }
        require(found, "InternalError", "involution block alignment failed");
    }

    auto relabel = [&](const PacketLabel &lab) {
        PacketLabel nl;
        nl.l.assign(lab.l.size(), 0);
        nl.eta.assign(lab.eta.size(), +1);
        for (std::size_t i = 0; i < lab.l.size(); ++i) {
            nl.l[old_to_new[i]] = lab.l[i];
            nl.eta[old_to_new[i]] = lab.eta[i];
        }
        return nl;
    };
    for (const auto &el : packet.elements) {
        PacketElement ne;
        std::vector<PacketLabel> members;
        for (const auto &m : el.members)
            members.push_back(relabel(m));
        std::sort(members.begin(), members.end());
        ne.rep = members.front();
        ne.members = std::move(members);
        ne.eps = epsilon_of_label(out.psi, ne.rep);
        ne.twist_record = el.twist_record;
        ne.nonvanishing_known = el.nonvanishing_known;
        out.elements.push_back(std::move(ne));
    }
    std::sort(out.elements.begin(), out.elements.end(),
              [](const PacketElement &x, const PacketElement &y) { return x.rep < y.rep; });
    return out;
}

Packet twist(const Packet &packet, const TwistCharacterSymbol &omega) {
    Packet out = packet;
    for (auto &el : out.elements)
        el.twist_record = el.twist_record * omega;
    return out;
}

} // namespace arthur
