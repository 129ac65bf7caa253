/*
 * arthur-kit: combinatorial skeleton of Arthur packets for classical and
 * similitude groups over a p-adic field.
 *
 * Distributed under the MIT license; see LICENSE at the repository root.
 */

#include "arthur/params.hpp"

#include <cstdlib>

namespace arthur {

std::string parity_str(Parity p) {
    switch (p) {
    case Parity::orthogonal: return "orthogonal";
    case Parity::symplectic: return "symplectic";
    case Parity::none: return "none";
    }
    return "none";
}

Parity parity_parse(const std::string &s) {
    if (s == "orthogonal")
        return Parity::orthogonal;
    if (s == "symplectic")
        return Parity::symplectic;
    if (s == "none")
        return Parity::none;
    fail("InvalidLabel", "unknown parity '" + s + "'");
}

std::string dual_name(const std::string &name) {
    const std::string suf = "^v";
    if (name.size() > suf.size() &&
        name.compare(name.size() - suf.size(), suf.size(), suf) == 0)
        return name.substr(0, name.size() - suf.size());
    return name + suf;
}

SupercuspidalLabel SupercuspidalLabel::dual() const {
    if (self_dual())
        return *this;
    SupercuspidalLabel d = *this;
    d.name = dual_name(name);
    return d;
}

void SupercuspidalLabel::check() const {
    require(dim >= 1, "InvalidLabel", "dim must be positive for '" + name + "'");
    if (dim == 1 && parity == Parity::orthogonal)
        // A 1-dimensional orthogonal rho is its own central character: the
        // eta tag must name the label itself, or be trivial when the label
        // denotes the trivial character.
        require(eta == name || eta == kTrivialTag, "InvalidLabel",
                "1-dim orthogonal label '" + name + "' must have eta '" + name +
                    "' or trivial, got '" + eta + "'");
}

void GroupDescriptor::check() const {
    require(rank >= 1, "InvalidGroup", "rank must be >= 1");
    if (family == Family::Sp)
        require(discriminant == kTrivialTag, "InvalidGroup",
                "Sp carries no discriminant character");
}

Parity JordanBlock::parity() const { return block_parity(*this); }

Parity block_parity(const JordanBlock &blk) {
    if (!blk.rho.self_dual())
        return Parity::none;
    const bool sum_even = (blk.a + blk.b) % 2 == 0;
    if (blk.rho.parity == Parity::orthogonal)
        return sum_even ? Parity::orthogonal : Parity::symplectic;
    return sum_even ? Parity::symplectic : Parity::orthogonal;
}

JordanBlock block_from_ab(const SupercuspidalLabel &rho, int a, int b,
                          std::optional<int> zeta_hint) {
    require(a >= 1 && b >= 1, "InvalidBlock", "a, b must be positive");
    JordanBlock blk;
    blk.rho = rho;
    blk.a = a;
    blk.b = b;
    if (a == b) {
        blk.zeta = zeta_hint.value_or(+1); // free choice; +1 by convention
    } else {
        const int forced = a > b ? +1 : -1;
        if (zeta_hint && *zeta_hint != forced)
            fail("ZetaConflict", "zeta hint contradicts sign(a-b)");
        blk.zeta = forced;
    }
    return blk;
}

JordanBlock block_from_ABz(const SupercuspidalLabel &rho, const Rat &A,
                           const Rat &B, int zeta) {
    require(B >= 0 && A >= B, "InvalidBlock", "need A >= B >= 0");
    require(is_integer(A - B), "InvalidBlock", "A - B must be integral");
    const Rat two(2);
    require(is_integer(two * A) && is_integer(two * B), "InvalidBlock",
            "A, B must be half-integers");
    require(zeta == 1 || zeta == -1, "InvalidBlock", "zeta must be +/-1");
    // a+b = 2(A+1), |a-b| = 2B.
    const long long sum = rat_floor(two * (A + 1));
    const long long diff = rat_floor(two * B);
    const long long big = (sum + diff) / 2, small = (sum - diff) / 2;
    int a, b;
    if (zeta >= 0) {
        a = (int)big;
        b = (int)small;
    } else {
        a = (int)small;
        b = (int)big;
    }
    return block_from_ab(rho, a, b, diff == 0 ? std::optional<int>(zeta) : std::nullopt);
}

void ArthurParameter::normalize() {
    std::sort(blocks.begin(), blocks.end(), [](const Entry &x, const Entry &y) {
        return x.block.key() < y.block.key();
    });
    std::vector<Entry> merged;
    for (const auto &e : blocks) {
        require(e.mult >= 1, "InvalidBlock", "multiplicity must be >= 1");
        if (!merged.empty() && merged.back().block == e.block)
            merged.back().mult += e.mult;
        else
            merged.push_back(e);
    }
    blocks = std::move(merged);
}

std::vector<JordanBlock> ArthurParameter::expanded() const {
    std::vector<JordanBlock> out;
    for (const auto &e : blocks)
        for (int i = 0; i < e.mult; ++i)
            out.push_back(e.block);
    return out;
}

long long ArthurParameter::total_dim() const {
    long long n = 0;
    for (const auto &e : blocks)
        n += e.mult * e.block.n_block();
    return n;
}

ArthurParameter make_parameter(const GroupDescriptor &g,
                               std::vector<ArthurParameter::Entry> blocks) {
    ArthurParameter psi;
    psi.group = g;
    psi.blocks = std::move(blocks);
    psi.normalize();
    return psi;
}

namespace {

// Blocks (rho,a,a,+) and (rho,a,a,-) describe the same summand; for multiset
// bookkeeping we count by (rho, a, b) only.
std::map<std::tuple<std::string, int, int>, int> ab_multiplicities(const ArthurParameter &psi) {
    std::map<std::tuple<std::string, int, int>, int> m;
    for (const auto &e : psi.blocks)
        m[{e.block.rho.name, e.block.a, e.block.b}] += e.mult;
    return m;
}

// Tempered + good parity + multiplicity-free, i.e. discrete.
bool is_discrete_param(const ArthurParameter &psi) {
    const Parity good = psi.group.dual_parity();
    for (const auto &e : psi.blocks)
        if (block_parity(e.block) != good || e.block.b != 1)
            return false;
    for (const auto &[key, m] : ab_multiplicities(psi))
        if (m > 1)
            return false;
    return true;
}

} // namespace

void validate(const ArthurParameter &psi) {
    psi.group.check();
    for (const auto &e : psi.blocks)
        e.block.rho.check();

    require(psi.total_dim() == psi.group.N(), "DimensionMismatch",
            "sum of block dimensions " + std::to_string(psi.total_dim()) +
                " != N = " + std::to_string(psi.group.N()));

    // Non-self-dual labels must occur in dual pairs with equal (a, b, mult).
    auto mults = ab_multiplicities(psi);
    for (const auto &e : psi.blocks) {
        if (e.block.rho.self_dual())
            continue;
        auto it = mults.find({dual_name(e.block.rho.name), e.block.a, e.block.b});
        int dual_mult = it == mults.end() ? 0 : it->second;
        require(dual_mult == mults.at({e.block.rho.name, e.block.a, e.block.b}),
                "SelfDualityViolation",
                "block on '" + e.block.rho.name + "' lacks a matching dual block");
    }

    // Determinant condition: product of eta_block^{mult} over self-dual
    // blocks equals the discriminant (dual pairs cancel).
    std::set<std::string> det;
    for (const auto &e : psi.blocks) {
        if (!e.block.rho.self_dual())
            continue;
        const std::string t = e.block.eta_block();
        if (t != kTrivialTag && e.mult % 2 != 0) {
            if (det.count(t))
                det.erase(t);
            else
                det.insert(t);
        }
    }
    std::set<std::string> want;
    if (psi.group.discriminant != kTrivialTag)
        want.insert(psi.group.discriminant);
    require(det == want, "DeterminantMismatch",
            "central-character product does not match the group discriminant");
}

std::pair<ArthurParameter, ArthurParameter> split_good_parity(const ArthurParameter &psi) {
    const Parity good = psi.group.dual_parity();
    ArthurParameter psi_p, psi_np;
    psi_p.group = psi.group;
    psi_np.group = psi.group;

    // Multiplicities of the non-good part, to be halved into a canonical half.
    std::vector<ArthurParameter::Entry> rest;
    for (const auto &e : psi.blocks) {
        if (block_parity(e.block) == good)
            psi_p.blocks.push_back(e);
        else
            rest.push_back(e);
    }

    for (const auto &e : rest) {
        if (!e.block.rho.self_dual()) {
            // Dual pairs: keep the lexicographically smaller name.
            if (e.block.rho.name < dual_name(e.block.rho.name))
                psi_np.blocks.push_back(e);
            continue;
        }
        // Self-dual block of the wrong parity: psi contains it an even number
        // of times; half of the copies go to psi_np.
        require(e.mult % 2 == 0, "OddMultiplicityNonGoodBlock",
                "non-good self-dual block on '" + e.block.rho.name +
                    "' has odd multiplicity");
        psi_np.blocks.push_back({e.block, e.mult / 2});
    }
    psi_p.normalize();
    psi_np.normalize();
    return {psi_p, psi_np};
}

ArthurParameter diagonal_restriction(const ArthurParameter &psi) {
    ArthurParameter out;
    out.group = psi.group;
    for (const auto &e : psi.blocks) {
        const int lo = std::min(e.block.a, e.block.b);
        for (int k = 0; k < lo; ++k) {
            JordanBlock d = block_from_ab(e.block.rho, e.block.a + e.block.b - 1 - 2 * k, 1);
            out.blocks.push_back({d, e.mult});
        }
    }
    out.normalize();
    return out;
}

ClassifyFlags classify(const ArthurParameter &psi) {
    ClassifyFlags f;
    const Parity good = psi.group.dual_parity();
    f.good_parity = true;
    f.tempered = true;
    bool mult_free = true;
    bool all_AB_equal = true;
    for (const auto &e : psi.blocks) {
        if (block_parity(e.block) != good)
            f.good_parity = false;
        if (e.block.b != 1)
            f.tempered = false;
        if (std::min(e.block.a, e.block.b) != 1)
            all_AB_equal = false;
    }
    for (const auto &[key, m] : ab_multiplicities(psi))
        if (m > 1)
            mult_free = false;

    f.discrete = f.tempered && f.good_parity && mult_free;

    // ddr: psi_d is discrete, i.e. psi has good parity, is multiplicity-free,
    // and per rho the intervals [B, A] are pairwise disjoint.
    f.ddr = is_discrete_param(diagonal_restriction(psi));
    f.elementary = f.ddr && all_AB_equal;
    return f;
}

long long LParameter::total_dim() const {
    long long n = 0;
    for (const auto &e : entries)
        n += (long long)e.mult * e.rho.dim * e.a;
    return n;
}

LParameter phi_of_psi(const ArthurParameter &psi) {
    LParameter phi;
    for (const auto &e : psi.blocks)
        for (int j = 0; j < e.block.b; ++j)
            phi.entries.push_back(
                {e.block.rho, e.block.a, Rat(e.block.b - 1, 2) - j, e.mult});
    return phi;
}

void InfChar::add(const std::string &rho_name, const Rat &x, int mult) {
    entries[{rho_name, x}] += mult;
}

InfChar inf_char(const LParameter &phi) {
    InfChar ic;
    for (const auto &e : phi.entries)
        for (int i = 0; i < e.a; ++i)
            ic.add(e.rho.name, e.x + Rat(e.a - 1, 2) - i, e.mult);
    return ic;
}

InfChar inf_char(const ArthurParameter &psi) { return inf_char(phi_of_psi(psi)); }

ArthurParameter sharp_dual(const ArthurParameter &psi,
                           const std::set<std::string> &rho_set) {
    require(classify(psi).good_parity, "NotGoodParity",
            "sharp_dual requires psi of good parity");
    ArthurParameter out;
    out.group = psi.group;
    for (const auto &e : psi.blocks) {
        if (rho_set.count(e.block.rho.name)) {
            // Swap (a,b); at a=b keep the stored zeta (free choice).
            std::optional<int> hint;
            if (e.block.a == e.block.b)
                hint = e.block.zeta;
            out.blocks.push_back(
                {block_from_ab(e.block.rho, e.block.b, e.block.a, hint), e.mult});
        } else {
            out.blocks.push_back(e);
        }
    }
    out.normalize();
    return out;
}

AdmissibleOrder natural_order(const ArthurParameter &psi) {
    AdmissibleOrder ord;
    const auto ex = psi.expanded();
    for (std::size_t i = 0; i < ex.size(); ++i)
        ord.per_rho[ex[i].rho.name].push_back(i);
    for (auto &[name, seq] : ord.per_rho)
        std::stable_sort(seq.begin(), seq.end(), [&](std::size_t x, std::size_t y) {
            auto kx = std::make_tuple(ex[x].A(), ex[x].B(), ex[x].zeta);
            auto ky = std::make_tuple(ex[y].A(), ex[y].B(), ex[y].zeta);
            return kx < ky;
        });
    return ord;
}

bool is_admissible(const ArthurParameter &psi, const AdmissibleOrder &order) {
    const auto ex = psi.expanded();
    // The order must cover each rho's blocks exactly once.
    std::map<std::string, std::multiset<std::size_t>> want;
    for (std::size_t i = 0; i < ex.size(); ++i)
        want[ex[i].rho.name].insert(i);
    for (const auto &[name, seq] : order.per_rho) {
        std::multiset<std::size_t> got(seq.begin(), seq.end());
        if (want.count(name) == 0 || got != want.at(name))
            return false;
        want.erase(name);
    }
    if (!want.empty())
        return false;

    // Property (P): strict domination in (A, B) with equal zeta must be
    // reflected by the order.
    for (const auto &[name, seq] : order.per_rho)
        for (std::size_t p = 0; p < seq.size(); ++p)
            for (std::size_t q = p + 1; q < seq.size(); ++q) {
                const JordanBlock &below = ex[seq[p]], &above = ex[seq[q]];
                if (below.A() > above.A() && below.B() > above.B() &&
                    below.zeta == above.zeta)
                    return false;
            }
    return true;
}

DominatingResult dominating(const ArthurParameter &psi, const AdmissibleOrder &order) {
    require(classify(psi).good_parity, "NotGoodParity",
            "dominating requires psi of good parity");
    require(is_admissible(psi, order), "InadmissibleOrder",
            "order is not admissible for psi");

    const auto ex = psi.expanded();
    std::vector<long long> shifts(ex.size(), 0);

    for (const auto &[name, seq] : order.per_rho) {
        bool have_prev = false;
        Rat prev_A(0);
        for (std::size_t idx : seq) {
            const Rat A = ex[idx].A(), B = ex[idx].B();
            long long T = 0;
            if (have_prev && B + Rat(T) <= prev_A) {
                // Minimal integral shift with B + T > prev_A; same-rho blocks
                // differ by integers, so this is prev_A - B + 1.
                T = rat_floor(prev_A - B) + 1;
            }
            shifts[idx] = T;
            prev_A = A + Rat(T);
            have_prev = true;
        }
    }

    ArthurParameter out;
    for (std::size_t i = 0; i < ex.size(); ++i) {
        JordanBlock shifted = block_from_ABz(ex[i].rho, ex[i].A() + Rat(shifts[i]),
                                             ex[i].B() + Rat(shifts[i]), ex[i].zeta);
        out.blocks.push_back({shifted, 1});
    }
    // The group grows with the shifts: recompute the rank, keeping family and
    // discriminant (the determinant is shift-invariant).
    out.group = psi.group;
    ArthurParameter tmp = out;
    long long N = 0;
    for (const auto &e : tmp.blocks)
        N += e.block.n_block();
    out.group.rank = psi.group.family == Family::Sp ? (int)((N - 1) / 2) : (int)(N / 2);
    out.normalize();
    return {out, shifts};
}

} // namespace arthur
