/*
 * arthur-kit: combinatorial skeleton of Arthur packets for classical and
 * similitude groups over a p-adic field.
 *
 * Distributed under the MIT license; see LICENSE at the repository root.
 */

#include "arthur/component_group.hpp"

#include <bit>

namespace arthur {

namespace {

using Mask = std::uint64_t;

// bit i set <=> sign -1 at index i
Mask to_mask(const SignVector &s) {
    Mask m = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] < 0)
            m |= Mask(1) << i;
    return m;
}

SignVector from_mask(Mask m, std::size_t k) {
    SignVector s(k, +1);
    for (std::size_t i = 0; i < k; ++i)
        if (m & (Mask(1) << i))
            s[i] = -1;
    return s;
}

// Lexicographic order preferring +1 in the earliest coordinates.
bool lex_leq(Mask a, Mask b, std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
        const bool ba = a & (Mask(1) << i), bb = b & (Mask(1) << i);
        if (ba != bb)
            return !ba;
    }
    return true;
}

int parity_sign(Mask m) { return std::popcount(m) % 2 == 0 ? +1 : -1; }

// F2 nullspace basis of the rows, as column masks of width k.
std::vector<Mask> nullspace(std::vector<Mask> rows, std::size_t k) {
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (std::size_t col = 0; col < k && r < rows.size(); ++col) {
        std::size_t piv = r;
        while (piv < rows.size() && !(rows[piv] & (Mask(1) << col)))
            ++piv;
        if (piv == rows.size())
            continue;
        std::swap(rows[piv], rows[r]);
        for (std::size_t j = 0; j < rows.size(); ++j)
            if (j != r && (rows[j] & (Mask(1) << col)))
                rows[j] ^= rows[r];
        pivot_col.push_back((int)col);
        ++r;
    }
    rows.resize(r);
    std::vector<Mask> basis;
    std::vector<bool> is_pivot(k, false);
    for (int c : pivot_col)
        is_pivot[c] = true;
    for (std::size_t free_col = 0; free_col < k; ++free_col) {
        if (is_pivot[free_col])
            continue;
        Mask v = Mask(1) << free_col;
        for (std::size_t j = 0; j < r; ++j)
            if (rows[j] & (Mask(1) << free_col))
                v |= Mask(1) << pivot_col[j];
        basis.push_back(v);
    }
    return basis;
}

std::size_t f2_rank(const std::vector<Mask> &vecs) {
    Mask basis[64] = {0};
    std::size_t rank = 0;
    for (Mask v : vecs) {
        for (int bit = 63; bit >= 0 && v; --bit) {
            if (!((v >> bit) & 1))
                continue;
            if (!basis[bit]) {
                basis[bit] = v;
                ++rank;
                v = 0;
            } else {
                v ^= basis[bit];
            }
        }
    }
    return rank;
}

Mask constraint_mask(const CentralizerDescriptor &d, bool odd_mult) {
    Mask m = 0;
    for (std::size_t i = 0; i < d.k(); ++i) {
        const long long v = odd_mult ? d.mult[i] : d.dim[i];
        if (v % 2 != 0)
            m |= Mask(1) << i;
    }
    return m;
}

} // namespace

TwistCharacterSymbol TwistCharacterSymbol::operator*(const TwistCharacterSymbol &o) const {
    TwistCharacterSymbol out = *this;
    for (const auto &t : o.tags) {
        if (out.tags.count(t))
            out.tags.erase(t);
        else
            out.tags.insert(t);
    }
    return out;
}

std::string TwistCharacterSymbol::str() const {
    if (tags.empty())
        return "1";
    std::string s;
    for (const auto &t : tags) {
        if (!s.empty())
            s += "*";
        s += t;
    }
    return s;
}

TwistCharacterSymbol twist_symbol(const std::string &tag) {
    TwistCharacterSymbol t;
    if (tag != kTrivialTag)
        t.tags.insert(tag);
    return t;
}

long long CentralizerDescriptor::size_S_sigma0() const {
    const long long full = 1LL << k();
    return s0_trivial() ? full : full / 2;
}

bool CentralizerDescriptor::s0_trivial() const {
    for (int v : s0)
        if (v < 0)
            return false;
    return true;
}

CentralizerDescriptor build_centralizer(const ArthurParameter &psi) {
    CentralizerDescriptor d;
    d.group = psi.group;
    d.so_even = psi.group.family == Family::SO_even;

    const ArthurParameter psi_p = split_good_parity(psi).first;
    // Deduplicate by (rho, a, b): at a = b the zeta choice names the same
    // block.
    std::map<std::tuple<std::string, int, int>, std::size_t> index;
    for (const auto &e : psi_p.blocks) {
        auto key = std::make_tuple(e.block.rho.name, e.block.a, e.block.b);
        auto it = index.find(key);
        if (it == index.end()) {
            index[key] = d.jordan.size();
            d.jordan.push_back(e.block);
            d.mult.push_back(e.mult);
            d.dim.push_back(e.block.n_block());
        } else {
            d.mult[it->second] += e.mult;
        }
    }
    require(d.k() < 60, "TooLarge", "more than 59 distinct Jordan blocks");

    for (std::size_t i = 0; i < d.k(); ++i) {
        d.s0.push_back(d.mult[i] % 2 == 0 ? +1 : -1);
        d.eps0.push_back(d.dim[i] % 2 == 0 ? +1 : -1);
    }
    for (const auto &e : psi_p.blocks) {
        auto key = std::make_tuple(e.block.rho.name, e.block.a, e.block.b);
        for (int c = 0; c < e.mult; ++c)
            d.expanded_to_dedup.push_back(index.at(key));
    }
    return d;
}

std::vector<Character> characters(const CentralizerDescriptor &desc, WhichGroup which) {
    const std::size_t k = desc.k();
    const Mask odd_l = constraint_mask(desc, /*odd_mult=*/true);
    const Mask e0 = to_mask(desc.eps0);
    const bool quotient = which == WhichGroup::S && desc.so_even && e0 != 0;

    std::vector<Character> out;
    for (Mask m = 0; m < (Mask(1) << k); ++m) {
        if (parity_sign(m & odd_l) != +1)
            continue; // not trivial on s_0
        if (quotient && !lex_leq(m, m ^ e0, k))
            continue; // not the canonical coset representative mod eps_0
        out.push_back({from_mask(m, k), which == WhichGroup::S && desc.so_even});
    }
    return out;
}

std::vector<SignVector> group_elements(const CentralizerDescriptor &desc, WhichGroup which) {
    const std::size_t k = desc.k();
    const Mask odd_n = constraint_mask(desc, /*odd_mult=*/false);
    const Mask s0 = to_mask(desc.s0);

    std::vector<SignVector> out;
    for (Mask m = 0; m < (Mask(1) << k); ++m) {
        if (which == WhichGroup::S && desc.so_even && parity_sign(m & odd_n) != +1)
            continue; // prod s_i^{n_i} != 1
        if (s0 != 0 && !lex_leq(m, m ^ s0, k))
            continue; // canonical representative modulo s_0
        out.push_back(from_mask(m, k));
    }
    return out;
}

int pairing(const SignVector &eps, const SignVector &s) {
    require(eps.size() == s.size(), "IndexMismatch", "pairing index sets differ");
    int sign = +1;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (eps[i] < 0 && s[i] < 0)
            sign = -sign;
    return sign;
}

int pairing(const Character &eps, const SignVector &s) { return pairing(eps.values, s); }

SignVector cont(const CentralizerDescriptor &desc, const SignVector &s_expanded) {
    require(s_expanded.size() == desc.expanded_to_dedup.size(), "IndexMismatch",
            "cont expects a sign per Jord(psi_p) with multiplicity");
    SignVector out(desc.k(), +1);
    for (std::size_t j = 0; j < s_expanded.size(); ++j)
        out[desc.expanded_to_dedup[j]] *= s_expanded[j];
    return out;
}

SignVector ext(const CentralizerDescriptor &desc, const SignVector &eps_dedup) {
    require(eps_dedup.size() == desc.k(), "IndexMismatch",
            "ext expects a sign per deduplicated block");
    SignVector out;
    for (std::size_t j : desc.expanded_to_dedup)
        out.push_back(eps_dedup[j]);
    return out;
}

TwistCharacterSymbol alpha(const CentralizerDescriptor &desc, const SignVector &s) {
    require(s.size() == desc.k(), "IndexMismatch", "alpha expects a dedup sign vector");
    TwistCharacterSymbol t;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] < 0)
            t = t * twist_symbol(desc.jordan[i].eta_block());
    // Reduce modulo the discriminant so alpha factors through S^{Sigma0}.
    if (desc.group.discriminant != kTrivialTag && t.tags.count(desc.group.discriminant))
        t.tags.erase(desc.group.discriminant);
    return t;
}

std::vector<SignVector> ker_alpha_lift(const CentralizerDescriptor &desc, bool intersect_S) {
    const std::size_t k = desc.k();
    // Rows of the alpha matrix: one per distinct nontrivial tag other than
    // the discriminant (the discriminant coordinate is quotiented away).
    std::map<std::string, Mask> rows_by_tag;
    for (std::size_t i = 0; i < k; ++i) {
        const std::string t = desc.jordan[i].eta_block();
        if (t == kTrivialTag || t == desc.group.discriminant)
            continue;
        rows_by_tag[t] |= Mask(1) << i;
    }
    std::vector<Mask> rows;
    for (const auto &[tag, row] : rows_by_tag)
        rows.push_back(row);
    if (intersect_S && desc.so_even)
        rows.push_back(constraint_mask(desc, /*odd_mult=*/false));

    std::vector<SignVector> basis;
    for (Mask v : nullspace(std::move(rows), k))
        basis.push_back(from_mask(v, k));
    return basis;
}

long long ker_alpha_order(const CentralizerDescriptor &desc) {
    std::vector<Mask> vecs;
    for (const auto &b : ker_alpha_lift(desc, /*intersect_S=*/false))
        vecs.push_back(to_mask(b));
    const Mask s0 = to_mask(desc.s0);
    if (s0)
        vecs.push_back(s0);
    const std::size_t rank = f2_rank(vecs);
    long long order = 1LL << rank;
    if (s0)
        order /= 2;
    return order;
}

std::vector<TwistCharacterSymbol> x_group(const CentralizerDescriptor &desc) {
    std::set<TwistCharacterSymbol> img;
    for (const auto &s : group_elements(desc, WhichGroup::S))
        img.insert(alpha(desc, s));
    return {img.begin(), img.end()};
}

SignVector s_psi_vector(const CentralizerDescriptor &desc) {
    SignVector s;
    for (const auto &blk : desc.jordan)
        s.push_back((blk.b - 1) % 2 == 0 ? +1 : -1);
    return s;
}

long long multiplicity(const CentralizerDescriptor &desc, const Character &char_of_pi,
                       const Character &eps_psi, int m_psi) {
    require(m_psi == 1 || m_psi == 2, "InvalidInput", "m_psi must be 1 or 2");
    const auto elems = group_elements(desc, WhichGroup::S);
    long long sum = 0;
    for (const auto &s : elems)
        sum += pairing(char_of_pi, s) * pairing(eps_psi, s);
    require(sum % (long long)elems.size() == 0 && sum >= 0, "InternalError",
            "character sum not a nonnegative multiple of |S|");
    return m_psi * (sum / (long long)elems.size());
}

} // namespace arthur
