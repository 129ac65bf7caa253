/*
 * arthur-kit: combinatorial skeleton of Arthur packets for classical and
 * similitude groups over a p-adic field.
 *
 * Distributed under the MIT license; see LICENSE at the repository root.
 */

#include "arthur/endoscopy.hpp"

#include <sstream>

namespace arthur {

SupercuspidalLabel twist_label(const SupercuspidalLabel &rho, const std::string &tag) {
    if (tag == kTrivialTag)
        return rho;
    SupercuspidalLabel out = rho;
    if (rho.dim == 1 && rho.parity == Parity::orthogonal) {
        // The label is its own quadratic character: multiply the tags.
        const std::string cur = rho.name == kTrivialTag ? kTrivialTag : rho.eta;
        const std::string prod = tag_mul(cur, tag);
        out.name = prod;
        out.eta = prod;
        return out;
    }
    // Toggle the tag in the normalized "*"-separated twist set of the name.
    std::vector<std::string> parts;
    {
        std::stringstream ss(rho.name);
        std::string tok;
        while (std::getline(ss, tok, '*'))
            parts.push_back(tok);
    }
    const std::string base = parts.empty() ? rho.name : parts.front();
    std::set<std::string> tags(parts.begin() + (parts.empty() ? 0 : 1), parts.end());
    if (tags.count(tag))
        tags.erase(tag);
    else
        tags.insert(tag);
    std::string name = base;
    for (const auto &t : tags)
        name += "*" + t;
    out.name = name;
    if (rho.dim % 2 != 0)
        out.eta = tag_mul(rho.eta, tag);
    return out;
}

namespace {

EndoscopicFactor build_factor(const std::vector<ArthurParameter::Entry> &entries) {
    EndoscopicFactor f;
    TwistCharacterSymbol eta;
    for (const auto &e : entries) {
        f.N += e.mult * e.block.n_block();
        for (int c = 0; c < e.mult; ++c)
            eta = eta * twist_symbol(e.block.eta_block());
    }
    require(eta.tags.size() <= 1, "TagProduct",
            "factor character is a product of distinct tags");
    f.eta_factor = eta.tags.empty() ? kTrivialTag : *eta.tags.begin();

    f.twisted = f.N % 2 != 0;
    if (f.twisted) {
        f.group.family = Family::Sp;
        f.group.rank = (int)((f.N - 1) / 2);
        f.group.discriminant = kTrivialTag;
    } else {
        f.group.family = Family::SO_even;
        f.group.rank = (int)(f.N / 2);
        f.group.discriminant = f.eta_factor;
    }

    f.psi.group = f.group;
    for (const auto &e : entries) {
        JordanBlock blk = e.block;
        if (f.twisted)
            blk.rho = twist_label(blk.rho, f.eta_factor);
        f.psi.blocks.push_back({blk, e.mult});
    }
    f.psi.normalize();
    if (f.group.rank >= 1)
        validate(f.psi);
    return f;
}

} // namespace

EndoscopicDatum decompose(const ArthurParameter &psi, const SignVector &s) {
    require(classify(psi).good_parity, "NotGoodParity",
            "endoscopic decomposition requires psi of good parity");
    const CentralizerDescriptor desc = build_centralizer(psi);
    require(s.size() == desc.k(), "IndexMismatch",
            "sign vector does not match Jord(psi)");
    for (int v : s)
        require(v == 1 || v == -1, "IndexMismatch", "signs must be +-1");

    std::vector<ArthurParameter::Entry> plus, minus;
    for (std::size_t i = 0; i < desc.k(); ++i)
        (s[i] > 0 ? plus : minus).push_back({desc.jordan[i], desc.mult[i]});

    EndoscopicDatum d;
    d.plus = build_factor(plus);
    d.minus = build_factor(minus);
    require(d.plus.N + d.minus.N == psi.total_dim(), "InternalError",
            "factor dimensions do not sum to N");
    return d;
}

std::pair<Character, Character> product_character(const ArthurParameter &psi,
                                                  const Character &eps,
                                                  const EndoscopicDatum &datum) {
    const CentralizerDescriptor desc = build_centralizer(psi);
    require(eps.values.size() == desc.k() && !eps.mod_eps0, "IndexMismatch",
            "character index set does not match Jord(psi)");

    auto route = [&](const EndoscopicFactor &f) {
        const CentralizerDescriptor fd = build_centralizer(f.psi);
        Character out;
        out.values.assign(fd.k(), +1);
        for (std::size_t i = 0; i < desc.k(); ++i) {
            JordanBlock blk = desc.jordan[i];
            if (f.twisted)
                blk.rho = twist_label(blk.rho, f.eta_factor);
            for (std::size_t j = 0; j < fd.k(); ++j)
                if (fd.jordan[j].rho.name == blk.rho.name && fd.jordan[j].a == blk.a &&
                    fd.jordan[j].b == blk.b)
                    out.values[j] = eps.values[i];
        }
        return out;
    };
    return {route(datum.plus), route(datum.minus)};
}

std::vector<int> transfer_coefficients(const Packet &packet, const SignVector &s) {
    return stable_sum(packet, s);
}

LeviFactorization levi_factorization(
    const ArthurParameter &psi,
    const std::vector<std::pair<JordanBlock, int>> &gl_blocks) {
    LeviFactorization out;
    ArthurParameter rem = psi;

    auto take = [&](const JordanBlock &blk, int count) {
        for (auto &e : rem.blocks)
            if (e.block == blk) {
                require(e.mult >= count, "InvalidPartition",
                        "not enough copies of the selected block");
                e.mult -= count;
                return;
            }
        fail("BlockNotFound", "selected block not present in psi");
    };

    for (const auto &[blk, count] : gl_blocks) {
        require(count >= 1, "InvalidPartition", "count must be positive");
        if (blk.rho.self_dual()) {
            take(blk, 2 * count);
        } else {
            JordanBlock dual = blk;
            dual.rho = blk.rho.dual();
            take(blk, count);
            take(dual, count);
        }
        for (int c = 0; c < count; ++c) {
            out.gl.push_back(blk);
            out.markers.push_back("Sp(St(" + blk.rho.name + "," + std::to_string(blk.a) +
                                  ")," + std::to_string(blk.b) + ")");
            out.twist = out.twist *
                        chi_twist(blk.rho.name, (long long)std::min(blk.a, blk.b));
        }
    }

    // Drop exhausted entries and recompute the rank of the smaller group.
    ArthurParameter minus;
    minus.group = psi.group;
    for (const auto &e : rem.blocks)
        if (e.mult > 0)
            minus.blocks.push_back(e);
    minus.normalize();
    const long long n = minus.total_dim();
    if (psi.group.family == Family::Sp) {
        require(n % 2 == 1, "InvalidPartition", "remainder has even dimension");
        minus.group.rank = (int)((n - 1) / 2);
    } else {
        require(n % 2 == 0, "InvalidPartition", "remainder has odd dimension");
        minus.group.rank = (int)(n / 2);
    }
    if (minus.group.rank >= 1)
        validate(minus);
    out.psi_minus = minus;
    return out;
}

} // namespace arthur
