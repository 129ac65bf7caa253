/*
 * arthur-kit: combinatorial skeleton of Arthur packets for classical and
 * similitude groups over a p-adic field.
 *
 * Distributed under the MIT license; see LICENSE at the repository root.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arthur/exponents.hpp"
#include "helpers.hpp"

using namespace arthur;
using namespace arthur::testing;

namespace {

// Independent closed-form membership test for the coroot cone, derived by
// eliminating the cone coefficients by hand:
//  - type B_n (Sp duals): all prefix sums of d nonnegative;
//  - type D_n (SO_even):  prefix sums p_1..p_{n-2} nonnegative and
//    p_{n-1} +- d_n nonnegative.
bool cone_oracle(const ExponentVector &xi, const ExponentVector &xi2,
                 const GroupDescriptor &group) {
    const std::size_t n = xi.size();
    std::vector<Rat> d(n);
    for (std::size_t i = 0; i < n; ++i)
        d[i] = xi2[i] - xi[i];
    if (group.family == Family::Sp) {
        Rat p(0);
        for (std::size_t i = 0; i < n; ++i) {
            p += d[i];
            if (p < Rat(0))
                return false;
        }
        return true;
    }
    if (n == 1)
        return d[0] == Rat(0);
    Rat p(0);
    for (std::size_t i = 0; i + 2 < n; ++i) {
        p += d[i];
        if (p < Rat(0))
            return false;
    }
    p += d[n - 2]; // p_{n-1}
    return p + d[n - 1] >= Rat(0) && p - d[n - 1] >= Rat(0);
}

ExponentVector random_vector(std::mt19937 &gen, std::size_t n) {
    std::uniform_int_distribution<int> num(-8, 8);
    ExponentVector v(n);
    for (auto &x : v)
        x = Rat(num(gen), 2);
    return v;
}

// All weakly dominant vectors with entries in {0, 1/2, ..., max/2}; for split
// SO_even the last entry may also be negative (|last| <= previous).
std::vector<ExponentVector> grid(std::size_t n, int max_halves,
                                 bool split_so_even) {
    std::vector<ExponentVector> out, partial{{}};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<ExponentVector> next;
        for (const auto &v : partial)
            for (int h = 0; h <= max_halves; ++h) {
                const Rat x(h, 2);
                if (!v.empty() && x > v.back())
                    continue;
                ExponentVector w = v;
                w.push_back(x);
                next.push_back(std::move(w));
                if (split_so_even && i + 1 == n && h > 0) {
                    ExponentVector wn = v;
                    wn.push_back(-x);
                    next.push_back(std::move(wn));
                }
            }
        partial = std::move(next);
    }
    return partial;
}

} // namespace

TEST_CASE("exponent vector of an L-parameter") {
    const ExponentVector xi = xi_of_lparam(phi_of_psi(psi_B()), psi_B().group);
    CHECK(xi == ExponentVector{Rat(1, 2), Rat(1, 2), Rat(0), Rat(0)});
    CHECK_THROWS_AS(
        xi_of_lparam(phi_of_psi(psi_B()), GroupDescriptor{Family::Sp, 3, "1"}),
        Error);
}

TEST_CASE("xi_plus") {
    const GroupDescriptor split{Family::SO_even, 3, "1"};
    const GroupDescriptor nonsplit{Family::SO_even, 3, "chi"};
    CHECK(xi_plus({Rat(2), Rat(1), Rat(-1)}, split) ==
          ExponentVector{Rat(2), Rat(1), Rat(1)});
    CHECK(xi_plus({Rat(2), Rat(1), Rat(1)}, split) ==
          ExponentVector{Rat(2), Rat(1), Rat(1)});
    CHECK_THROWS_AS(xi_plus({Rat(2), Rat(1), Rat(-1)}, nonsplit), Error);
    CHECK_THROWS_AS(xi_plus({Rat(1), Rat(2), Rat(0)}, split), Error);
}

TEST_CASE("dominance order against the closed-form cone oracle") {
    auto gen = rng(20260824);
    int agree = 0, total = 0, positives = 0;
    for (int trial = 0; trial < 1200; ++trial) {
        const std::size_t n = 1 + (std::size_t)(gen() % 6);
        GroupDescriptor g;
        switch (gen() % 3) {
        case 0: g = {Family::Sp, (int)n, "1"}; break;
        case 1: g = {Family::SO_even, (int)n, "1"}; break;
        default: g = {Family::SO_even, (int)n, "chi"}; break;
        }
        const ExponentVector a = random_vector(gen, n);
        // Bias half the trials toward cone membership.
        ExponentVector b = trial % 2 == 0 ? random_vector(gen, n) : a;
        if (trial % 2 != 0) {
            for (auto &x : b)
                x += Rat((int)(gen() % 3), 2);
        }
        const bool got = leq_G(a, b, g);
        const bool want = cone_oracle(a, b, g);
        total++;
        agree += got == want;
        positives += want;
    }
    CHECK(total == agree);
    CHECK(positives > 100); // the sample exercises both outcomes
    CHECK(positives < total);
}

TEST_CASE("leq_N is implied by leq_G and reflexive") {
    auto gen = rng(7);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t n = 1 + (std::size_t)(gen() % 6);
        const GroupDescriptor g{gen() % 2 ? Family::Sp : Family::SO_even, (int)n,
                                "1"};
        const ExponentVector a = random_vector(gen, n);
        ExponentVector b = a;
        for (auto &x : b)
            x += Rat((int)(gen() % 3), 2);
        CHECK(leq_N(a, a, g));
        if (leq_G(a, b, g))
            CHECK(leq_N(a, b, g));
    }
}

TEST_CASE("plus-map monotonicity and fiber injectivity on half-integer grids") {
    for (int n = 1; n <= 4; ++n) {
        const GroupDescriptor g{Family::SO_even, n, "1"};
        const auto pts = grid((std::size_t)n, 4, true);
        // Monotone: Xi <=_G Xi' implies Xi+ <=_G Xi'+.
        for (const auto &a : pts)
            for (const auto &b : pts)
                if (leq_G(a, b, g))
                    CHECK(leq_G(xi_plus(a, g), xi_plus(b, g), g));
        // Fibers: Xi+ = Xi'+ forces Xi' in {Xi, theta(Xi)}.
        for (const auto &a : pts)
            for (const auto &b : pts)
                if (xi_plus(a, g) == xi_plus(b, g)) {
                    ExponentVector theta = a;
                    theta.back() = -theta.back();
                    CHECK((b == a || b == theta));
                }
    }
}

TEST_CASE("merges") {
    CHECK(merge_endoscopic({Rat(2), Rat(0)}, {Rat(1)}) ==
          ExponentVector{Rat(2), Rat(1), Rat(0)});
    // mu = (3/2, -1/2): best split keeps 3/2 and reflects -1/2 to 1/2.
    CHECK(merge_levi({Rat(3, 2), Rat(-1, 2)}, {Rat(0)}) ==
          ExponentVector{Rat(3, 2), Rat(1, 2), Rat(0)});
}
