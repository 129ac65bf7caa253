/*
 * arthur-kit: combinatorial skeleton of Arthur packets for classical and
 * similitude groups over a p-adic field.
 *
 * Distributed under the MIT license; see LICENSE at the repository root.
 */

#include "arthur/exponents.hpp"

namespace arthur {

namespace {

ExponentVector sorted_decreasing(ExponentVector v) {
    std::sort(v.begin(), v.end(), [](const Rat &x, const Rat &y) { return y < x; });
    return v;
}

// Solve G c = x for the generator matrix G (columns = cone generators) by
// exact Gaussian elimination; return true iff the unique solution is
// componentwise nonnegative.  Generators are chosen square and invertible.
bool in_simplicial_cone(std::vector<std::vector<Rat>> cols, const std::vector<Rat> &x) {
    const std::size_t n = x.size();
    // Build augmented matrix [G | x], rows = coordinates.
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n + 1, Rat(0)));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            m[i][j] = cols[j][i];
    for (std::size_t i = 0; i < n; ++i)
        m[i][n] = x[i];

    for (std::size_t col = 0, row = 0; col < n && row < n; ++col, ++row) {
        std::size_t piv = row;
        while (piv < n && m[piv][col] == Rat(0))
            ++piv;
        if (piv == n)
            fail("SingularCone", "generator matrix unexpectedly singular");
        std::swap(m[piv], m[row]);
        const Rat p = m[row][col];
        for (auto &v : m[row])
            v /= p;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == row || m[r][col] == Rat(0))
                continue;
            const Rat f = m[r][col];
            for (std::size_t c = col; c <= n; ++c)
                m[r][c] -= f * m[row][c];
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (m[i][n] < Rat(0))
            return false;
    return true;
}

} // namespace

ExponentVector xi_of_lparam(const LParameter &phi, const GroupDescriptor &group) {
    require(phi.total_dim() == group.N(), "DimensionMismatch",
            "L-parameter dimension " + std::to_string(phi.total_dim()) +
                " != N = " + std::to_string(group.N()));
    ExponentVector xi;
    for (const auto &e : phi.entries) {
        // One representative per dual pair: entries with positive exponent.
        // (x = 0 entries are the tempered part and only contribute zeros.)
        if (e.x <= Rat(0))
            continue;
        for (int c = 0; c < e.mult * e.rho.dim * e.a; ++c)
            xi.push_back(e.x);
    }
    require((int)xi.size() <= group.rank, "DimensionMismatch",
            "more positive exponents than the rank");
    xi.resize(group.rank, Rat(0));
    return xi_plus(sorted_decreasing(std::move(xi)), group);
}

ExponentVector xi_plus(const ExponentVector &xi, const GroupDescriptor &group) {
    require((int)xi.size() == group.rank, "DimensionMismatch",
            "exponent vector length != rank");
    const int n = group.rank;
    for (int i = 0; i + 1 < n; ++i)
        require(xi[i] >= xi[i + 1], "NotDominant", "entries not weakly decreasing");
    const bool split_so_even =
        group.family == Family::SO_even && group.discriminant == kTrivialTag;
    if (!split_so_even) {
        require(n == 0 || xi[n - 1] >= Rat(0), "NotDominant",
                "negative entry outside split SO_even");
        return xi;
    }
    require(n < 2 || xi[n - 2] >= (xi[n - 1] < Rat(0) ? -xi[n - 1] : xi[n - 1]),
            "NotDominant", "second-to-last entry below |last|");
    ExponentVector out = xi;
    if (!out.empty() && out[n - 1] < Rat(0))
        out[n - 1] = -out[n - 1];
    return out;
}

bool leq_N(const ExponentVector &xi, const ExponentVector &xi2,
           const GroupDescriptor &group) {
    require(xi.size() == xi2.size() && (int)xi.size() == group.rank,
            "DimensionMismatch", "length mismatch in leq_N");
    const int n = group.rank, N = group.N();
    // Embed v -> (v, 0^{N-2n}, -reverse(v)) and test all prefix sums of the
    // difference for nonnegativity (the total is automatically zero).
    std::vector<Rat> diff(N, Rat(0));
    for (int i = 0; i < n; ++i) {
        diff[i] = xi2[i] - xi[i];
        diff[N - 1 - i] = -(xi2[i] - xi[i]);
    }
    Rat run(0);
    for (int i = 0; i < N; ++i) {
        run += diff[i];
        if (run < Rat(0))
            return false;
    }
    return true;
}

bool leq_G(const ExponentVector &xi, const ExponentVector &xi2,
           const GroupDescriptor &group) {
    require(xi.size() == xi2.size() && (int)xi.size() == group.rank,
            "DimensionMismatch", "length mismatch in leq_G");
    const std::size_t n = group.rank;
    std::vector<Rat> x(n);
    bool zero = true;
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = xi2[i] - xi[i];
        if (x[i] != Rat(0))
            zero = false;
    }
    if (zero)
        return true;

    std::vector<std::vector<Rat>> gens;
    auto basis_diff = [&](std::size_t i) { // e_i - e_{i+1}
        std::vector<Rat> g(n, Rat(0));
        g[i] = Rat(1);
        g[i + 1] = Rat(-1);
        return g;
    };
    if (group.family == Family::Sp) {
        // Dual SO(2n+1): simple coroots of type B_n act on the same a* as
        // {e_i - e_{i+1}, 2 e_n}.
        for (std::size_t i = 0; i + 1 < n; ++i)
            gens.push_back(basis_diff(i));
        std::vector<Rat> last(n, Rat(0));
        last[n - 1] = Rat(2);
        gens.push_back(last);
    } else {
        // Type D_n: {e_i - e_{i+1}, e_{n-1} + e_n}; for n = 1 the cone is {0}.
        if (n == 1)
            return false; // x != 0 already handled
        for (std::size_t i = 0; i + 1 < n; ++i)
            gens.push_back(basis_diff(i));
        std::vector<Rat> last(n, Rat(0));
        last[n - 2] = Rat(1);
        last[n - 1] = Rat(1);
        gens.push_back(last);
    }
    return in_simplicial_cone(std::move(gens), x);
}

ExponentVector merge_endoscopic(const ExponentVector &xi_I, const ExponentVector &xi_II) {
    ExponentVector out = xi_I;
    out.insert(out.end(), xi_II.begin(), xi_II.end());
    return sorted_decreasing(std::move(out));
}

ExponentVector merge_levi(const std::vector<Rat> &mu_GL, const ExponentVector &xi_minus) {
    const std::size_t m = mu_GL.size();
    std::vector<Rat> mu_bar(mu_GL.rbegin(), mu_GL.rend());
    for (auto &v : mu_bar)
        v = -v;

    // Choose t + s = m maximizing prefix(mu, t) + prefix(mu_bar, s).
    std::size_t best_t = 0;
    Rat best_val;
    bool have = false;
    for (std::size_t t = 0; t <= m; ++t) {
        Rat val(0);
        for (std::size_t i = 0; i < t; ++i)
            val += mu_GL[i];
        for (std::size_t i = 0; i < m - t; ++i)
            val += mu_bar[i];
        if (!have || val > best_val) {
            best_val = val;
            best_t = t;
            have = true;
        }
    }
    ExponentVector out(xi_minus);
    for (std::size_t i = 0; i < best_t; ++i)
        out.push_back(mu_GL[i]);
    for (std::size_t i = 0; i < m - best_t; ++i)
        out.push_back(mu_bar[i]);
    return sorted_decreasing(std::move(out));
}

} // namespace arthur
