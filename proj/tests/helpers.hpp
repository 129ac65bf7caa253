/*
 * arthur-kit: combinatorial skeleton of Arthur packets for classical and
 * similitude groups over a p-adic field.
 *
 * Distributed under the MIT license; see LICENSE at the repository root.
 */

/** Shared fixtures for the test binaries. */

#pragma once

#include "arthur/json_io.hpp"
#include "arthur/packet.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

#ifndef ARTHUR_SOURCE_DIR
#define ARTHUR_SOURCE_DIR "."
#endif

namespace arthur::testing {

inline SupercuspidalLabel triv() { return {"1", 1, Parity::orthogonal, "1"}; }
inline SupercuspidalLabel chi() { return {"chi", 1, Parity::orthogonal, "chi"}; }

// Sp(8): (1,2,2) + (1,5,1); one reducible and one elementary block.
inline ArthurParameter psi_B() {
    ArthurParameter psi = make_parameter(
        GroupDescriptor{Family::Sp, 4, "1"},
        {{block_from_ab(triv(), 2, 2), 1}, {block_from_ab(triv(), 5, 1), 1}});
    validate(psi);
    return psi;
}

// Sp(4): (chi,3,1) + (chi,1,1) + (1,1,1); elementary, discrete.
inline ArthurParameter psi_C() {
    ArthurParameter psi = make_parameter(GroupDescriptor{Family::Sp, 2, "1"},
                                         {{block_from_ab(chi(), 3, 1), 1},
                                          {block_from_ab(chi(), 1, 1), 1},
                                          {block_from_ab(triv(), 1, 1), 1}});
    validate(psi);
    return psi;
}

// Split SO(4): (1,3,1) + (1,1,1); elementary, discrete.
inline ArthurParameter psi_A() {
    ArthurParameter psi = make_parameter(
        GroupDescriptor{Family::SO_even, 2, "1"},
        {{block_from_ab(triv(), 3, 1), 1}, {block_from_ab(triv(), 1, 1), 1}});
    validate(psi);
    return psi;
}

inline std::string source_path(const std::string &rel) {
    return std::string(ARTHUR_SOURCE_DIR) + "/" + rel;
}

inline ArthurParameter load_parameter_file(const std::string &rel) {
    std::ifstream in(source_path(rel));
    require(in.good(), "SchemaError", "cannot open " + rel);
    Json j;
    in >> j;
    ArthurParameter psi = parameter_from_json(j);
    validate(psi);
    return psi;
}

inline std::vector<std::string> catalog_relpaths() {
    std::vector<std::string> out;
    for (const auto &e :
         std::filesystem::directory_iterator(source_path("catalog")))
        if (e.path().extension() == ".json")
            out.push_back("catalog/" + e.path().filename().string());
    std::sort(out.begin(), out.end());
    return out;
}

// Deterministic RNG for frozen randomized tests.
inline std::mt19937 rng(unsigned seed) { return std::mt19937(seed); }

/**
 * Random elementary good-parity multiplicity-free parameter with at most
 * max_blocks Jordan blocks over the labels {1, chi}.  The family is forced by
 * the total dimension parity and the discriminant by the block product.
 */
inline ArthurParameter random_elementary(std::mt19937 &gen, int max_blocks) {
    std::uniform_int_distribution<int> nblocks(1, max_blocks);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> cval(0, 3);
    for (;;) {
        const int k = nblocks(gen);
        // Dedup by (rho, C): (rho,2C+1,1) and (rho,1,2C+1) collide in the
        // diagonal restriction, which would break discreteness.
        std::set<std::pair<std::string, int>> seen;
        std::vector<ArthurParameter::Entry> entries;
        for (int i = 0; i < k; ++i) {
            const SupercuspidalLabel rho = coin(gen) ? chi() : triv();
            const int C = cval(gen);
            const int a = coin(gen) ? 2 * C + 1 : 1;
            const int b = a == 1 ? 2 * C + 1 : 1;
            if (!seen.insert({rho.name, C}).second)
                continue;
            entries.push_back({block_from_ab(rho, a, b), 1});
        }
        if (entries.empty())
            continue;
        ArthurParameter psi;
        psi.blocks = std::move(entries);
        psi.normalize();
        long long n = psi.total_dim();
        std::string disc = kTrivialTag;
        for (const auto &e : psi.blocks)
            disc = tag_mul(disc, e.block.eta_block());
        if (n % 2 == 1) {
            if (disc != kTrivialTag || n < 3)
                continue;
            psi.group = {Family::Sp, (int)((n - 1) / 2), kTrivialTag};
        } else {
            if (n < 2)
                continue;
            psi.group = {Family::SO_even, (int)(n / 2), disc};
        }
        validate(psi);
        return psi;
    }
}

} // namespace arthur::testing
