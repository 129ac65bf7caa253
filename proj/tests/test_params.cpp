/*
 * arthur-kit: combinatorial skeleton of Arthur packets for classical and
 * similitude groups over a p-adic field.
 *
 * Distributed under the MIT license; see LICENSE at the repository root.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace arthur;
using namespace arthur::testing;

TEST_CASE("block coordinate conversions") {
    const JordanBlock b51 = block_from_ab(triv(), 5, 1);
    CHECK(b51.A() == Rat(2));
    CHECK(b51.B() == Rat(2));
    CHECK(b51.zeta == +1);

    const JordanBlock b22 = block_from_ab(triv(), 2, 2);
    CHECK(b22.A() == Rat(1));
    CHECK(b22.B() == Rat(0));
    CHECK(b22.zeta == +1); // convention at a = b

    const JordanBlock b14 = block_from_ab(triv(), 1, 4);
    CHECK(b14.zeta == -1);
    const JordanBlock back = block_from_ABz(triv(), b14.A(), b14.B(), b14.zeta);
    CHECK(back == b14);

    CHECK_THROWS_AS(block_from_ab(triv(), 5, 1, -1), Error); // ZetaConflict
    CHECK(block_from_ab(triv(), 3, 3, -1).zeta == -1);       // allowed at a = b
}

TEST_CASE("block parity and eta") {
    CHECK(block_parity(block_from_ab(triv(), 2, 2)) == Parity::orthogonal);
    CHECK(block_parity(block_from_ab(triv(), 3, 2)) == Parity::symplectic);
    CHECK(block_from_ab(chi(), 3, 1).eta_block() == "chi");
    CHECK(block_from_ab(chi(), 2, 2).eta_block() == "1");
    CHECK(block_from_ab(chi(), 3, 1).n_block() == 3);
}

TEST_CASE("normalization order and merging") {
    const ArthurParameter psi = psi_C();
    REQUIRE(psi.blocks.size() == 3);
    CHECK(psi.blocks[0].block.rho.name == "1");
    CHECK(psi.blocks[1].block == block_from_ab(chi(), 1, 1));
    CHECK(psi.blocks[2].block == block_from_ab(chi(), 3, 1));

    ArthurParameter merged = psi;
    merged.blocks.push_back({block_from_ab(chi(), 3, 1), 1});
    merged.normalize();
    CHECK(merged.blocks.size() == 3);
    CHECK(merged.blocks[2].mult == 2);
    CHECK(merged.expanded().size() == 4);
}

TEST_CASE("validation errors") {
    ArthurParameter bad = psi_B();
    bad.group.rank = 5; // dimension 9 != 11
    CHECK_THROWS_AS(validate(bad), Error);

    // Non-good block with odd multiplicity cannot split off a dual half.
    ArthurParameter odd = make_parameter(
        GroupDescriptor{Family::Sp, 5, "1"},
        {{block_from_ab(triv(), 3, 2), 1}, {block_from_ab(triv(), 5, 1), 1}});
    CHECK_THROWS_AS(split_good_parity(odd), Error);
}

TEST_CASE("classification flags") {
    const ClassifyFlags fB = classify(psi_B());
    CHECK(fB.good_parity);
    CHECK(fB.ddr);
    CHECK(!fB.tempered);
    CHECK(!fB.discrete);
    CHECK(!fB.elementary);

    const ClassifyFlags fC = classify(psi_C());
    CHECK(fC.good_parity);
    CHECK(fC.tempered);
    CHECK(fC.discrete);
    CHECK(fC.elementary);
    CHECK(fC.ddr);

    // Overlapping per-rho segments destroy the discrete diagonal restriction.
    ArthurParameter overlap = make_parameter(
        GroupDescriptor{Family::Sp, 3, "1"},
        {{block_from_ab(triv(), 3, 1), 1}, {block_from_ab(triv(), 1, 3), 1},
         {block_from_ab(triv(), 1, 1), 1}});
    validate(overlap);
    CHECK(!classify(overlap).ddr);
}

TEST_CASE("diagonal restriction (Clebsch-Gordan)") {
    const ArthurParameter d = diagonal_restriction(psi_B());
    // (1,2,2) -> (1,3,1) + (1,1,1); (1,5,1) -> (1,5,1).
    std::multiset<std::pair<int, int>> got;
    for (const auto &b : d.expanded())
        got.insert({b.a, b.b});
    CHECK(got == std::multiset<std::pair<int, int>>{{1, 1}, {3, 1}, {5, 1}});
}

TEST_CASE("L-parameter of psi and infinitesimal character") {
    const LParameter phi = phi_of_psi(psi_B());
    // (1,5,1) -> x = 0; (1,2,2) -> x = +-1/2.
    std::multiset<Rat> xs;
    for (const auto &e : phi.entries)
        xs.insert(e.x);
    CHECK(xs == std::multiset<Rat>{Rat(-1, 2), Rat(0), Rat(1, 2)});
    CHECK(phi.total_dim() == 9);
    CHECK(inf_char(psi_B()) == inf_char(phi));
}

TEST_CASE("sharp dual is an involution") {
    const ArthurParameter psi = psi_B();
    const ArthurParameter d = sharp_dual(psi, {"1"});
    std::multiset<std::pair<int, int>> got;
    for (const auto &b : d.expanded())
        got.insert({b.a, b.b});
    CHECK(got == std::multiset<std::pair<int, int>>{{2, 2}, {1, 5}});
    const ArthurParameter dd = sharp_dual(d, {"1"});
    CHECK(dd.expanded() == psi.expanded());
    // Relabeling an untouched rho set is the identity.
    CHECK(sharp_dual(psi, {}).expanded() == psi.expanded());
}

TEST_CASE("admissible orders and dominating parameters") {
    ArthurParameter overlap = make_parameter(
        GroupDescriptor{Family::Sp, 3, "1"},
        {{block_from_ab(triv(), 3, 1), 1}, {block_from_ab(triv(), 1, 3), 1},
         {block_from_ab(triv(), 1, 1), 1}});
    validate(overlap);
    const AdmissibleOrder order = natural_order(overlap);
    CHECK(is_admissible(overlap, order));

    const DominatingResult dom = dominating(overlap, order);
    CHECK(classify(dom.psi_gg).ddr);
    CHECK(dom.shifts.size() == overlap.expanded().size());
    long long moved = 0;
    for (long long t : dom.shifts) {
        CHECK(t >= 0);
        moved += t;
    }
    CHECK(moved > 0); // the overlap forces at least one shift
}

TEST_CASE("shipped example files parse and validate") {
    CHECK(load_parameter_file("examples/psi_A.json").total_dim() == 4);
    CHECK(load_parameter_file("examples/psi_B.json").total_dim() == 9);
    CHECK(load_parameter_file("examples/psi_C.json").total_dim() == 5);
    for (const auto &rel : catalog_relpaths()) {
        const ArthurParameter psi = load_parameter_file(rel);
        const ClassifyFlags f = classify(psi);
        CHECK(f.ddr);
        int reducible = 0;
        for (const auto &b : psi.expanded())
            if (b.A() > b.B())
                ++reducible;
        CHECK(reducible >= 2);
    }
}
