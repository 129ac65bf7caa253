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

TEST_CASE("label ranges and characters") {
    const ArthurParameter psi = psi_B();
    const auto idx = label_index(psi);
    REQUIRE(idx.size() == 2);
    CHECK(label_l_max(idx[0]) == 1); // (1,2,2): floor(min(2,2)/2)
    CHECK(label_l_max(idx[1]) == 0); // (1,5,1)
    CHECK(enumerate_labels(psi).size() == 8); // (2 values of l) x 2 x 2 etas

    // eps_{l,eta} per block: eta^{min(a,b)} * (-1)^{min(a,b)/2 + l}.
    const Character e = epsilon_of_label(psi, PacketLabel{{0, 0}, {-1, +1}});
    CHECK(e.values == SignVector{-1, +1});
    const Character e2 = epsilon_of_label(psi, PacketLabel{{1, 0}, {-1, +1}});
    CHECK(e2.values == SignVector{+1, +1});
}

TEST_CASE("classical and similitude packets of psi_B") {
    const ArthurParameter psi = psi_B();
    const Packet p_pp = classical_packet(psi, Character{{+1, +1}, false});
    CHECK(p_pp.elements.size() == 1);
    const Packet p_mm = classical_packet(psi, Character{{-1, -1}, false});
    CHECK(p_mm.elements.size() == 2);
    // The other two characters are not trivial on s_0.
    CHECK_THROWS_AS(classical_packet(psi, Character{{+1, -1}, false}), Error);

    const Packet sim = similitude_packet(psi);
    CHECK(sim.elements.size() == 3);
    for (const auto &el : sim.elements)
        CHECK(restriction(psi, el).size() == 1);
}

TEST_CASE("classical and similitude packets of psi_C") {
    const ArthurParameter psi = psi_C();
    const CentralizerDescriptor d = build_centralizer(psi);
    std::size_t total = 0;
    for (const auto &eps : characters(d, WhichGroup::S_Sigma0))
        total += classical_packet(psi, eps).elements.size();
    CHECK(total == 4);

    const Packet sim = similitude_packet(psi);
    CHECK(sim.elements.size() == 2);
    std::size_t covered = 0;
    for (const auto &el : sim.elements) {
        const auto fiber = restriction(psi, el);
        CHECK(fiber.size() == 2);
        covered += fiber.size();
    }
    CHECK(covered == total);
}

TEST_CASE("elementary parameters: classes match the character count") {
    auto gen = rng(424242);
    for (int trial = 0; trial < 10; ++trial) {
        const ArthurParameter psi = random_elementary(gen, 5);
        CAPTURE(trial);
        REQUIRE(classify(psi).elementary);
        const CentralizerDescriptor d = build_centralizer(psi);
        std::size_t classes = 0;
        for (const auto &eps : characters(d, WhichGroup::S_Sigma0))
            classes += classical_packet(psi, eps).elements.size();
        CHECK(classes == characters(d, WhichGroup::S_Sigma0).size());
    }
}

TEST_CASE("equivalence levels are nested") {
    const ArthurParameter psi = psi_B();
    for (const auto &a : enumerate_labels(psi))
        for (const auto &b : enumerate_labels(psi)) {
            if (equivalent(psi, a, b, EqLevel::Sigma0))
                CHECK(equivalent(psi, a, b, EqLevel::Gtilde_Sigma0));
            if (equivalent(psi, a, b, EqLevel::Gtilde_Sigma0))
                CHECK(equivalent(psi, a, b, EqLevel::Gtilde));
        }
}

TEST_CASE("elementary continuation") {
    const ArthurParameter psi = psi_B();
    // (1,2,2) with l=0, eta=+1 continues to (1,C,C) for C in [0,1] with
    // alternating signs; (1,5,1) is already elementary.
    const ElementaryContinuation ec =
        elementary_continuation(psi, PacketLabel{{0, 0}, {+1, +1}});
    REQUIRE(ec.blocks.size() == 3);
    CHECK(ec.signs == std::vector<int>{+1, -1, +1});
    CHECK(classify(ec.param).elementary);
    // l=1 swallows the whole (1,2,2) segment: only (1,5,1) remains.
    const ElementaryContinuation ec1 =
        elementary_continuation(psi, PacketLabel{{1, 0}, {+1, +1}});
    CHECK(ec1.blocks.size() == 1);
}

TEST_CASE("involution relabeling is a fiber-preserving involution") {
    for (const ArthurParameter &psi : {psi_B(), psi_C(), psi_A()}) {
        CHECK(sharp_dual(sharp_dual(psi, {"1"}), {"1"}).expanded() == psi.expanded());

        const Packet sim = similitude_packet(psi);
        const Packet once = involution_relabel(sim, {"1"});
        const Packet twice = involution_relabel(once, {"1"});
        REQUIRE(twice.elements.size() == sim.elements.size());
        for (std::size_t i = 0; i < sim.elements.size(); ++i) {
            CHECK(twice.elements[i].rep == sim.elements[i].rep);
            CHECK(twice.elements[i].eps == sim.elements[i].eps);
            // Restriction fibers have the same size before and after.
            CHECK(restriction(once.psi, once.elements[i]).size() ==
                  restriction(psi, sim.elements[i]).size());
        }
    }
}

TEST_CASE("stable sums") {
    const ArthurParameter psi = psi_B();
    const Packet p = classical_packet(psi, Character{{-1, -1}, false});
    const std::vector<int> at_one = stable_sum(p, SignVector{+1, +1});
    REQUIRE(at_one.size() == 2);
    for (int c : at_one)
        CHECK((c == 1 || c == -1));
    // <eps, s s_psi> with s = s_psi gives <eps, 1> = +1 everywhere.
    const CentralizerDescriptor d = build_centralizer(psi);
    for (int c : stable_sum(p, s_psi_vector(d)))
        CHECK(c == +1);
}

TEST_CASE("L-packet sublabels") {
    const ArthurParameter psi = psi_B();
    const auto subs = l_packet_sublabels(psi);
    CHECK(!subs.empty());
    for (const auto &el : subs)
        CHECK(el.rep.l[0] == label_l_max(label_index(psi)[0]));
}

TEST_CASE("twist recording") {
    const Packet sim = similitude_packet(psi_B());
    const Packet tw = twist(sim, twist_symbol("chi"));
    for (const auto &el : tw.elements)
        CHECK(el.twist_record.str() == "chi");
}
