/*
 * arthur-kit: combinatorial skeleton of Arthur packets for classical and
 * similitude groups over a p-adic field.
 *
 * Distributed under the MIT license; see LICENSE at the repository root.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

#include <cstdio>

using namespace arthur;
using namespace arthur::testing;

#ifndef ARTHUR_CLI_PATH
#define ARTHUR_CLI_PATH "./arthur"
#endif

namespace {

std::pair<int, std::string> run_cli(const std::string &args) {
    const std::string cmd = std::string(ARTHUR_CLI_PATH) + " " + args + " 2>&1";
    FILE *p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0)
        out.append(buf, n);
    const int status = pclose(p);
    return {WEXITSTATUS(status), out};
}

} // namespace

TEST_CASE("parameter JSON round-trip over all shipped files") {
    std::vector<std::string> files = {"examples/psi_A.json", "examples/psi_B.json",
                                      "examples/psi_C.json"};
    for (const auto &rel : catalog_relpaths())
        files.push_back(rel);
    for (const auto &rel : files) {
        CAPTURE(rel);
        const ArthurParameter psi = load_parameter_file(rel);
        const Json j = parameter_to_json(psi);
        const ArthurParameter back = parameter_from_json(j);
        CHECK(parameter_to_json(back) == j);
        CHECK(back.expanded() == psi.expanded());
        CHECK(back.group == psi.group);
    }
}

TEST_CASE("schema errors") {
    CHECK_THROWS_AS(parameter_from_json(Json::object()), Error);
    CHECK_THROWS_AS(parameter_from_json(Json{{"group", {{"family", "GL"}}}}), Error);
    Json ok = parameter_to_json(psi_B());
    Json bad = ok;
    bad["blocks"][0].erase("a");
    CHECK_THROWS_AS(parameter_from_json(bad), Error);
    Json bad2 = ok;
    bad2["blocks"][0]["rho"] = "nope";
    CHECK_THROWS_AS(parameter_from_json(bad2), Error);
}

TEST_CASE("sign serialization") {
    const SignVector s{+1, -1, -1};
    CHECK(signs_from_json(signs_to_json(s)) == s);
    CHECK_THROWS_AS(signs_from_json(Json::array({1, 0})), Error);
}

TEST_CASE("result serializers carry the advertised fields") {
    const ArthurParameter psi = psi_B();
    const Json c = classify_to_json(psi);
    for (const char *key : {"good_parity", "tempered", "discrete", "elementary", "ddr"})
        CHECK(c.contains(key));
    const Json z = centralizer_to_json(build_centralizer(psi));
    for (const char *key : {"jordan", "size_S_sigma0", "s0", "eps0",
                            "ker_alpha_order", "x_group", "s_psi"})
        CHECK(z.contains(key));
    const Json p = packet_to_json(similitude_packet(psi));
    CHECK(p["level"] == "similitude");
    CHECK(p["size"] == 3);
    CHECK(p["elements"].size() == 3);
}

TEST_CASE("CLI: deterministic output and exit codes") {
    const std::string example = source_path("examples/psi_B.json");
    const auto [c1, o1] = run_cli("packet " + example + " --level=similitude");
    const auto [c2, o2] = run_cli("packet " + example + " --level=similitude");
    CHECK(c1 == 0);
    CHECK(o1 == o2); // byte-for-byte
    CHECK(o1.find("\"size\": 3") != std::string::npos);

    const auto [c3, o3] = run_cli("classify " + example);
    CHECK(c3 == 0);
    CHECK(Json::parse(o3)["flags"]["ddr"] == true);

    // Invalid input: exit code 2 with a structured error object.
    const auto [c4, o4] = run_cli("classify " + source_path("README.md"));
    CHECK(c4 == 2);
    CHECK(Json::parse(o4).contains("error"));

    const auto [c5, o5] = run_cli("packet " + example + " --epsilon=+-");
    CHECK(c5 == 2); // character not trivial on s_0
    CHECK(Json::parse(o5)["error"]["code"] == "CharacterNotInDual");

    // Verification verb: success on the shipped catalog.
    const auto [c6, o6] = run_cli("verify " + source_path("catalog") +
                                  " --suite=independence");
    CHECK(c6 == 0);
    CHECK(Json::parse(o6)["pass"] == true);
}
