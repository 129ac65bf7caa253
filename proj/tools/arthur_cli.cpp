/*
 * arthur-kit: combinatorial skeleton of Arthur packets for classical and
 * similitude groups over a p-adic field.
 *
 * Distributed under the MIT license; see LICENSE at the repository root.
 *
 * Batch front end.  Verbs: classify, centralizer, packet, expand, endoscopy,
 * multiplicity, verify.  JSON on stdout (or --format=table); exit codes:
 * 0 success, 1 verification failure, 2 invalid input.
 */

#include "arthur/endoscopy.hpp"
#include "arthur/exponents.hpp"
#include "arthur/groth.hpp"
#include "arthur/json_io.hpp"
#include "arthur/packet.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>

namespace fs = std::filesystem;
using namespace arthur;

namespace {

Json load_json(const std::string &path) {
    std::ifstream in(path);
    require(in.good(), "SchemaError", "cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception &e) {
        fail("SchemaError", "malformed JSON in '" + path + "': " + e.what());
    }
    return j;
}

ArthurParameter load_parameter(const std::string &path) {
    ArthurParameter psi = parameter_from_json(load_json(path));
    validate(psi);
    return psi;
}

SignVector parse_signs(const std::string &s) {
    SignVector out;
    for (char c : s) {
        if (c == '+')
            out.push_back(+1);
        else if (c == '-')
            out.push_back(-1);
        else
            fail("SchemaError", "sign strings use only '+' and '-'");
    }
    return out;
}

// Deterministic JSON rendering (sorted keys, fixed indentation).
void emit(const Json &j, const std::string &format) {
    if (format == "table") {
        // Flat two-column view of the JSON tree.
        std::function<void(const Json &, const std::string &)> walk =
            [&](const Json &node, const std::string &prefix) {
                if (node.is_object()) {
                    for (auto it = node.begin(); it != node.end(); ++it)
                        walk(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
                } else if (node.is_array()) {
                    std::size_t i = 0;
                    for (const auto &v : node)
                        walk(v, prefix + "[" + std::to_string(i++) + "]");
                } else {
                    std::cout << prefix << "\t" << node.dump() << "\n";
                }
            };
        walk(j, "");
    } else {
        std::cout << j.dump(2) << "\n";
    }
}

Json element_json(const ArthurParameter &psi, const PacketElement &el, bool with_fiber) {
    Json members = Json::array();
    for (const auto &m : el.members)
        members.push_back(label_to_json(m));
    Json out = {{"l", el.rep.l},
                {"eta", el.rep.eta},
                {"members", members},
                {"epsilon", signs_to_json(el.eps.values)},
                {"twist", el.twist_record.str()},
                {"nonvanishing_known", el.nonvanishing_known}};
    if (with_fiber) {
        Json fiber = Json::array();
        for (const auto &sub : restriction(psi, el))
            fiber.push_back({{"l", sub.rep.l},
                             {"eta", sub.rep.eta},
                             {"epsilon", signs_to_json(sub.eps.values)}});
        out["restriction"] = fiber;
    }
    return out;
}

Json sum_json(const FormalSum &sum) {
    Json terms = Json::array();
    for (const auto &[k, e] : sum.entries)
        terms.push_back({{"coefficient", e.coeff},
                         {"term", e.term->key()},
                         {"twist", e.twist.str()}});
    InfChar ic;
    const bool constant = constant_infchar(sum, &ic);
    return {{"terms", terms}, {"constant_infchar", constant}};
}

std::vector<std::string> catalog_files(const std::string &path) {
    std::vector<std::string> files;
    if (fs::is_directory(path)) {
        for (const auto &e : fs::directory_iterator(path))
            if (e.path().extension() == ".json")
                files.push_back(e.path().string());
        std::sort(files.begin(), files.end());
    } else {
        files.push_back(path);
    }
    require(!files.empty(), "SchemaError", "no parameter files under '" + path + "'");
    return files;
}

std::vector<Character> all_characters(const ArthurParameter &psi) {
    return characters(build_centralizer(psi), WhichGroup::S_Sigma0);
}

// ---- verification suites (exit 1 on failure) ----

bool suite_independence(const ArthurParameter &psi) {
    for (const auto &eps : all_characters(psi))
        if (!verify_block_independence(psi, eps))
            return false;
    return true;
}

bool suite_infchar(const ArthurParameter &psi) {
    for (const auto &eps : all_characters(psi))
        if (!constant_infchar(expand_full(psi, eps)))
            return false;
    return true;
}

bool suite_restriction(const ArthurParameter &psi) {
    for (const auto &eps : all_characters(psi))
        if (!verify_restriction(psi, eps))
            return false;
    return true;
}

bool suite_reconciliation(const ArthurParameter &psi) {
    for (const auto &eps : all_characters(psi))
        if (resolved_count(psi, eps, frozen_convention()) !=
            (long long)classical_packet(psi, eps).elements.size())
            return false;
    return true;
}

bool suite_roundtrip(const ArthurParameter &psi) {
    const ArthurParameter back = parameter_from_json(parameter_to_json(psi));
    return parameter_to_json(back) == parameter_to_json(psi);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"arthur: combinatorial Arthur-packet toolkit"};
    app.require_subcommand(1);

    std::string input, format = "json", level = "classical", epsilon, epsilon_psi,
                signs, suite = "all";
    int block = -1;
    int m_psi = 1;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("input", input, "parameter JSON file")->required();
        sub->add_option("--format", format)->check(CLI::IsMember({"json", "table"}));
        return sub;
    };

    auto *c_classify = add_common(app.add_subcommand("classify", "classification flags"));
    auto *c_centr = add_common(app.add_subcommand("centralizer", "component group data"));
    auto *c_packet = add_common(app.add_subcommand("packet", "packet enumeration"));
    c_packet->add_option("--level", level)
        ->check(CLI::IsMember({"classical", "similitude", "sigma0"}));
    c_packet->add_option("--epsilon", epsilon, "character as +- string");
    auto *c_expand = add_common(app.add_subcommand("expand", "Grothendieck expansion"));
    c_expand->add_option("--epsilon", epsilon)->required();
    c_expand->add_option("--block", block, "single expansion step at this block");
    auto *c_endo = add_common(app.add_subcommand("endoscopy", "endoscopic decomposition"));
    c_endo->add_option("--s", signs, "semisimple element as +- string")->required();
    auto *c_mult = add_common(app.add_subcommand("multiplicity", "multiplicity formula"));
    c_mult->add_option("--epsilon", epsilon, "character of pi")->required();
    c_mult->add_option("--epsilon-psi", epsilon_psi, "character eps_psi (default trivial)");
    c_mult->add_option("--m-psi", m_psi)->check(CLI::IsMember({1, 2}));
    auto *c_verify = app.add_subcommand("verify", "verification suites");
    c_verify->add_option("input", input, "parameter file or catalog directory")->required();
    c_verify->add_option("--suite", suite)
        ->check(CLI::IsMember({"independence", "infchar", "restriction",
                               "reconciliation", "roundtrip", "all"}));
    c_verify->add_option("--format", format)->check(CLI::IsMember({"json", "table"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_classify->parsed()) {
            const ArthurParameter psi = load_parameter(input);
            emit({{"parameter", parameter_to_json(psi)},
                  {"flags", classify_to_json(psi)}},
                 format);
        } else if (c_centr->parsed()) {
            const ArthurParameter psi = load_parameter(input);
            emit(centralizer_to_json(build_centralizer(psi)), format);
        } else if (c_packet->parsed()) {
            const ArthurParameter psi = load_parameter(input);
            Json elems = Json::array();
            std::string lvl = level;
            if (level == "similitude") {
                const Packet p = similitude_packet(psi);
                for (const auto &el : p.elements)
                    elems.push_back(element_json(psi, el, true));
            } else if (level == "classical") {
                require(!epsilon.empty(), "SchemaError",
                        "--epsilon required at level classical");
                const Packet p =
                    classical_packet(psi, Character{parse_signs(epsilon), false});
                for (const auto &el : p.elements)
                    elems.push_back(element_json(psi, el, false));
            } else { // sigma0: all classes over every character
                for (const auto &eps : all_characters(psi))
                    for (const auto &el : classical_packet(psi, eps).elements)
                        elems.push_back(element_json(psi, el, false));
            }
            emit({{"parameter", parameter_to_json(psi)},
                  {"level", lvl},
                  {"size", elems.size()},
                  {"elements", elems}},
                 format);
        } else if (c_expand->parsed()) {
            const ArthurParameter psi = load_parameter(input);
            const Character eps{parse_signs(epsilon), false};
            const FormalSum sum = block >= 0
                                      ? expand_step(psi, eps, (std::size_t)block)
                                      : expand_full(psi, eps);
            emit(sum_json(sum), format);
        } else if (c_endo->parsed()) {
            const ArthurParameter psi = load_parameter(input);
            const EndoscopicDatum d = decompose(psi, parse_signs(signs));
            auto fac = [&](const EndoscopicFactor &f) {
                return Json{{"parameter", parameter_to_json(f.psi)},
                            {"N", f.N},
                            {"eta_factor", f.eta_factor},
                            {"twisted", f.twisted}};
            };
            emit({{"plus", fac(d.plus)}, {"minus", fac(d.minus)}}, format);
        } else if (c_mult->parsed()) {
            const ArthurParameter psi = load_parameter(input);
            const CentralizerDescriptor desc = build_centralizer(psi);
            const Character pi{parse_signs(epsilon), desc.so_even};
            Character epsp{SignVector(desc.k(), +1), desc.so_even};
            if (!epsilon_psi.empty())
                epsp.values = parse_signs(epsilon_psi);
            emit({{"multiplicity", multiplicity(desc, pi, epsp, m_psi)}}, format);
        } else if (c_verify->parsed()) {
            Json results = Json::array();
            bool ok = true;
            for (const auto &file : catalog_files(input)) {
                const ArthurParameter psi = load_parameter(file);
                Json r = {{"file", file}};
                auto run = [&](const std::string &name, bool (*fn)(const ArthurParameter &)) {
                    if (suite != "all" && suite != name)
                        return;
                    const bool pass = fn(psi);
                    r[name] = pass;
                    ok = ok && pass;
                };
                run("independence", suite_independence);
                run("infchar", suite_infchar);
                run("restriction", suite_restriction);
                run("reconciliation", suite_reconciliation);
                run("roundtrip", suite_roundtrip);
                results.push_back(r);
            }
            emit({{"suite", suite}, {"pass", ok}, {"results", results}}, format);
            return ok ? 0 : 1;
        }
    } catch (const Error &e) {
        std::cout << Json{{"error", {{"code", e.code()}, {"message", e.what()}}}}.dump(2)
                  << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cout << Json{{"error", {{"code", "InvalidInput"}, {"message", e.what()}}}}
                         .dump(2)
                  << "\n";
        return 2;
    }
    return 0;
}
