/*
 * arthur-kit: combinatorial skeleton of Arthur packets for classical and
 * similitude groups over a p-adic field.
 *
 * Distributed under the MIT license; see LICENSE at the repository root.
 */

/**
 * Python bindings.  Parameters are passed as JSON strings in the same schema
 * the CLI accepts; results come back as JSON strings, so the Python side can
 * stay dependency-free (json.loads on the way out).
 */

#include "arthur/endoscopy.hpp"
#include "arthur/groth.hpp"
#include "arthur/json_io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace arthur;

namespace {

ArthurParameter param_of(const std::string &text) {
    ArthurParameter psi = parameter_from_json(Json::parse(text));
    validate(psi);
    return psi;
}

SignVector parse_signs(const std::string &s) {
    SignVector out;
    for (char c : s) {
        require(c == '+' || c == '-', "SchemaError",
                "sign strings use only '+' and '-'");
        out.push_back(c == '+' ? +1 : -1);
    }
    return out;
}

std::string dump(const Json &j) { return j.dump(2); }

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

} // namespace

PYBIND11_MODULE(_arthur_kit, m) {
    m.doc() = "Combinatorial skeleton of Arthur packets for classical and "
              "similitude p-adic groups";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const Error &e) {
            PyErr_SetString(PyExc_ValueError,
                            ("[" + e.code() + "] " + e.what()).c_str());
        }
    });

    m.def("classify", [](const std::string &param) {
        return dump(classify_to_json(param_of(param)));
    }, py::arg("param"), "Structural flags of a parameter (JSON in, JSON out)");

    m.def("centralizer", [](const std::string &param) {
        return dump(centralizer_to_json(build_centralizer(param_of(param))));
    }, py::arg("param"), "Centralizer component-group data");

    m.def("packet", [](const std::string &param, const std::string &level,
                       const std::string &epsilon) {
        const ArthurParameter psi = param_of(param);
        if (level == "classical") {
            require(!epsilon.empty(), "SchemaError",
                    "epsilon required at level classical");
            return dump(packet_to_json(
                classical_packet(psi, Character{parse_signs(epsilon), false})));
        }
        require(level == "similitude", "SchemaError",
                "level must be 'classical' or 'similitude'");
        return dump(packet_to_json(similitude_packet(psi)));
    }, py::arg("param"), py::arg("level") = "similitude", py::arg("epsilon") = "",
       "Packet at the requested level");

    m.def("expand", [](const std::string &param, const std::string &epsilon,
                       int block) {
        const ArthurParameter psi = param_of(param);
        const Character eps{parse_signs(epsilon), false};
        const FormalSum sum =
            block >= 0 ? expand_step(psi, eps, (std::size_t)block)
                       : expand_full(psi, eps);
        return dump(sum_json(sum));
    }, py::arg("param"), py::arg("epsilon"), py::arg("block") = -1,
       "One-block or full expansion in the twisted Grothendieck group");

    m.def("multiplicity", [](const std::string &param, const std::string &pi,
                             const std::string &eps_psi, int m_psi) {
        const ArthurParameter psi = param_of(param);
        const CentralizerDescriptor desc = build_centralizer(psi);
        const Character char_pi{parse_signs(pi), desc.so_even};
        Character epsp{SignVector(desc.k(), +1), desc.so_even};
        if (!eps_psi.empty())
            epsp.values = parse_signs(eps_psi);
        return multiplicity(desc, char_pi, epsp, m_psi);
    }, py::arg("param"), py::arg("pi"), py::arg("eps_psi") = "",
       py::arg("m_psi") = 1, "Discrete-spectrum multiplicity");

    m.def("verify", [](const std::string &param) {
        const ArthurParameter psi = param_of(param);
        bool ok = true;
        for (const auto &eps :
             characters(build_centralizer(psi), WhichGroup::S_Sigma0)) {
            ok = ok && verify_block_independence(psi, eps);
            InfChar got;
            ok = ok && constant_infchar(expand_full(psi, eps), &got) &&
                 got == inf_char(psi);
            ok = ok && verify_restriction(psi, eps);
            ok = ok && resolved_count(psi, eps, frozen_convention()) ==
                           (long long)classical_packet(psi, eps).elements.size();
        }
        return ok;
    }, py::arg("param"),
       "Run the consistency suites over every character of S^Sigma0");
}
