/*
 * arthur-kit: combinatorial skeleton of Arthur packets for classical and
 * similitude groups over a p-adic field.
 *
 * Distributed under the MIT license; see LICENSE at the repository root.
 */

/**
 * JSON (de)serialization of parameters and results.  Input schema:
 *
 *   {
 *     "group":  {"family": "Sp"|"SO_even", "rank": n, "discriminant": tag},
 *     "rho":    [{"name", "dim", "parity", "eta"}, ...],
 *     "blocks": [{"rho": name, "a", "b", "zeta"?, "mult"?}, ...]
 *   }
 */

#pragma once

#include "packet.hpp"

#include <json.hpp>

namespace arthur {

using Json = nlohmann::json;

// Errors: SchemaError for malformed input, plus the parameter-level errors.
ArthurParameter parameter_from_json(const Json &j);

Json parameter_to_json(const ArthurParameter &psi);
Json classify_to_json(const ArthurParameter &psi);
Json centralizer_to_json(const CentralizerDescriptor &desc);
Json packet_to_json(const Packet &packet);
Json label_to_json(const PacketLabel &label);

// Sign list [1,-1,...] <-> Character / SignVector.
SignVector signs_from_json(const Json &j);
Json signs_to_json(const SignVector &s);

} // namespace arthur
