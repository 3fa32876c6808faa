#pragma once

#include <string>

#include "json.hpp"

#include "finstate/channels.hpp"
#include "finstate/functor.hpp"

namespace finstate {

// JSON wire formats. A complex scalar is [re, im]; a matrix is a row-major
// nested list of complex scalars.
//   System:  {"blocks": [n_1, ..., n_k]}
//   State:   {"system": System, "block_ops": [matrix, ...]}
//   Channel: {"source": System, "target": System, "choi": [[matrix, ...], ...]}
//            (grid indexed [output block][input block]), or the classical
//            shorthand {"stochastic": [[...], ...]}.
// Doubles survive a round trip exactly (shortest round-trip encoding).

nlohmann::json to_json(const System& system);
System system_from_json(const nlohmann::json& j);

nlohmann::json to_json(const State& state);
State state_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Channel& channel);
Channel channel_from_json(const nlohmann::json& j, bool validate = true);

nlohmann::json to_json(const CheckReport& report);

nlohmann::json to_json(const CptpReport& report);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

/// Parses a JSON document, mapping parse failures to IoError.
nlohmann::json parse_json(const std::string& text);

/// Reads and parses a JSON file; IoError on missing/unreadable files.
nlohmann::json load_json_file(const std::string& path);

/// Writes a JSON document (2-space indent, trailing newline).
void write_json_file(const std::string& path, const nlohmann::json& j);

} // namespace finstate
