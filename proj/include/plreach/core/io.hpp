#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "plreach/core/activation.hpp"
#include "plreach/core/linear_spec.hpp"
#include "plreach/core/network.hpp"
#include "plreach/core/rational.hpp"

namespace plreach::io {

using Json = nlohmann::ordered_json;

/// Parses text, converting syntax errors into FormatError with the 1-based
/// line and column of the offending byte.
Json parse_document(std::string_view text);
Json read_document(const std::filesystem::path& path);
std::string read_text(const std::filesystem::path& path);
/// Two-space indented, trailing newline. The output is a pure function of
/// the value, so equal values serialize to identical bytes.
std::string dump(const Json& doc);
void write_text(const std::filesystem::path& path, std::string_view text);

// Every *_from_json takes the JSON-pointer-style location of `j` so schema
// errors can name the offending field.

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j, const std::string& at = "");

Json to_json(const Activation& act);
Activation activation_from_json(const Json& j, const std::string& at = "");

/// {"inputs": n, "layers": [{"weights": [[..]], "biases": [..],
///  "activations": [..]}]}
Json to_json(const Network& net);
Network network_from_json(const Json& j, const std::string& at = "");

/// {"vars": n, "constraints": [{"coeffs": [..], "cmp": "<=", "rhs": ".."}]}
/// Parsing also accepts ">=" and ">" and stores their negations.
Json to_json(const LinearSpec& spec);
LinearSpec spec_from_json(const Json& j, const std::string& at = "");

/// {"network": .., "input_spec": .., "output_spec": ..}
Json to_json(const ReachInstance& inst);
ReachInstance instance_from_json(const Json& j, const std::string& at = "");

/// {"first": network, "second": network}
Json to_json(const NetworkPair& pair);
NetworkPair pair_from_json(const Json& j, const std::string& at = "");

}  // namespace plreach::io
