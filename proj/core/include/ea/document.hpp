#pragma once

#include <string>
#include <string_view>
#include <variant>

#include <nlohmann/json.hpp>

#include "ea/instances.hpp"

namespace ea {

using Instance = std::variant<FiniteInstance, MatrixInstance>;

// Throws ParseError with "line L, column C" context.
nlohmann::json parse_json_text(std::string_view text);
nlohmann::json read_json_file(const std::string& path);

// Builds an instance from a document. Schema problems raise ParseError.
Instance parse_instance(const nlohmann::json& doc, const InstanceOptions& opts = {});
FiniteInstance parse_finite_instance(const nlohmann::json& doc, const InstanceOptions& opts = {});
const nlohmann::json& to_document(const Instance& inst);

// State on a finite instance from a document value: a list of values (one per
// element), {"weights": [...]}, or "avg".
State parse_state(const FiniteInstance& inst, const nlohmann::json& spec);

// Element address given on a command line: JSON when it parses, else a plain string.
nlohmann::json parse_address_text(std::string_view text);

}  // namespace ea
