#pragma once

// JSON interchange for expansions (schema "dtower.qexpansion/1", see
// docs/qexpansion-schema.md). Rationals are "p/q" strings, exponent vectors
// arrays of doubled integers, q-exponents integers in 1/24 units.

#include <string>

#include "json.hpp"
#include "dtower/qexpansion.hpp"

namespace dtower {

inline constexpr const char* kSchemaId = "dtower.qexpansion/1";

nlohmann::json to_json(const QExpansion& a);
/// Throws std::invalid_argument on schema violations.
QExpansion from_json(const nlohmann::json& j);

std::string serialize(const QExpansion& a);
QExpansion deserialize(const std::string& text);

}  // namespace dtower
