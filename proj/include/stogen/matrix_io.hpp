#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "stogen/sign_pattern.hpp"
#include "stogen/stoch_matrix.hpp"

namespace stogen {

// Matrix files are JSON objects {"dim": n, "entries": [...]} with n*n
// row-major entries. Each entry is a string "p/q", an integer, or a decimal
// string parsed exactly as p/10^k; JSON floats are rejected to keep all
// input exact. Shared by every CLI subcommand.
StochMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::ordered_json matrix_to_json(const StochMatrix& a);

StochMatrix load_matrix_file(const std::string& path);

// Boolean matrices for the monoid subcommand: {"dim": n, "rows": ["110", ...]}.
SignPattern pattern_from_json(const nlohmann::json& j);
nlohmann::ordered_json pattern_to_json(const SignPattern& p);

Rational rational_from_json(const nlohmann::json& j);

}  // namespace stogen
