// matrix_io.hpp - JSON matrix files
//
// { "dim": n, "entries": [[ [re, im], ... ], ...] }, row-major. A bare number
// is accepted in place of [re, im] for real entries.

#pragma once

#include "qfi/hilbert.hpp"

#include <json.hpp>

#include <string>

namespace qfi {

HermitianOperator matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const Matrix& m);

// Throws ConfigError if the file cannot be opened or parsed.
HermitianOperator read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const Matrix& m);

} // namespace qfi
