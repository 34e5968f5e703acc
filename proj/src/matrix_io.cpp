#include "qfi/matrix_io.hpp"

#include "qfi/errors.hpp"

#include <fstream>

namespace qfi {

namespace {

cplx entry_from_json(const nlohmann::json& e) {
    if (e.is_number()) return {e.get<double>(), 0.0};
    if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        return {e[0].get<double>(), e[1].get<double>()};
    }
    throw ValidationError("matrix entry must be a number or [re, im]");
}

} // namespace

HermitianOperator matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
        throw ValidationError("matrix JSON needs fields 'dim' and 'entries'");
    }
    if (!j["dim"].is_number_integer() || j["dim"].get<long>() < 1) {
        throw ValidationError("matrix JSON: 'dim' must be a positive integer");
    }
    const auto n = j["dim"].get<Eigen::Index>();
    const auto& rows = j["entries"];
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n) {
        throw DimensionMismatch("matrix JSON: 'entries' must have 'dim' rows");
    }
    Matrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const auto& row = rows[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
            throw DimensionMismatch("matrix JSON: row " + std::to_string(r) + " must have 'dim' entries");
        }
        for (Eigen::Index c = 0; c < n; ++c) m(r, c) = entry_from_json(row[static_cast<std::size_t>(c)]);
    }
    return HermitianOperator(std::move(m));
}

nlohmann::json matrix_to_json(const Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return {{"dim", m.rows()}, {"entries", std::move(rows)}};
}

HermitianOperator read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open matrix file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("matrix file '" + path + "': " + e.what());
    }
    try {
        return matrix_from_json(j);
    } catch (const ValidationError& e) {
        throw ConfigError("matrix file '" + path + "': " + e.what());
    }
}

void write_matrix_file(const std::string& path, const Matrix& m) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write matrix file '" + path + "'");
    out << matrix_to_json(m).dump() << '\n';
}

} // namespace qfi
