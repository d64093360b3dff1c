#include "stogen/matrix_io.hpp"

#include <fstream>

#include "stogen/errors.hpp"

namespace stogen {

Rational rational_from_json(const nlohmann::json& j) {
    if (j.is_string()) return Rational::from_string(j.get<std::string>());
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
    if (j.is_number_float())
        throw ParseError("floating-point matrix entries are not accepted; "
                         "use strings like \"1/3\" or \"0.25\"");
    throw ParseError("matrix entry must be a string or an integer");
}

StochMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
        throw ParseError("matrix JSON must be an object with \"dim\" and \"entries\"");
    if (!j["dim"].is_number_unsigned() && !j["dim"].is_number_integer())
        throw ParseError("\"dim\" must be a positive integer");
    const auto dim = j["dim"].get<long long>();
    if (dim <= 0) throw ParseError("\"dim\" must be a positive integer");
    const std::size_t n = static_cast<std::size_t>(dim);
    const auto& ent = j["entries"];
    if (!ent.is_array() || ent.size() != n * n)
        throw ParseError("\"entries\" must be an array of dim*dim values (row-major)");
    std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n));
    for (std::size_t j2 = 0; j2 < n; ++j2)
        for (std::size_t k = 0; k < n; ++k) rows[j2][k] = rational_from_json(ent[j2 * n + k]);
    return StochMatrix::from_rows(rows);
}

nlohmann::ordered_json matrix_to_json(const StochMatrix& a) {
    nlohmann::ordered_json j;
    j["dim"] = a.dim();
    auto& ent = j["entries"] = nlohmann::ordered_json::array();
    for (std::size_t row = 0; row < a.dim(); ++row)
        for (std::size_t col = 0; col < a.dim(); ++col) ent.push_back(a.at(row, col).str());
    return j;
}

StochMatrix load_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("invalid JSON in '" + path + "': " + e.what());
    }
    return matrix_from_json(j);
}

SignPattern pattern_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("rows"))
        throw ParseError("pattern JSON must be an object with \"dim\" and \"rows\"");
    const auto dim = j["dim"].get<long long>();
    if (dim <= 0) throw ParseError("\"dim\" must be a positive integer");
    const auto& rows = j["rows"];
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(dim))
        throw ParseError("\"rows\" must be an array of dim strings");
    std::vector<std::string> rs;
    for (const auto& r : rows) {
        if (!r.is_string()) throw ParseError("pattern rows must be 0/1 strings");
        rs.push_back(r.get<std::string>());
    }
    return SignPattern::from_rows(rs);
}

nlohmann::ordered_json pattern_to_json(const SignPattern& p) {
    nlohmann::ordered_json j;
    j["dim"] = p.dim();
    j["rows"] = p.row_strings();
    return j;
}

}  // namespace stogen
