#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "polyfrac/matrix.hpp"
#include "polyfrac/poly_io.hpp"

namespace polyfrac {

/// {"vars": [...], "n": n, "entries": [[row of polynomial strings], ...]}
inline nlohmann::ordered_json matrix_to_json(const PolyMatrix& m) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (std::size_t j = 0; j < m.size(); ++j) row.push_back(to_string(m(i, j)));
        rows.push_back(row);
    }
    return {{"vars", m.ring()->vars}, {"n", m.size()}, {"entries", rows}};
}

inline PolyMatrix matrix_from_json(const nlohmann::json& j) {
    try {
        if (!j.is_object()) throw ParseError("matrix JSON must be an object");
        if (!j.contains("vars") || !j.contains("entries")) throw ParseError("matrix JSON needs \"vars\" and \"entries\"");
        auto vars = j.at("vars").get<std::vector<std::string>>();
        const auto& rows = j.at("entries");
        if (!rows.is_array() || rows.empty()) throw ParseError("\"entries\" must be a non-empty array of rows");
        std::size_t n = rows.size();
        if (j.contains("n") && j.at("n").get<std::size_t>() != n) throw ParseError("\"n\" disagrees with the entries");
        auto ring = make_ring(vars);
        PolyMatrix m(ring, n);
        for (std::size_t i = 0; i < n; ++i) {
            if (!rows[i].is_array() || rows[i].size() != n) throw ParseError("row " + std::to_string(i) + " is not of length n");
            for (std::size_t k = 0; k < n; ++k) {
                const auto& e = rows[i][k];
                if (e.is_number_integer()) m(i, k) = parse_poly(std::to_string(e.get<long long>()), ring);
                else if (e.is_string()) m(i, k) = parse_poly(e.get<std::string>(), ring);
                else throw ParseError("entry (" + std::to_string(i) + "," + std::to_string(k) + ") is not a polynomial");
            }
        }
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad matrix JSON: ") + e.what());
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
}

inline PolyMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return matrix_from_json(j);
}

} // namespace polyfrac
