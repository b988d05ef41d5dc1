// io.hpp
// Matrix files, gamma-grid parsing, fixed-precision number rendering and the sweep CSV.
//
// Matrix file grammar (JSON):
//
//     { "dim": <integer >= 1>, "entries": [[re, im], ...], "comment": <string, optional> }
//
// `entries` holds dim*dim [re, im] pairs in row-major order. No other keys are accepted.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bounds.hpp"
#include "error.hpp"
#include "linalg.hpp"

namespace qgain {

inline ComplexMatrix parse_matrix_json(std::string_view text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ParseError, "at byte " + std::to_string(e.byte) + ": " + e.what(),
                    static_cast<double>(e.byte));
    }
    const auto fail = [](const std::string& where, const std::string& what) -> Error {
        return Error(ErrorKind::ParseError, "at " + where + ": " + what);
    };

    if (!doc.is_object()) throw fail("/", "expected an object with \"dim\" and \"entries\"");
    for (const auto& [key, _] : doc.items()) {
        if (key != "dim" && key != "entries" && key != "comment") throw fail("/" + key, "unknown key");
    }
    if (!doc.contains("dim")) throw fail("/dim", "missing");
    if (!doc.contains("entries")) throw fail("/entries", "missing");
    if (doc.contains("comment") && !doc["comment"].is_string()) throw fail("/comment", "expected a string");

    const auto& dim_node = doc["dim"];
    if (!dim_node.is_number_unsigned() || dim_node.get<std::uint64_t>() == 0) {
        throw fail("/dim", "expected a positive integer");
    }
    const auto dim = dim_node.get<std::size_t>();
    if (dim > 64) throw fail("/dim", "dimension " + std::to_string(dim) + " is too large");

    const auto& entries = doc["entries"];
    if (!entries.is_array()) throw fail("/entries", "expected an array of [re, im] pairs");
    if (entries.size() != dim * dim) {
        throw fail("/entries", "expected " + std::to_string(dim * dim) + " pairs, found " + std::to_string(entries.size()));
    }

    std::vector<ComplexScalar> data;
    data.reserve(dim * dim);
    for (std::size_t k = 0; k < entries.size(); ++k) {
        const auto& pair = entries[k];
        const std::string where = "/entries/" + std::to_string(k);
        if (!pair.is_array() || pair.size() != 2) throw fail(where, "expected [re, im]");
        for (std::size_t c = 0; c < 2; ++c) {
            if (!pair[c].is_number()) throw fail(where + "/" + std::to_string(c), "expected a number");
            if (!std::isfinite(pair[c].get<double>())) throw fail(where + "/" + std::to_string(c), "not finite");
        }
        data.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return ComplexMatrix(dim, dim, std::move(data));
}

inline ComplexMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_matrix_json(buf.str());
}

inline std::string matrix_to_json(const ComplexMatrix& m, const std::string& comment = {}) {
    nlohmann::ordered_json doc;
    if (!comment.empty()) doc["comment"] = comment;
    doc["dim"] = m.rows();
    auto entries = nlohmann::ordered_json::array();
    for (const auto& z : m.data()) entries.push_back({z.real(), z.imag()});
    doc["entries"] = std::move(entries);
    return doc.dump(2) + "\n";
}

// Twelve significant digits with trailing zeros kept: 0.693147180560, 1.09861228867.
// Zero renders as 0.000000000000; magnitudes outside [1e-4, 1e12) use scientific notation.
// Fixed notation, 12 significant digits, never more than 12 decimals; residue below 5e-13 prints as zero.
inline std::string format_sig12(double v) {
    if (v == 0.0) return "0.000000000000";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    const int exponent = std::atoi(std::strchr(buf, 'e') + 1);
    std::snprintf(buf, sizeof buf, "%.*f", std::clamp(11 - exponent, 0, 12), v);
    std::string out = buf;
    if (out.starts_with('-') && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
    return out;
}

// "start:end:step" or a comma-separated list. Returned sorted ascending without duplicates.
inline std::vector<double> parse_gamma_grid(std::string_view spec) {
    const auto parse_number = [&](std::string_view token) {
        std::string t(token);
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (t.empty() || used != t.size() || !std::isfinite(v)) {
            throw Error(ErrorKind::ParseError, "bad number '" + t + "' in gamma grid '" + std::string(spec) + "'");
        }
        return v;
    };

    std::vector<double> grid;
    if (spec.find(':') != std::string_view::npos) {
        std::vector<double> parts;
        std::size_t pos = 0;
        while (true) {
            const auto next = spec.find(':', pos);
            parts.push_back(parse_number(spec.substr(pos, next - pos)));
            if (next == std::string_view::npos) break;
            pos = next + 1;
        }
        if (parts.size() != 3) {
            throw Error(ErrorKind::ParseError, "range grid must be start:end:step, got '" + std::string(spec) + "'");
        }
        const double start = parts[0], end = parts[1], step = parts[2];
        if (!(step > 0) || end < start) {
            throw Error(ErrorKind::ParseError, "range grid needs step > 0 and end >= start");
        }
        const auto count = static_cast<std::size_t>(std::floor((end - start) / step + 1e-9)) + 1;
        if (count > 1'000'000) throw Error(ErrorKind::ParseError, "range grid has too many points");
        for (std::size_t i = 0; i < count; ++i) {
            double g = start + static_cast<double>(i) * step;
            if (std::abs(g - end) <= 1e-9 * step) g = end;
            grid.push_back(g);
        }
    } else {
        std::size_t pos = 0;
        while (true) {
            const auto next = spec.find(',', pos);
            grid.push_back(parse_number(spec.substr(pos, next - pos)));
            if (next == std::string_view::npos) break;
            pos = next + 1;
        }
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

inline constexpr std::string_view kSweepCsvHeader = "gamma,entropy_in,entropy_out,lhs_gain,rhs_bound,slack";

inline std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::string out(kSweepCsvHeader);
    out += '\n';
    for (const auto& r : rows) {
        out += format_sig12(r.gamma) + ',' + format_sig12(r.entropy_in) + ',' + format_sig12(r.entropy_out) + ',' +
               format_sig12(r.lhs) + ',' + format_sig12(r.rhs) + ',' + format_sig12(r.slack) + '\n';
    }
    return out;
}

} // namespace qgain
