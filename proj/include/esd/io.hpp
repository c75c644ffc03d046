// io.hpp
// CSV / JSON serialization of surfaces, curves and boundary reports.
// Numbers are written with six significant digits, '.' as the decimal
// separator, independent of the C++ or C locale.

#pragma once

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "esd/analysis.hpp"
#include "esd/analytic.hpp"

namespace esd::io {

enum class Format { Csv, Json };

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Six significant digits, trailing zeros kept ("0.400000", "1.00000e-07").
inline std::string format_number(double v) {
    if (v == 0.0) v = 0.0;  // folds -0
    return fmt::format("{:#.6g}", v);
}

/// Locale-independent parse of a whole cell; nullopt unless it is a number.
inline std::optional<double> parse_number(std::string_view text) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
    return v;
}

/// Rounds to the value the text form represents, so JSON and CSV agree.
inline double rounded(double v) {
    if (!std::isfinite(v)) return v;
    return *parse_number(format_number(v));
}

/// Writes to a sibling temporary file and renames it over the target.
inline void write_atomically(const std::filesystem::path& path, const std::string& contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out << contents;
        out.flush();
        if (!out) throw IoError("failed writing " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot move output into place at " + path.string());
    }
}

/// A parsed CSV table: header names and raw cell text.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

inline CsvTable parse_csv(const std::string& text) {
    CsvTable t;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (first) {
            t.header = split_csv_line(line);
            first = false;
        } else {
            t.rows.push_back(split_csv_line(line));
        }
    }
    return t;
}

/// Re-emits a parsed table; numeric cells are re-formatted through
/// `format_number`, everything else is copied.
inline std::string serialize_csv(const CsvTable& t) {
    auto join = [](const std::vector<std::string>& cells, bool reformat) {
        std::string line;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) line += ',';
            const auto v = reformat ? parse_number(cells[i]) : std::nullopt;
            line += v ? format_number(*v) : cells[i];
        }
        return line + '\n';
    };
    std::string out = join(t.header, false);
    for (const auto& r : t.rows) out += join(r, true);
    return out;
}

inline std::string surface_csv(const SurfaceGrid& g) {
    std::string out = "p,p_prime,negativity,purity\n";
    for (const auto& c : g.cells)
        out += fmt::format("{},{},{},{}\n", format_number(c.axis1), format_number(c.axis2),
                           format_number(c.negativity), format_number(c.purity));
    return out;
}

inline nlohmann::ordered_json surface_json(const SurfaceGrid& g) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& c : g.cells)
        rows.push_back({{"p", rounded(c.axis1)},
                        {"p_prime", rounded(c.axis2)},
                        {"negativity", rounded(c.negativity)},
                        {"purity", rounded(c.purity)}});
    return rows;
}

inline std::string pend_curve_csv(const PendCurve& c) {
    std::string out = "pn,pend_analytic,pend_numeric,regime\n";
    for (const auto& pt : c.points)
        out += fmt::format("{},{},{},{}\n", format_number(pt.pn), format_number(pt.analytic.capped),
                           format_number(pt.numeric_capped()), to_string(pt.regime));
    return out;
}

inline nlohmann::ordered_json pend_curve_json(const PendCurve& c) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& pt : c.points)
        rows.push_back({{"pn", rounded(pt.pn)},
                        {"pend_analytic", rounded(pt.analytic.capped)},
                        {"pend_numeric", rounded(pt.numeric_capped())},
                        {"regime", std::string(to_string(pt.regime))}});
    return rows;
}

namespace detail {

inline nlohmann::ordered_json nullable(double v) {
    if (!std::isfinite(v)) return nullptr;
    return rounded(v);
}

inline void put_boundary(nlohmann::ordered_json& j, const std::string& name, const Boundary& b) {
    j[name] = b.in_domain ? nullable(b.raw) : nlohmann::ordered_json(nullptr);
    j[name + "_raw"] = nullable(b.raw);
    j[name + "_in_domain"] = b.in_domain;
}

}  // namespace detail

/// Flat object; out-of-domain values are null with the raw value alongside.
inline nlohmann::ordered_json boundaries_json(const BoundarySet& s) {
    nlohmann::ordered_json j;
    detail::put_boundary(j, "p0", s.p0);
    detail::put_boundary(j, "pA_double", s.pA_double);
    detail::put_boundary(j, "pB_double", s.pB_double);
    detail::put_boundary(j, "pA_single", s.pA_single);
    detail::put_boundary(j, "pB_single", s.pB_single);
    j["source"] = s.source == BoundarySource::Formula ? "formula" : "numeric";
    return j;
}

inline nlohmann::ordered_json inner_report_json(const InnerBoundaryReport& r) {
    nlohmann::ordered_json j = boundaries_json(r.formula);
    j["p0_numeric"] = rounded(r.numeric_p0_value);
    j["p0_numeric_outcome"] = std::string(to_string(r.numeric_p0.outcome));
    j["p0_published"] = r.published_p0 ? nlohmann::ordered_json(*r.published_p0) : nlohmann::ordered_json(nullptr);
    j["discrepancy"] = r.discrepancy;
    j["state_positive"] = r.state_positive;
    j["state_min_eigenvalue"] = rounded(r.state_min_eigenvalue);
    return j;
}

inline std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace esd::io
