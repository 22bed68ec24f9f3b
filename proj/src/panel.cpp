#include "sysrisk/panel.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "sysrisk/errors.hpp"

namespace sysrisk {

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.emplace_back(line.substr(start));
            break;
        }
        out.emplace_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Empty cells and non-finite tokens count as missing; anything else that is
// not fully numeric is a MalformedRow at the caller's line number.
double parse_cell(const std::string& cell, std::size_t line_no) {
    std::string t = trim(cell);
    if (t.empty()) return kMissing;
    const char* begin = t.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end != begin + t.size()) {
        throw MalformedRow("parse_csv: line " + std::to_string(line_no) +
                           ": cell '" + t + "' is not numeric");
    }
    if (!std::isfinite(v)) return kMissing;
    return v;
}

}  // namespace

std::string to_string(PanelKind kind) {
    return kind == PanelKind::price ? "price" : "yield";
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

PanelData parse_csv(std::string_view text, const ColumnSchema& schema) {
    std::vector<std::string> asset_ids;
    std::vector<YearMonth> timestamps;
    std::vector<std::vector<double>> rows;

    std::size_t line_no = 0;
    bool header_seen = false;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = eol == std::string_view::npos
                                    ? text.substr(pos)
                                    : text.substr(pos, eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;

        auto fields = split_fields(line);
        if (!header_seen) {
            header_seen = true;
            if (fields.size() < 3) {
                throw FewerThanTwoAssets(
                    "parse_csv: header names " + std::to_string(fields.size() - 1) +
                    " asset column(s); at least 2 required");
            }
            std::unordered_set<std::string> seen;
            for (std::size_t i = 1; i < fields.size(); ++i) {
                std::string id = trim(fields[i]);
                if (id.empty() || !seen.insert(id).second) {
                    throw MalformedRow("parse_csv: line " + std::to_string(line_no) +
                                       ": empty or duplicate asset id '" + id + "'");
                }
                asset_ids.push_back(std::move(id));
            }
            continue;
        }

        if (fields.size() != asset_ids.size() + 1) {
            throw MalformedRow("parse_csv: line " + std::to_string(line_no) + ": expected " +
                               std::to_string(asset_ids.size() + 1) + " fields, got " +
                               std::to_string(fields.size()));
        }
        auto ym = parse_year_month(trim(fields[0]));
        if (!ym) {
            throw MalformedRow("parse_csv: line " + std::to_string(line_no) +
                               ": bad date '" + trim(fields[0]) + "'");
        }
        if (!timestamps.empty()) {
            if (*ym == timestamps.back()) {
                throw DuplicateTimestamp("parse_csv: line " + std::to_string(line_no) +
                                         ": repeated month " + to_string(*ym));
            }
            if (*ym < timestamps.back()) {
                throw NonMonotonicDates("parse_csv: line " + std::to_string(line_no) +
                                        ": month " + to_string(*ym) + " after " +
                                        to_string(timestamps.back()));
            }
        }
        timestamps.push_back(*ym);
        std::vector<double> row(asset_ids.size());
        for (std::size_t i = 0; i < asset_ids.size(); ++i) {
            row[i] = parse_cell(fields[i + 1], line_no);
        }
        rows.push_back(std::move(row));
    }

    if (!header_seen) throw MalformedRow("parse_csv: no header row");
    if (rows.size() < 3) {
        throw MalformedRow("parse_csv: " + std::to_string(rows.size()) +
                           " observation row(s); at least 3 required");
    }

    PanelData panel;
    panel.asset_ids = std::move(asset_ids);
    panel.timestamps = std::move(timestamps);
    panel.kind = schema.kind;
    panel.values = Matrix(rows.size(), panel.asset_ids.size());
    for (std::size_t t = 0; t < rows.size(); ++t)
        for (std::size_t i = 0; i < panel.asset_ids.size(); ++i)
            panel.values(t, i) = rows[t][i];
    return panel;
}

PanelData align_and_fill(const PanelData& panel, MissingPolicy policy) {
    if (panel.n_months() == 0) throw GapError("align_and_fill: empty panel");

    // Expand onto the full month grid; skipped months become all-missing rows.
    const YearMonth first = panel.timestamps.front();
    const int span = months_between(first, panel.timestamps.back()) + 1;
    Matrix grid(static_cast<std::size_t>(span), panel.n_assets(), kMissing);
    std::vector<YearMonth> months(static_cast<std::size_t>(span));
    for (int m = 0; m < span; ++m) months[static_cast<std::size_t>(m)] = add_months(first, m);
    for (std::size_t t = 0; t < panel.n_months(); ++t) {
        int m = months_between(first, panel.timestamps[t]);
        for (std::size_t i = 0; i < panel.n_assets(); ++i)
            grid(static_cast<std::size_t>(m), i) = panel.values(t, i);
    }

    PanelData out;
    out.kind = panel.kind;
    out.timestamps = std::move(months);

    switch (policy) {
        case MissingPolicy::reject: {
            for (std::size_t t = 0; t < grid.rows(); ++t)
                for (std::size_t i = 0; i < grid.cols(); ++i)
                    if (std::isnan(grid(t, i))) {
                        throw GapError("align_and_fill: missing value for asset '" +
                                       panel.asset_ids[i] + "' at " +
                                       to_string(out.timestamps[t]) +
                                       " under policy=reject");
                    }
            out.asset_ids = panel.asset_ids;
            out.values = std::move(grid);
            break;
        }
        case MissingPolicy::forward_fill: {
            for (std::size_t i = 0; i < grid.cols(); ++i) {
                if (std::isnan(grid(0, i))) {
                    throw LeadingMissing("align_and_fill: asset '" + panel.asset_ids[i] +
                                         "' has no value at " + to_string(out.timestamps[0]) +
                                         " to fill forward from");
                }
                for (std::size_t t = 1; t < grid.rows(); ++t)
                    if (std::isnan(grid(t, i))) grid(t, i) = grid(t - 1, i);
            }
            out.asset_ids = panel.asset_ids;
            out.values = std::move(grid);
            break;
        }
        case MissingPolicy::drop_asset: {
            std::vector<std::size_t> keep;
            for (std::size_t i = 0; i < grid.cols(); ++i) {
                bool complete = true;
                for (std::size_t t = 0; t < grid.rows(); ++t)
                    if (std::isnan(grid(t, i))) {
                        complete = false;
                        break;
                    }
                if (complete) keep.push_back(i);
            }
            if (keep.size() < 2) {
                throw AllAssetsDropped("align_and_fill: " + std::to_string(keep.size()) +
                                       " asset(s) left after policy=drop_asset");
            }
            out.values = Matrix(grid.rows(), keep.size());
            for (std::size_t k = 0; k < keep.size(); ++k) {
                out.asset_ids.push_back(panel.asset_ids[keep[k]]);
                for (std::size_t t = 0; t < grid.rows(); ++t)
                    out.values(t, k) = grid(t, keep[k]);
            }
            break;
        }
    }
    return out;
}

PanelData load_panel_csv(const std::string& path, const ColumnSchema& schema,
                         MissingPolicy policy) {
    return align_and_fill(parse_csv(read_file(path), schema), policy);
}

std::string to_csv(const PanelData& panel) {
    std::string out = "date";
    for (const auto& id : panel.asset_ids) {
        out += ',';
        out += id;
    }
    out += '\n';
    for (std::size_t t = 0; t < panel.n_months(); ++t) {
        out += to_string(panel.timestamps[t]);
        for (std::size_t i = 0; i < panel.n_assets(); ++i) {
            out += ',';
            out += format_double(panel.values(t, i));
        }
        out += '\n';
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("short write to '" + path + "'");
}

}  // namespace sysrisk
