#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sysrisk/calendar.hpp"
#include "sysrisk/matrix.hpp"

namespace sysrisk {

enum class PanelKind { price, yield_ };

std::string to_string(PanelKind kind);

// Aligned monthly observations for N assets over T months. After a panel has
// gone through align_and_fill it satisfies: timestamps strictly increasing
// and exactly one month apart, no missing (non-finite) cells, N >= 2, T >= 3,
// asset ids pairwise distinct. parse_csv output may still contain calendar
// gaps or NaN cells; align_and_fill resolves them.
struct PanelData {
    std::vector<std::string> asset_ids;
    std::vector<YearMonth> timestamps;
    Matrix values;  // T x N, entry (t, i) = observation of asset i at month t
    PanelKind kind = PanelKind::price;

    std::size_t n_assets() const { return asset_ids.size(); }
    std::size_t n_months() const { return timestamps.size(); }
};

enum class MissingPolicy { reject, forward_fill, drop_asset };

struct ColumnSchema {
    PanelKind kind = PanelKind::price;
};

// Parses `date,<asset1>,<asset2>,...` CSV. Dates are "YYYY-MM" or
// "YYYY-MM-DD" (day ignored). Empty cells and non-finite tokens (nan/inf)
// parse as missing. Dates must be strictly increasing but may skip months;
// use align_and_fill to resolve gaps and missing cells.
PanelData parse_csv(std::string_view text, const ColumnSchema& schema = {});

// Expands the panel onto the full month grid between its first and last
// timestamp and applies the missing-data policy:
//   reject        any gap or missing cell is a GapError
//   forward_fill  each missing cell takes the most recent prior value
//                 (LeadingMissing if an asset starts missing)
//   drop_asset    assets with any missing cell are removed
//                 (AllAssetsDropped if fewer than 2 remain)
// Idempotent: applying it twice equals applying it once.
PanelData align_and_fill(const PanelData& panel, MissingPolicy policy);

// parse_csv + align_and_fill on a file. Throws Error if the file is unreadable.
PanelData load_panel_csv(const std::string& path, const ColumnSchema& schema,
                         MissingPolicy policy);

// Emits the same schema parse_csv accepts; floats at 17 significant digits so
// parse_csv(to_csv(p)) reproduces p bit-exactly.
std::string to_csv(const PanelData& panel);

// %.17g formatting used by every CSV emitter in the library.
std::string format_double(double v);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace sysrisk
