#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace sysrisk {

// Calendar month at year-month granularity. Monthly data is the canonical
// frequency throughout the library; there are no day-of-month or timezone
// semantics anywhere.
struct YearMonth {
    int year = 0;
    int month = 1;  // 1..12

    auto operator<=>(const YearMonth&) const = default;
};

// Signed number of calendar months from `from` to `to`.
int months_between(const YearMonth& from, const YearMonth& to);

YearMonth add_months(const YearMonth& ym, int n);

inline YearMonth next_month(const YearMonth& ym) { return add_months(ym, 1); }

// Accepts "YYYY-MM" or "YYYY-MM-DD" (the day is ignored). Returns nullopt on
// anything else, including out-of-range months.
std::optional<YearMonth> parse_year_month(std::string_view text);

// Formats as "YYYY-MM" with zero padding.
std::string to_string(const YearMonth& ym);

}  // namespace sysrisk
