#include "sysrisk/calendar.hpp"

#include <cstdio>

namespace sysrisk {

int months_between(const YearMonth& from, const YearMonth& to) {
    return (to.year - from.year) * 12 + (to.month - from.month);
}

YearMonth add_months(const YearMonth& ym, int n) {
    int zero_based = ym.year * 12 + (ym.month - 1) + n;
    int year = zero_based / 12;
    int month = zero_based % 12;
    if (month < 0) {
        month += 12;
        year -= 1;
    }
    return {year, month + 1};
}

std::optional<YearMonth> parse_year_month(std::string_view text) {
    // YYYY-MM with optional -DD tail; fixed widths, digits only.
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (text.size() != 7 && text.size() != 10) return std::nullopt;
    for (std::size_t i = 0; i < 4; ++i)
        if (!digit(text[i])) return std::nullopt;
    if (text[4] != '-' || !digit(text[5]) || !digit(text[6])) return std::nullopt;
    if (text.size() == 10) {
        if (text[7] != '-' || !digit(text[8]) || !digit(text[9])) return std::nullopt;
    }
    int year = (text[0] - '0') * 1000 + (text[1] - '0') * 100 +
               (text[2] - '0') * 10 + (text[3] - '0');
    int month = (text[5] - '0') * 10 + (text[6] - '0');
    if (month < 1 || month > 12) return std::nullopt;
    return YearMonth{year, month};
}

std::string to_string(const YearMonth& ym) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", ym.year, ym.month);
    return buf;
}

}  // namespace sysrisk
