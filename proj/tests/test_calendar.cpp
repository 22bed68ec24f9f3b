#include <doctest.h>

#include "sysrisk/calendar.hpp"

using namespace sysrisk;

TEST_CASE("year-month parsing accepts both supported layouts") {
    CHECK(parse_year_month("2010-03") == YearMonth{2010, 3});
    CHECK(parse_year_month("2010-03-15") == YearMonth{2010, 3});  // day ignored
    CHECK(parse_year_month("1999-12") == YearMonth{1999, 12});
}

TEST_CASE("year-month parsing rejects malformed text") {
    CHECK(!parse_year_month(""));
    CHECK(!parse_year_month("2010"));
    CHECK(!parse_year_month("2010-13"));
    CHECK(!parse_year_month("2010-00"));
    CHECK(!parse_year_month("2010/03"));
    CHECK(!parse_year_month("201-031"));
    CHECK(!parse_year_month("2010-3"));
    CHECK(!parse_year_month("2010-03-xy"));
    CHECK(!parse_year_month("2010-03-15T00"));
}

TEST_CASE("month arithmetic wraps across year boundaries") {
    CHECK(add_months({2009, 11}, 3) == YearMonth{2010, 2});
    CHECK(add_months({2010, 1}, -1) == YearMonth{2009, 12});
    CHECK(add_months({2010, 6}, 0) == YearMonth{2010, 6});
    CHECK(next_month({2010, 12}) == YearMonth{2011, 1});
    CHECK(months_between({2000, 1}, {2010, 1}) == 120);
    CHECK(months_between({2010, 5}, {2010, 2}) == -3);
}

TEST_CASE("add_months and months_between are inverse") {
    const YearMonth base{1995, 7};
    for (int n = -40; n <= 40; ++n) {
        CHECK(months_between(base, add_months(base, n)) == n);
    }
}

TEST_CASE("formatting pads to four-digit years and two-digit months") {
    CHECK(to_string(YearMonth{2010, 3}) == "2010-03");
    CHECK(to_string(YearMonth{987, 11}) == "0987-11");
}
