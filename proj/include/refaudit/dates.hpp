#pragma once

#include <algorithm>
#include <chrono>
#include <compare>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

#include "refaudit/csv.hpp"
#include "refaudit/error.hpp"

namespace refaudit {

/// ISO calendar date (YYYY-MM-DD).
class Date {
public:
    constexpr Date() = default;
    constexpr Date(int y, unsigned m, unsigned d) : ymd_(std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}) {}
    constexpr explicit Date(std::chrono::sys_days days) : ymd_(days) {}

    static std::optional<Date> parse(std::string_view text) {
        text = trim(text);
        if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
        int y = 0;
        unsigned m = 0, d = 0;
        if (!parse_int(text.substr(0, 4), y) || !parse_int(text.substr(5, 2), m) || !parse_int(text.substr(8, 2), d))
            return std::nullopt;
        Date out(y, m, d);
        if (!out.ymd_.ok()) return std::nullopt;
        return out;
    }

    constexpr int year() const { return static_cast<int>(ymd_.year()); }
    constexpr std::chrono::sys_days days() const { return std::chrono::sys_days{ymd_}; }

    std::string str() const {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", year(), static_cast<unsigned>(ymd_.month()),
                      static_cast<unsigned>(ymd_.day()));
        return buf;
    }

    constexpr auto operator<=>(const Date& other) const { return days() <=> other.days(); }
    constexpr bool operator==(const Date& other) const { return days() == other.days(); }

private:
    std::chrono::year_month_day ymd_{std::chrono::year{1970}, std::chrono::month{1}, std::chrono::day{1}};
};

/// Inclusive range of calendar years.
struct YearWindow {
    int first = 0;
    int last = 0;

    constexpr bool contains(int y) const { return first <= y && y <= last; }
    constexpr int span() const { return last - first + 1; }
    constexpr Date start() const { return Date(first, 1, 1); }
    constexpr Date end() const { return Date(last, 12, 31); }

    /// Parses "2004:2008".
    static YearWindow parse(std::string_view text) {
        auto colon = text.find(':');
        YearWindow w;
        if (colon == std::string_view::npos || !parse_int(text.substr(0, colon), w.first) ||
            !parse_int(text.substr(colon + 1), w.last))
            throw InputError("window must look like 2004:2008, got '" + std::string(text) + "'");
        if (w.first > w.last) throw ValidationError("window start " + std::to_string(w.first) + " after end " +
                                                    std::to_string(w.last));
        return w;
    }

    std::string str() const { return std::to_string(first) + ":" + std::to_string(last); }
};

/// Years worked inside `window` for an inclusive employment interval.
/// Each calendar year contributes the fraction of its days covered, so a
/// full-period appointment yields exactly window.span().
inline double years_worked(Date start, std::optional<Date> end, YearWindow window) {
    using std::chrono::days;
    double total = 0.0;
    for (int y = window.first; y <= window.last; ++y) {
        auto year_start = Date(y, 1, 1).days();
        auto year_end = Date(y, 12, 31).days();
        auto lo = std::max(year_start, start.days());
        auto hi = end ? std::min(year_end, end->days()) : year_end;
        if (hi < lo) continue;
        auto covered = (hi - lo).count() + 1;
        auto length = (year_end - year_start).count() + 1;
        total += static_cast<double>(covered) / static_cast<double>(length);
    }
    return total;
}

} // namespace refaudit
