#include "portrisk/timeutil.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

#include "portrisk/errors.hpp"

namespace portrisk {

std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);             // [0, 399]
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;   // [0, 365]
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;            // [0, 146096]
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

CivilDate civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return CivilDate{static_cast<int>(y + (m <= 2)), m, d};
}

std::int64_t epoch_from_civil(int y, unsigned m, unsigned d,
                              unsigned hh, unsigned mm, unsigned ss) {
    return days_from_civil(y, m, d) * 86400 + hh * 3600 + mm * 60 + ss;
}

int month_index_of(std::int64_t epoch_seconds) {
    std::int64_t days = epoch_seconds / 86400;
    if (epoch_seconds < 0 && epoch_seconds % 86400 != 0) --days;
    const CivilDate cd = civil_from_days(days);
    return cd.year * 12 + static_cast<int>(cd.month) - 1;
}

std::string month_index_to_string(int month_index) {
    const int year = month_index >= 0 ? month_index / 12
                                      : (month_index - 11) / 12;
    const int month = month_index - year * 12 + 1;
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
    return buf;
}

namespace {

bool parse_uint(const std::string& s, std::size_t pos, std::size_t len, unsigned& out) {
    if (pos + len > s.size()) return false;
    unsigned v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        v = v * 10 + static_cast<unsigned>(s[i] - '0');
    }
    out = v;
    return true;
}

}  // namespace

std::int64_t parse_timestamp(const std::string& text) {
    if (text.empty()) throw ParseError("empty timestamp");

    const bool iso = text.size() >= 19 && text[4] == '-' && text[7] == '-' &&
                     (text[10] == 'T' || text[10] == ' ');
    if (iso) {
        unsigned y, mo, d, hh, mm, ss;
        if (!parse_uint(text, 0, 4, y) || !parse_uint(text, 5, 2, mo) ||
            !parse_uint(text, 8, 2, d) || !parse_uint(text, 11, 2, hh) ||
            !parse_uint(text, 14, 2, mm) || !parse_uint(text, 17, 2, ss) ||
            text[13] != ':' || text[16] != ':')
            throw ParseError("bad ISO-8601 timestamp: " + text);
        if (text.size() > 19 && text.substr(19) != "Z")
            throw ParseError("unsupported timestamp suffix: " + text);
        if (mo < 1 || mo > 12 || d < 1 || d > 31 || hh > 23 || mm > 59 || ss > 60)
            throw ParseError("out-of-range timestamp field: " + text);
        return epoch_from_civil(static_cast<int>(y), mo, d, hh, mm, ss);
    }

    std::int64_t v = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw ParseError("bad timestamp: " + text);
    return v;
}

}  // namespace portrisk
