#pragma once

#include <cstdint>
#include <string>

namespace portrisk {

struct CivilDate {
    int year = 1970;
    unsigned month = 1;  // 1..12
    unsigned day = 1;    // 1..31
};

// Days since 1970-01-01 for a proleptic Gregorian date (Howard Hinnant's
// civil-days algorithm; exact over the full int range).
std::int64_t days_from_civil(int y, unsigned m, unsigned d);
CivilDate civil_from_days(std::int64_t z);

// Epoch seconds (UTC) for Y-M-D H:M:S.
std::int64_t epoch_from_civil(int y, unsigned m, unsigned d,
                              unsigned hh = 0, unsigned mm = 0, unsigned ss = 0);

// year*12 + (month-1) of the UTC instant; the pipeline's time bucket.
int month_index_of(std::int64_t epoch_seconds);

// "2024-04" style tag for reports.
std::string month_index_to_string(int month_index);

// Accepts either epoch seconds ("1718000000") or ISO-8601
// "YYYY-MM-DDThh:mm:ss" with optional trailing 'Z'. Throws ParseError.
std::int64_t parse_timestamp(const std::string& text);

}  // namespace portrisk
