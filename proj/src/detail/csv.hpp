#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace gradsharp::detail {

// Shortest decimal form that round-trips to the same double.
std::string format_double(double v);

// RFC 4180 quoting when the field holds a comma, quote or line break.
std::string csv_field(std::string_view field);

std::string csv_line(const std::vector<std::string>& fields);

// Splits one CSV record; quoted fields may contain commas and doubled quotes.
std::vector<std::string> parse_csv_line(std::string_view line);

} // namespace gradsharp::detail
