#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace taxview {

// Calendar date without time of day.
using Date = std::chrono::year_month_day;

// Strict ISO-8601 calendar date, "YYYY-MM-DD". Returns nullopt for anything
// else, including impossible dates such as 2023-02-30.
std::optional<Date> parse_date(std::string_view text);

std::string format_date(const Date& date);

}  // namespace taxview
