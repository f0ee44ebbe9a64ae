#pragma once

#include <cstdint>
#include <string>

namespace agrifleet {

/// Monetary amounts are carried as integer cents so that budget
/// comparisons are exact and identical across the optimizer and the
/// SAT verifier.
using Cents = std::int64_t;

/// Areas are compared in integer square meters for the same reason.
using AreaM2 = std::int64_t;

/// Parses a decimal currency string ("3449.56") with at most two
/// fraction digits. Throws ParseError otherwise.
Cents cents_from_string(const std::string& text, const std::string& context);

/// Converts a currency value given as a double. Rejects values that do
/// not round cleanly to two decimals.
Cents cents_from_double(double value, const std::string& context);

/// "123456" cents -> "1234.56"
std::string format_cents(Cents value);

double cents_to_double(Cents value);

/// Rounds a floating-point area to integer m², half away from zero.
AreaM2 area_units_from_m2(double m2);

/// snprintf-style formatting into a std::string.
std::string strprintf(const char* fmt, ...) __attribute__((format(printf, 1, 2)));

/// Fixed-point decimal rendering used by the CSV/report writers.
std::string format_fixed(double value, int decimals);

}  // namespace agrifleet
