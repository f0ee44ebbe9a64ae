#include "agrifleet/units.hpp"

#include <cctype>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <vector>

#include "agrifleet/errors.hpp"

namespace agrifleet {

Cents cents_from_string(const std::string& text, const std::string& context) {
    const char* p = text.c_str();
    bool negative = false;
    if (*p == '-') {
        negative = true;
        ++p;
    }
    if (!std::isdigit(static_cast<unsigned char>(*p))) {
        throw ParseError(context + ": expected decimal currency, got '" + text + "'");
    }
    Cents whole = 0;
    while (std::isdigit(static_cast<unsigned char>(*p))) {
        whole = whole * 10 + (*p - '0');
        if (whole > 90'000'000'000'000'000LL) {
            throw ParseError(context + ": currency value out of range");
        }
        ++p;
    }
    Cents frac = 0;
    if (*p == '.') {
        ++p;
        int digits = 0;
        while (std::isdigit(static_cast<unsigned char>(*p))) {
            frac = frac * 10 + (*p - '0');
            ++digits;
            ++p;
        }
        if (digits == 0 || digits > 2) {
            throw ParseError(context + ": currency must carry one or two fraction digits, got '" +
                             text + "'");
        }
        if (digits == 1) frac *= 10;
    }
    if (*p != '\0') {
        throw ParseError(context + ": trailing characters in currency '" + text + "'");
    }
    Cents cents = whole * 100 + frac;
    return negative ? -cents : cents;
}

Cents cents_from_double(double value, const std::string& context) {
    if (!std::isfinite(value)) {
        throw ParseError(context + ": currency value is not finite");
    }
    const double scaled = value * 100.0;
    const double rounded = std::nearbyint(scaled);
    if (std::fabs(scaled - rounded) > 1e-6 * std::max(1.0, std::fabs(scaled))) {
        throw ParseError(context + ": currency must have at most two decimal places");
    }
    return static_cast<Cents>(std::llround(scaled));
}

std::string format_cents(Cents value) {
    const bool negative = value < 0;
    const Cents abs = negative ? -value : value;
    return strprintf("%s%lld.%02lld", negative ? "-" : "",
                     static_cast<long long>(abs / 100), static_cast<long long>(abs % 100));
}

double cents_to_double(Cents value) { return static_cast<double>(value) / 100.0; }

AreaM2 area_units_from_m2(double m2) { return static_cast<AreaM2>(std::llround(m2)); }

std::string strprintf(const char* fmt, ...) {
    va_list args;
    va_start(args, fmt);
    va_list copy;
    va_copy(copy, args);
    const int needed = std::vsnprintf(nullptr, 0, fmt, copy);
    va_end(copy);
    std::string out;
    if (needed > 0) {
        std::vector<char> buf(static_cast<size_t>(needed) + 1);
        std::vsnprintf(buf.data(), buf.size(), fmt, args);
        out.assign(buf.data(), static_cast<size_t>(needed));
    }
    va_end(args);
    return out;
}

std::string format_fixed(double value, int decimals) {
    return strprintf("%.*f", decimals, value);
}

}  // namespace agrifleet
