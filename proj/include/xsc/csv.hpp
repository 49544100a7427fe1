#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace xsc {

/// Locale-independent number formatting, 9 significant digits.
inline std::string format_g9(double value) {
    char buf[48];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                   std::chars_format::general, 9);
    return std::string(buf, res.ptr);
}

/// Locale-independent fixed formatting with 6 decimals (footer times).
inline std::string format_f6(double value) {
    char buf[48];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                   std::chars_format::fixed, 6);
    return std::string(buf, res.ptr);
}

} // namespace xsc
