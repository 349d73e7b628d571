#pragma once

#include <charconv>
#include <optional>
#include <string>
#include <string_view>

namespace frids {

// Shortest round-trip decimal form of a double (std::to_chars), so emitted
// numbers re-parse to the identical bits on every platform.
inline std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, ptr);
}

inline std::optional<double> parse_double(std::string_view text) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        return std::nullopt;
    return value;
}

} // namespace frids
