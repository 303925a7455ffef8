#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace wavn {

using Digest = std::array<std::uint8_t, 32>;

/// Shortest decimal string that parses back to exactly `value`
/// (std::to_chars without a format argument). Non-finite values render as
/// "inf", "-inf" or "nan".
std::string format_number(double value);
std::string format_number(std::uint64_t value);

std::string to_hex(const Digest& digest);
std::optional<Digest> digest_from_hex(std::string_view hex);

/// SHA-256 of the raw bytes of `data`.
Digest sha256(std::string_view data);

}  // namespace wavn
