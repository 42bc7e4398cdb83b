#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "biqwlct/grid.hpp"

namespace biqwlct {

/// "BQF1", n1, n2 as uint64, origin1, origin2, step1, step2 as float64, all
/// little-endian; then n1 * n2 records of 8 float64 (re/im of h0..h3), axis 1
/// fastest.
inline constexpr char kBqfMagic[4] = {'B', 'Q', 'F', '1'};
inline constexpr std::size_t kBqfHeaderBytes = 4 + 2 * 8 + 4 * 8;

std::vector<std::uint8_t> encode_bqf(const Field2D& f);

/// Throws Error(Format) on a bad magic, truncated or oversized payload,
/// invalid grid, or non-finite values.
Field2D decode_bqf(const std::vector<std::uint8_t>& bytes);

void write_bqf(const std::filesystem::path& path, const Field2D& f);
Field2D read_bqf(const std::filesystem::path& path);

}  // namespace biqwlct
