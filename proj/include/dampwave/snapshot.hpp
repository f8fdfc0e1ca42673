#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "dampwave/propagator.hpp"

namespace dampwave {

/// Binary layout, all little-endian:
///   "DWSN" | u16 version | u32 dim | u32 M | f64 L | f64 t | f64 p | f64 A | f64 lambda
///   | M^dim f64 values of u | M^dim f64 values of u_t   (row-major)
inline constexpr char kSnapshotMagic[4] = {'D', 'W', 'S', 'N'};
inline constexpr std::uint16_t kSnapshotVersion = 1;
inline constexpr std::size_t kSnapshotHeaderBytes = 4 + 2 + 4 + 4 + 5 * 8;

struct SnapshotMeta {
  double p = 0.0;
  double A = 0.0;
  double lambda = 0.0;
};

struct Snapshot {
  SnapshotMeta meta;
  LinearState state;
};

void write_snapshot(std::ostream& os, const LinearState& state, const SnapshotMeta& meta);
/// Throws std::runtime_error on bad magic, version, sizes or truncation.
Snapshot read_snapshot(std::istream& is);

void save_snapshot(const std::filesystem::path& path, const LinearState& state, const SnapshotMeta& meta);
Snapshot load_snapshot(const std::filesystem::path& path);

}  // namespace dampwave
