#include "dampwave/snapshot.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace dampwave {

namespace {

template <typename U>
void put_le(std::ostream& os, U v) {
  std::array<char, sizeof(U)> bytes{};
  for (std::size_t i = 0; i < sizeof(U); ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  os.write(bytes.data(), bytes.size());
}

void put_f64(std::ostream& os, double v) { put_le(os, std::bit_cast<std::uint64_t>(v)); }

template <typename U>
U get_le(std::istream& is) {
  std::array<unsigned char, sizeof(U)> bytes{};
  is.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!is) throw std::runtime_error("truncated snapshot");
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(bytes[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& is) { return std::bit_cast<double>(get_le<std::uint64_t>(is)); }

}  // namespace

void write_snapshot(std::ostream& os, const LinearState& state, const SnapshotMeta& meta) {
  const GridSpec& g = state.grid();
  os.write(kSnapshotMagic, 4);
  put_le<std::uint16_t>(os, kSnapshotVersion);
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(g.dim));
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(g.points));
  put_f64(os, g.half_width);
  put_f64(os, state.t);
  put_f64(os, meta.p);
  put_f64(os, meta.A);
  put_f64(os, meta.lambda);
  for (double v : state.u.values) put_f64(os, v);
  for (double v : state.ut.values) put_f64(os, v);
  if (!os) throw std::runtime_error("snapshot write failed");
}

Snapshot read_snapshot(std::istream& is) {
  char magic[4] = {};
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kSnapshotMagic, 4) != 0) throw std::runtime_error("not a snapshot (bad magic)");
  const auto version = get_le<std::uint16_t>(is);
  if (version != kSnapshotVersion) throw std::runtime_error("unsupported snapshot version " + std::to_string(version));

  GridSpec g;
  g.dim = static_cast<int>(get_le<std::uint32_t>(is));
  g.points = static_cast<int>(get_le<std::uint32_t>(is));
  g.half_width = get_f64(is);
  g.validate();
  Snapshot snap;
  const double t = get_f64(is);
  snap.meta.p = get_f64(is);
  snap.meta.A = get_f64(is);
  snap.meta.lambda = get_f64(is);

  RealField u(g), ut(g);
  for (double& v : u.values) v = get_f64(is);
  for (double& v : ut.values) v = get_f64(is);
  snap.state = LinearState(t, std::move(u), std::move(ut));
  return snap;
}

void save_snapshot(const std::filesystem::path& path, const LinearState& state, const SnapshotMeta& meta) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_snapshot(os, state, meta);
}

Snapshot load_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  return read_snapshot(is);
}

}  // namespace dampwave
