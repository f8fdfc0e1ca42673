#include "dampwave/source.hpp"

#include <cmath>
#include <stdexcept>

namespace dampwave {

namespace {

double abs_pow(double u, double p) {
  const double a = std::abs(u);
  if (a == 0.0) return 0.0;
  return std::exp(p * std::log(a));
}

}  // namespace

double source_value(double u, double p, SourceKind kind) {
  switch (kind) {
    case SourceKind::abs_power: return abs_pow(u, p);
    case SourceKind::signed_power: return std::copysign(abs_pow(u, p), u);
    case SourceKind::none: return 0.0;
  }
  return 0.0;
}

double source_potential(double u, double p, SourceKind kind) {
  switch (kind) {
    case SourceKind::abs_power: return abs_pow(u, p) * u / (p + 1.0);
    case SourceKind::signed_power: return abs_pow(u, p + 1.0) / (p + 1.0);
    case SourceKind::none: return 0.0;
  }
  return 0.0;
}

std::string to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::abs_power: return "abs_power";
    case SourceKind::signed_power: return "signed_power";
    case SourceKind::none: return "none";
  }
  return "unknown";
}

SourceKind parse_source_kind(std::string_view name) {
  if (name == "abs_power") return SourceKind::abs_power;
  if (name == "signed_power") return SourceKind::signed_power;
  if (name == "none") return SourceKind::none;
  throw std::invalid_argument("unknown source kind '" + std::string(name) + "'");
}

}  // namespace dampwave
