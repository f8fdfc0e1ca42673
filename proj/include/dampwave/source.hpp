#pragma once

#include <string>
#include <string_view>

namespace dampwave {

/// Right-hand side of u_tt - Delta u + u_t = f(u).
///   abs_power     f = |u|^p          (the equation studied here)
///   signed_power  f = |u|^{p-1} u    (exploration only)
///   none          f = 0              (linear flow, used as a test hook)
enum class SourceKind { abs_power, signed_power, none };

/// f(u); |u|^p is evaluated as exp(p log|u|) with f(0) = 0.
double source_value(double u, double p, SourceKind kind);

/// Antiderivative G with G' = f and G(0) = 0:
///   abs_power     |u|^p u / (p+1)
///   signed_power  |u|^{p+1} / (p+1)
double source_potential(double u, double p, SourceKind kind);

std::string to_string(SourceKind kind);
/// Throws std::invalid_argument on unknown names.
SourceKind parse_source_kind(std::string_view name);

}  // namespace dampwave
