#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace dampwave {

/// One row of a run's diagnostics. x_components holds, in order,
///   E_Psi^{1/2}, (1+t)^{N/4+1}||u_t||, (1+t)^{N/4+1/2}||grad u||, (1+t)^{N/4}||u||.
struct TimeRecord {
  double t = 0.0;
  double l2_u = 0.0;
  double l2_grad_u = 0.0;
  double l2_ut = 0.0;
  double linf_u = 0.0;
  double e_psi = 0.0;
  std::array<double, 4> x_components{};
  double mean_u = 0.0;

  double x_sum() const { return x_components[0] + x_components[1] + x_components[2] + x_components[3]; }
};

struct TimeSeries {
  std::vector<TimeRecord> records;

  bool empty() const { return records.empty(); }
  std::size_t size() const { return records.size(); }
  /// Appends a record; throws std::invalid_argument if t does not increase.
  void push(const TimeRecord& r);
  /// Column values by CSV column name; throws on unknown names.
  std::vector<double> column(std::string_view name) const;
};

/// Fixed CSV column order.
const std::vector<std::string>& timeseries_columns();

/// Header row plus one row per record, 17 significant digits.
void write_csv(std::ostream& os, const TimeSeries& series);
TimeSeries read_csv(std::istream& is);

struct DecayFit {
  double slope = 0.0;
  double stderr_slope = 0.0;
  double intercept = 0.0;
  std::size_t samples = 0;
};

/// Least-squares slope of log(column) against log(1 + t) over records with
/// t >= t_min. Needs at least 10 such records; a nonpositive value throws
/// std::domain_error naming the first offending time.
DecayFit decay_fit(const TimeSeries& series, std::string_view column, double t_min);

/// Running supremum of the X-norm sum, one entry per record.
std::vector<double> running_x_norm(const TimeSeries& series);

/// sup over records of the X-norm sum; throws on an empty series.
double x_norm(const TimeSeries& series);

}  // namespace dampwave
