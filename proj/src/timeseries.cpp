#include "dampwave/timeseries.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dampwave {

namespace {

double field_of(const TimeRecord& r, std::size_t column) {
  switch (column) {
    case 0: return r.t;
    case 1: return r.l2_u;
    case 2: return r.l2_grad_u;
    case 3: return r.l2_ut;
    case 4: return r.linf_u;
    case 5: return r.e_psi;
    case 6: return r.x_components[0];
    case 7: return r.x_components[1];
    case 8: return r.x_components[2];
    case 9: return r.x_components[3];
    case 10: return r.mean_u;
    default: throw std::out_of_range("column index");
  }
}

double& field_ref(TimeRecord& r, std::size_t column) {
  switch (column) {
    case 0: return r.t;
    case 1: return r.l2_u;
    case 2: return r.l2_grad_u;
    case 3: return r.l2_ut;
    case 4: return r.linf_u;
    case 5: return r.e_psi;
    case 6: return r.x_components[0];
    case 7: return r.x_components[1];
    case 8: return r.x_components[2];
    case 9: return r.x_components[3];
    case 10: return r.mean_u;
    default: throw std::out_of_range("column index");
  }
}

std::size_t column_index(std::string_view name) {
  const auto& cols = timeseries_columns();
  const auto it = std::find(cols.begin(), cols.end(), name);
  if (it == cols.end()) throw std::invalid_argument("unknown time-series column '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - cols.begin());
}

}  // namespace

void TimeSeries::push(const TimeRecord& r) {
  if (!records.empty() && !(r.t > records.back().t)) {
    throw std::invalid_argument("time-series records must have strictly increasing t");
  }
  records.push_back(r);
}

std::vector<double> TimeSeries::column(std::string_view name) const {
  const std::size_t c = column_index(name);
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(field_of(r, c));
  return out;
}

const std::vector<std::string>& timeseries_columns() {
  static const std::vector<std::string> cols = {"t",      "l2_u",     "l2_grad_u", "l2_ut", "linf_u", "e_psi",
                                                "x_energy", "x_ut", "x_grad_u",  "x_u",   "mean_u"};
  return cols;
}

void write_csv(std::ostream& os, const TimeSeries& series) {
  const auto& cols = timeseries_columns();
  for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << cols[c];
  os << '\n';
  const auto old_precision = os.precision(17);
  for (const auto& r : series.records) {
    for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << field_of(r, c);
    os << '\n';
  }
  os.precision(old_precision);
}

TimeSeries read_csv(std::istream& is) {
  const auto& cols = timeseries_columns();
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty time-series CSV");
  std::string expected;
  for (std::size_t c = 0; c < cols.size(); ++c) expected += (c ? "," : "") + cols[c];
  if (line != expected) throw std::runtime_error("unexpected time-series CSV header");

  TimeSeries series;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    TimeRecord r;
    std::string cell;
    std::size_t c = 0;
    while (std::getline(row, cell, ',')) {
      if (c >= cols.size()) throw std::runtime_error("too many CSV cells on line " + std::to_string(line_no));
      field_ref(r, c++) = std::stod(cell);
    }
    if (c != cols.size()) throw std::runtime_error("too few CSV cells on line " + std::to_string(line_no));
    series.push(r);
  }
  return series;
}

DecayFit decay_fit(const TimeSeries& series, std::string_view column, double t_min) {
  const std::size_t c = column_index(column);
  std::vector<double> xs, ys;
  for (const auto& r : series.records) {
    if (r.t < t_min) continue;
    const double v = field_of(r, c);
    if (!(v > 0.0)) {
      std::ostringstream msg;
      msg << "column " << column << " is nonpositive at t = " << r.t;
      throw std::domain_error(msg.str());
    }
    xs.push_back(std::log1p(r.t));
    ys.push_back(std::log(v));
  }
  if (xs.size() < 10) throw std::invalid_argument("decay_fit needs at least 10 records at or after t_min");

  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("decay_fit needs distinct times");

  DecayFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.samples = xs.size();
  double ssr = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ssr += e * e;
  }
  fit.stderr_slope = std::sqrt(ssr / (n - 2.0) / sxx);
  return fit;
}

std::vector<double> running_x_norm(const TimeSeries& series) {
  std::vector<double> out;
  out.reserve(series.size());
  double best = 0.0;
  for (const auto& r : series.records) {
    best = std::max(best, r.x_sum());
    out.push_back(best);
  }
  return out;
}

double x_norm(const TimeSeries& series) {
  if (series.empty()) throw std::invalid_argument("x_norm of an empty time series");
  return running_x_norm(series).back();
}

}  // namespace dampwave
