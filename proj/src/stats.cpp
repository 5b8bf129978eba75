#include "radolab/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace radolab {

namespace {

// Series expansion of P(a,x), valid for x < a+1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a,x), valid for x >= a+1 (modified Lentz).
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_q domain");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chi_square_p_value(double statistic, unsigned df) {
  if (df == 0) return 1.0;
  return gamma_q(df / 2.0, statistic / 2.0);
}

ChiSquareResult chi_square_goodness_of_fit(const std::vector<std::uint64_t>& observed,
                                           const std::vector<double>& expected_probability) {
  if (observed.size() != expected_probability.size() || observed.empty())
    throw std::invalid_argument("chi-square: category mismatch");
  std::uint64_t draws = 0;
  for (auto c : observed) draws += c;
  ChiSquareResult res;
  res.df = (unsigned)observed.size() - 1;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double expected = expected_probability[i] * (double)draws;
    if (expected <= 0.0) throw std::invalid_argument("chi-square: zero expected count");
    const double diff = (double)observed[i] - expected;
    res.statistic += diff * diff / expected;
  }
  res.p_value = chi_square_p_value(res.statistic, res.df);
  return res;
}

double CountAccumulator::mean() const {
  if (count_ == 0) return 0.0;
  return (double)(__int128)sum_ / (double)count_;
}

double CountAccumulator::variance() const {
  if (count_ < 2) return 0.0;
  const long double n = (long double)count_;
  const long double s = (long double)(__int128)sum_;
  const long double ss = (long double)sum_sq_;
  long double var = (ss - s * s / n) / (n - 1.0L);
  if (var < 0) var = 0;  // exact-integer cancellation can leave -0
  return (double)var;
}

double CountAccumulator::standard_error() const {
  if (count_ == 0) return 0.0;
  return std::sqrt(variance() / (double)count_);
}

bool CountAccumulator::mean_equals(const Rat& target) const {
  // sum/count == target
  return Rat(BigInt((long)sum())) == target * Rat(BigInt((unsigned long)count_));
}

bool CountAccumulator::mean_at_most(const Rat& bound) const {
  return Rat(BigInt((long)sum())) <= bound * Rat(BigInt((unsigned long)count_));
}

bool CountAccumulator::mean_at_least(const Rat& bound) const {
  return Rat(BigInt((long)sum())) >= bound * Rat(BigInt((unsigned long)count_));
}

namespace {

StatLine base_stat(std::string name, const CountAccumulator& acc) {
  StatLine s;
  s.name = std::move(name);
  s.mean = acc.mean();
  s.se = acc.standard_error();
  return s;
}

}  // namespace

StatLine make_equality_stat(std::string name, const CountAccumulator& acc, const Rat& target) {
  StatLine s = base_stat(std::move(name), acc);
  s.target = target;
  const double t = to_double(target);
  if (s.se == 0.0) {
    s.pass = acc.mean_equals(target);
    s.z = 0.0;
  } else {
    s.z = (s.mean - t) / s.se;
    s.pass = std::fabs(s.mean - t) <= 3.0 * s.se;
  }
  return s;
}

StatLine make_upper_bound_stat(std::string name, const CountAccumulator& acc, const Rat& bound) {
  StatLine s = base_stat(std::move(name), acc);
  s.upper_bound = bound;
  const double b = to_double(bound);
  if (s.se == 0.0) {
    s.pass = acc.mean_at_most(bound);
    s.z = 0.0;
  } else {
    s.z = (s.mean - b) / s.se;
    s.pass = s.mean <= b + 3.0 * s.se;
  }
  return s;
}

StatLine make_lower_bound_stat(std::string name, const CountAccumulator& acc, const Rat& bound) {
  StatLine s = base_stat(std::move(name), acc);
  s.lower_bound = bound;
  const double b = to_double(bound);
  if (s.se == 0.0) {
    s.pass = acc.mean_at_least(bound);
    s.z = 0.0;
  } else {
    s.z = (s.mean - b) / s.se;
    s.pass = s.mean >= b - 3.0 * s.se;
  }
  return s;
}

StatLine make_flag_stat(std::string name, double value, bool pass) {
  StatLine s;
  s.name = std::move(name);
  s.mean = value;
  s.pass = pass;
  return s;
}

}  // namespace radolab
