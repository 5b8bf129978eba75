#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "radolab/rational.hpp"

namespace radolab {

/// Upper regularized incomplete gamma Q(a, x) = Gamma(a,x)/Gamma(a).
double gamma_q(double a, double x);

/// P-value of a chi-square statistic with `df` degrees of freedom.
double chi_square_p_value(double statistic, unsigned df);

struct ChiSquareResult {
  double statistic = 0.0;
  unsigned df = 0;
  double p_value = 1.0;
  bool pass(double significance) const { return p_value >= significance; }
};

/// Goodness of fit of observed counts against expected probabilities
/// (expected[i] summing to 1; draws = sum of observed).
ChiSquareResult chi_square_goodness_of_fit(const std::vector<std::uint64_t>& observed,
                                           const std::vector<double>& expected_probability);

/// Moments of an integer-valued per-replica statistic, accumulated exactly so
/// aggregation order cannot perturb the result.
class CountAccumulator {
 public:
  void add(std::int64_t value) {
    sum_ += value;
    sum_sq_ += (unsigned __int128)((__int128)value * value);
    ++count_;
  }
  std::uint64_t count() const { return count_; }
  std::int64_t sum() const { return (std::int64_t)sum_; }
  double mean() const;
  /// Unbiased sample variance.
  double variance() const;
  /// Standard error of the mean.
  double standard_error() const;
  /// Exact mean == target (rational comparison).
  bool mean_equals(const Rat& target) const;
  bool mean_at_most(const Rat& bound) const;
  bool mean_at_least(const Rat& bound) const;

 private:
  __int128 sum_ = 0;
  unsigned __int128 sum_sq_ = 0;
  std::uint64_t count_ = 0;
};

/// One reported statistic with its acceptance rule: equality targets pass at
/// |mean - target| <= 3*SE, one-sided bounds at mean <= bound + 3*SE (or
/// mean >= bound - 3*SE for lower bounds); SE = 0 falls back to the exact
/// rational comparison.
struct StatLine {
  std::string name;
  std::optional<Rat> target;
  std::optional<Rat> lower_bound;
  std::optional<Rat> upper_bound;
  double mean = 0.0;
  double se = 0.0;
  double z = 0.0;
  bool pass = false;
};

StatLine make_equality_stat(std::string name, const CountAccumulator& acc, const Rat& target);
StatLine make_upper_bound_stat(std::string name, const CountAccumulator& acc, const Rat& bound);
StatLine make_lower_bound_stat(std::string name, const CountAccumulator& acc, const Rat& bound);
/// No analytic target; pass supplied by the caller (structural checks).
StatLine make_flag_stat(std::string name, double value, bool pass);

}  // namespace radolab
