#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "radolab/engine.hpp"
#include "radolab/rational.hpp"
#include "radolab/sequence.hpp"

namespace radolab {

/// Probability that the round-n vertex is a witness for disjoint k-sets
/// (A, B) of earlier vertices: C(n-2k, d_n-k)/C(n, d_n), expressed as
/// (d_n)_(k) (n-d_n)_(k) / (n)_(2k). Zero when d_n < k, n-d_n < k or 2k > n.
Rat witness_probability(std::uint64_t n, std::uint64_t d_n, std::uint64_t k);

/// Asymmetric variant, |A| = a, |B| = b: C(n-a-b, d_n-a)/C(n, d_n).
Rat generalized_witness_probability(std::uint64_t n, std::uint64_t d_n, std::uint64_t a,
                                    std::uint64_t b);

enum class RadocityVerdict { Known, DiagnosticsOnly };

struct RadocityTermSums {
  unsigned t = 0;
  Rat power_form;      // partial sum of ((d_n/n)(n-d_n)/n)^t
  Rat factorial_form;  // partial sum of (d_n)_(t)(n-d_n)_(t)/(n)_(2t)
};

struct RadocityReport {
  std::vector<RadocityTermSums> per_t;
  RadocityVerdict verdict = RadocityVerdict::DiagnosticsOnly;
  std::optional<unsigned> known_radocity;  // engaged iff verdict Known; nullopt+Known = infinity
  bool known_infinite = false;
  std::string family_note;

  std::string to_json() const;
};

/// Exact partial sums of both Theorem-1 series for t = 1..t_max, plus the
/// family-registered verdict (never inferred from the partial sums).
RadocityReport radocity_series(const DegreeSequence& seq, unsigned t_max, std::uint64_t horizon,
                               std::optional<std::uint64_t> seed = {});

struct TermEquivalence {
  Rat power_term;
  Rat factorial_term;
  std::optional<Rat> ratio;  // factorial/power when both nonzero
};

/// The n-th terms of the two series and their ratio (second/first).
TermEquivalence term_equivalence_check(std::uint64_t d_n, std::uint64_t n, unsigned t);

struct WitnessQuery {
  std::vector<std::uint32_t> include;  // A: must be adjacent to all
  std::vector<std::uint32_t> exclude;  // B: must be adjacent to none
  std::uint32_t from = 0;
};

/// Vertices v >= from, v outside A and B, adjacent to all of A, none of B.
std::uint64_t count_witnesses(const GrowthGraph& g, const WitnessQuery& q);

/// Truncated no-witness probability prod_{n=N..M} (1 - p_n) for k-sets.
Rat no_witness_tail_probability(const DegreeSequence& seq, std::uint64_t k, std::uint64_t N,
                                std::uint64_t M, std::optional<std::uint64_t> seed = {});

}  // namespace radolab
