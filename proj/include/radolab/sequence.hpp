#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "radolab/rational.hpp"

namespace radolab {

enum class SequenceKind {
  Explicit,
  ConstFraction,
  ZeroOnePattern,
  TriangleConstruction,
  Bernoulli,
  AllOnesAfterZero,
  PowerSupport,   // d_i = 1 iff i = base^j
  SquareSupport,  // d_i = 1 iff i = j^2
};

/// Analytic classification registered per family.
///   Dense:      sum d_i/i = inf
///   Sparse:     sum d_i/i < inf
///   VerySparse: sum s_i d_i/i < inf (implies Sparse)
enum class Sparsity { Unregistered, Dense, Sparse, VerySparse };

/// A degree-sequence rule d_i with 0 <= d_i <= i. Immutable after
/// construction; deterministic kinds answer identically on repeated queries,
/// Bernoulli is a pure function of (seed, i).
class DegreeSequence {
 public:
  static DegreeSequence explicit_values(std::vector<std::uint32_t> values);
  static DegreeSequence const_fraction(const Rat& alpha);
  static DegreeSequence zero_one_pattern(std::vector<bool> pattern,
                                         std::vector<bool> prefix = {});
  static DegreeSequence bernoulli(const Rat& p,
                                  std::optional<std::uint64_t> default_seed = {});
  static DegreeSequence all_ones_after_zero();
  static DegreeSequence power_support(std::uint64_t base);
  static DegreeSequence square_support();

  SequenceKind kind() const { return kind_; }
  Sparsity sparsity() const { return sparsity_; }
  const std::string& family_note() const { return note_; }

  /// Registered smallest kappa >= 2 with sum_l d_l t_{l+1}^{kappa-2} < inf,
  /// when derivable for the family; nullopt means diagnostics only.
  std::optional<unsigned> atom_threshold() const { return atom_threshold_; }

  /// Last index with a defined value, for finite-domain kinds.
  std::optional<std::uint64_t> max_index() const;

  /// d_i. Seed is consulted only by Bernoulli (argument wins over the seed
  /// stored at construction; missing both is an error).
  std::uint32_t degree(std::uint64_t i, std::optional<std::uint64_t> seed = {}) const;

  bool needs_seed() const { return kind_ == SequenceKind::Bernoulli; }

  /// True if d_i <= 1 for every i <= horizon (Bernoulli is zero-one by
  /// construction; Explicit is scanned).
  bool zero_one_up_to(std::uint64_t horizon) const;

  const std::vector<std::uint32_t>& explicit_list() const;
  /// Positions of the inserted 2's (TriangleConstruction only).
  const std::vector<std::uint64_t>& two_positions() const;

 private:
  struct ExplicitData {
    std::vector<std::uint32_t> values;
  };
  struct ConstFractionData {
    Rat alpha;
  };
  struct PatternData {
    std::vector<bool> prefix, pattern;
  };
  struct TriangleData {
    std::vector<std::uint64_t> twos;  // sorted insertion positions
  };
  struct BernoulliData {
    Rat p;
    std::uint64_t num, den;  // p = num/den, den <= 2^32
    std::optional<std::uint64_t> seed;
  };
  struct OnesData {};
  struct PowerData {
    std::uint64_t base;
  };
  struct SquareData {};

  using Data = std::variant<ExplicitData, ConstFractionData, PatternData, TriangleData,
                            BernoulliData, OnesData, PowerData, SquareData>;

  DegreeSequence(SequenceKind kind, Data data, Sparsity sparsity, std::string note,
                 std::optional<unsigned> atom_threshold = {});

  SequenceKind kind_;
  Data data_;
  Sparsity sparsity_;
  std::string note_;
  std::optional<unsigned> atom_threshold_;

  friend struct TriangleConstructionResult;
  friend TriangleConstructionResult build_triangle_construction(unsigned rounds);
};

/// The §3-style sequence 0,1,1,2,... with `rounds` inserted 2's, plus the
/// exact per-insertion triangle probabilities p_l.
struct TriangleConstructionResult {
  DegreeSequence sequence;
  std::vector<std::uint64_t> two_positions;
  std::vector<Rat> triangle_probabilities;
  Rat probability_sum;  // sum of p_l, always in [2/3, 3/4)
};

TriangleConstructionResult build_triangle_construction(unsigned rounds);

/// Exact scalar ledgers over a materialized horizon: s_n, t_{n,m}, a_n.
/// Immutable and shareable after construction.
class SeriesLedger {
 public:
  SeriesLedger(const DegreeSequence& seq, std::uint64_t horizon,
               std::optional<std::uint64_t> seed = {});

  std::uint64_t horizon() const { return horizon_; }
  std::uint32_t degree(std::uint64_t n) const;

  /// s_n = sum_{i=0..n} d_i.
  std::uint64_t prefix_sum(std::uint64_t n) const;

  /// t_{n,m} = sum_{i=n..m} d_i/i, exact. Requires 1 <= n, n <= m+1 (empty
  /// window when n = m+1), m <= horizon.
  Rat tail_sum(std::uint64_t n, std::uint64_t m) const;

  /// a_n = min(d_n/n, (n-d_n)/n), n >= 1.
  Rat min_ratio(std::uint64_t n) const;

  const std::vector<std::uint32_t>& degrees() const { return degrees_; }

 private:
  void check(std::uint64_t n) const;
  std::uint64_t horizon_;
  std::vector<std::uint32_t> degrees_;  // index 0..horizon
  std::vector<std::uint64_t> prefix_;   // s_n
};

/// Right-to-left sweep of t_{n,M} for consumers that need every tail of a
/// fixed window without storing them all.
class TailSweep {
 public:
  TailSweep(const SeriesLedger& ledger, std::uint64_t window_end);
  /// Steps n from window_end down to 1; current() is t_{n,M} after advance().
  bool advance();
  std::uint64_t index() const { return n_; }
  const Rat& current() const { return tail_; }

 private:
  const SeriesLedger& ledger_;
  std::uint64_t n_;
  Rat tail_;
};

/// Mini-language: "explicit:0,1,1,2", "explicit@FILE", "const-frac:1/2",
/// "zero-one:pattern=011[,prefix=0]", "triangle:rounds=3",
/// "bernoulli:p=1/2,seed=42", "ones", "powers:base=4", "squares".
/// Errors name the offending token and its position.
DegreeSequence parse_sequence_spec(const std::string& spec);

}  // namespace radolab
