#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "radolab/engine.hpp"
#include "radolab/rational.hpp"
#include "radolab/sequence.hpp"
#include "radolab/stats.hpp"

namespace radolab {

/// Incremental component analytics over a growth run: union-find with
/// per-component size, edge count and max degree, a census of tree
/// components by size, and the zero-round counter. Owned by one growth
/// run's thread.
class ComponentTracker : public RoundObserver {
 public:
  void on_round(std::uint32_t round, std::span<const std::uint32_t> birth_set,
                const GrowthGraph& graph) override;

  /// Adds vertex `size()` and applies its back-edges.
  void observe_round(std::span<const std::uint32_t> birth_set);

  std::uint32_t size() const { return (std::uint32_t)parent_.size(); }
  std::uint64_t component_count() const { return component_count_; }
  std::uint64_t zero_rounds() const { return zero_rounds_; }

  /// size -> number of tree components of that size.
  const std::map<std::uint64_t, std::uint64_t>& tree_census() const { return tree_census_; }

  std::uint64_t component_size(std::uint32_t v) const;
  bool component_is_tree(std::uint32_t v) const;
  std::uint32_t vertex_degree(std::uint32_t v) const { return degree_.at(v); }

  /// (true, l) iff v's component is K_{1,l}; a singleton is a 0-star.
  std::pair<bool, std::optional<std::uint64_t>> star_of(std::uint32_t v) const;

  /// l -> number of l-star components.
  std::map<std::uint64_t, std::uint64_t> star_census() const;

  /// {"horizon": last round index, "census": {...}, "zero_count": z,
  ///  "stars": {...}}
  std::string census_json() const;

 private:
  std::uint32_t find(std::uint32_t v) const;

  struct RootInfo {
    std::uint64_t size = 1;
    std::uint64_t edges = 0;
    std::uint32_t max_degree = 0;
  };

  mutable std::vector<std::uint32_t> parent_;
  std::vector<RootInfo> info_;  // valid at roots
  std::vector<std::uint32_t> degree_;
  std::map<std::uint64_t, std::uint64_t> tree_census_;
  std::uint64_t zero_rounds_ = 0;
  std::uint64_t component_count_ = 0;
};

/// Exact a(k)_i table for zero-one sequences: a(1)_0 = 1, and for i >= 1
///   a(1)_i = a(1)_{i-1}(1 - d_i/i) + (1 - d_i)
///   a(k)_i = a(k)_{i-1} + (k-1)a(k-1)_{i-1}d_i/i - k a(k)_{i-1}d_i/i.
class ExpectationTable {
 public:
  ExpectationTable(const DegreeSequence& seq, unsigned k_max, std::uint64_t horizon,
                   std::optional<std::uint64_t> seed = {});

  unsigned k_max() const { return (unsigned)rows_.size(); }
  std::uint64_t horizon() const { return horizon_; }
  const Rat& value(unsigned k, std::uint64_t i) const;

 private:
  std::uint64_t horizon_;
  std::vector<std::vector<Rat>> rows_;  // rows_[k-1][i]
};

struct CensusCheckEntry {
  unsigned k = 0;
  std::uint64_t i = 0;
  StatLine stat;
};

struct CensusCheckReport {
  std::vector<CensusCheckEntry> entries;
  std::uint64_t zero_one_law_violations = 0;  // rounds where components != zeros
  bool all_pass() const;
};

/// Replicated growth runs compared against the expectation table on a
/// (k, i) grid at 3 standard errors.
CensusCheckReport census_mc_check(const DegreeSequence& seq, unsigned k_max,
                                  std::uint64_t horizon, std::uint64_t replicas,
                                  std::uint64_t base_seed,
                                  const std::vector<std::pair<unsigned, std::uint64_t>>& grid,
                                  unsigned workers = 1);

struct BoundViolation {
  unsigned k = 0;
  std::uint64_t i = 0;
  std::string which;
};

struct BoundsCheckReport {
  std::vector<BoundViolation> violations;
  bool checked_lower_trees = false;
  std::optional<std::uint64_t> lower_trees_threshold;  // the N with 2 s_n/n <= 1/2 onward
  bool all_hold() const { return violations.empty(); }
};

/// Exact flanking bounds on the a(k) table with explicit constants:
///   Q_k * sum_{j=k..i} a(k-1)_{j-1} d_j/j <= a(k)_i
///                     <= k * sum_{j=1..i} a(k-1)_{j-1} d_j/j,
///   a(k)_i <= k! * sum_{j<=i} d_j t_{j+1,H}^{k-2},
/// and, for registered sparse families, the tree lower bounds built from
/// increasing-tuple weight sums (checked on a small i-grid).
BoundsCheckReport recursion_bounds_check(const ExpectationTable& table,
                                         const SeriesLedger& ledger, Sparsity sparsity);

struct AtomThresholdReport {
  std::vector<std::pair<unsigned, Rat>> partial_sums;  // kappa -> truncated sum
  std::uint64_t truncation = 0;
  std::optional<unsigned> registered_threshold;
  bool dense_branch = false;               // registered dense: thm-zo(i) regime
  bool assumption_flag = false;            // degree support dies out in the window
  std::uint64_t ones_in_window = 0;
  std::string note;
};

/// Truncated sums sum_{l<=H} d_l t_{l+1,H}^{kappa-2} for kappa = 2..k_probe_max
/// plus the registered analytic threshold when the family carries one.
AtomThresholdReport zero_one_atom_threshold(const DegreeSequence& seq, std::uint64_t horizon,
                                            unsigned k_probe_max,
                                            std::optional<std::uint64_t> seed = {});

/// True iff the graph contains a simple path of length k (k edges) starting
/// at v_start whose other vertices all have index > start. Diagnostic DFS;
/// keep horizons modest.
bool longest_new_path_probe(const GrowthGraph& g, std::uint32_t start, unsigned k);

}  // namespace radolab
