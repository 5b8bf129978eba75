#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "radolab/rational.hpp"
#include "radolab/sequence.hpp"
#include "radolab/stats.hpp"

namespace radolab {

enum class Preset {
  TriangleNonConcentration,
  WitnessLaw,
  CensusVsExpectation,
  StarRegime,
  RayBound,
  DoubleRandomTails,
  DegreeGrowth,
};

std::string preset_name(Preset p);
std::optional<Preset> preset_from_name(const std::string& name);

struct WitnessCase {
  std::uint64_t n = 0;
  std::uint64_t d = 0;
  std::uint64_t k = 1;
};

struct ExperimentPlan {
  Preset preset = Preset::TriangleNonConcentration;
  std::string seq_spec;  // mini-language; empty where the preset needs none
  std::uint64_t horizon = 0;
  std::uint64_t replicas = 2;
  std::uint64_t base_seed = 0;

  unsigned rounds = 2;                                        // triangle
  std::vector<WitnessCase> witness_cases;                     // witness law
  unsigned k_max = 5;                                         // census
  std::vector<std::pair<unsigned, std::uint64_t>> census_grid;
  std::vector<std::uint64_t> probe_starts{10, 50};            // ray bound
  std::vector<unsigned> probe_lengths{2, 3, 4};
  Rat bernoulli_p = Rat(1, 2);                                // double random
  std::vector<std::uint64_t> n_grid;                          // double random / checkpoints
  std::uint64_t tail_threshold = 1;                           // chebyshev M
};

struct ExperimentReport {
  std::string preset;
  std::string seq;
  std::uint64_t horizon = 0;
  std::uint64_t replicas = 0;
  std::uint64_t base_seed = 0;
  std::vector<StatLine> stats;
  std::uint64_t wall_ms = 0;

  bool all_pass() const;
  /// wall_ms serializes as 0 unless with_timing, so identical plans produce
  /// byte-identical reports.
  std::string to_json(bool with_timing = false) const;
  std::string stats_csv() const;
  /// (x, y, band) table: stat index, mean, 3*SE.
  std::string plot_csv() const;
};

/// Executes a plan. Replica r uses ProcessRng{base_seed, r}; results are
/// deterministic for fixed (plan, base_seed) regardless of workers.
ExperimentReport run(const ExperimentPlan& plan, unsigned workers = 1);

/// A 12-case default grid for the witness-law preset (n <= 40).
std::vector<WitnessCase> default_witness_grid();

/// Tail table rows for the Bernoulli-degree Chebyshev check; exposed for the
/// CLI and acceptance suite via run() with Preset::DoubleRandomTails.
}  // namespace radolab
