#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "radolab/rng.hpp"
#include "radolab/sequence.hpp"

namespace radolab {

/// The realized graph of one growth run. Mutated only by grow()/append_round
/// on a single thread; immutable and shareable afterwards. Neighbor lists are
/// materialized lazily on first adjacency query.
class GrowthGraph {
 public:
  explicit GrowthGraph(std::uint64_t seed = 0) : seed_(seed) {}

  std::uint32_t size() const { return (std::uint32_t)birth_sets_.size(); }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t edge_count() const { return edge_count_; }

  /// Back-neighbors chosen at vertex v's own round, sorted ascending.
  std::span<const std::uint32_t> birth_set(std::uint32_t v) const;

  /// Full neighbor list (birth set plus later attachments), sorted.
  const std::vector<std::uint32_t>& neighbors(std::uint32_t v) const;
  std::uint32_t degree(std::uint32_t v) const { return (std::uint32_t)neighbors(v).size(); }

  /// Appends vertex `size()` with the given back-neighbors. Validates the
  /// birth-set contract (entries < vertex, strictly ascending after sort).
  void append_round(std::vector<std::uint32_t> birth);

  /// Structural invariants: edge symmetry, birth-set sizes, no self loops.
  /// Throws std::logic_error on violation.
  void validate() const;

  /// Text dump: "n=<count> seed=<u64>" then one "i: <sorted birth set>" line
  /// per vertex. Lossless round-trip with parse().
  void dump(std::ostream& out) const;
  static GrowthGraph parse(std::istream& in);

 private:
  void build_adjacency() const;

  std::vector<std::vector<std::uint32_t>> birth_sets_;
  mutable std::vector<std::vector<std::uint32_t>> adjacency_;
  mutable bool adjacency_built_ = false;
  std::uint64_t edge_count_ = 0;
  std::uint64_t seed_ = 0;
};

/// Per-round callback; invoked after the round's edges are committed, in
/// round order. Observers must not mutate the graph.
class RoundObserver {
 public:
  virtual ~RoundObserver() = default;
  virtual void on_round(std::uint32_t round, std::span<const std::uint32_t> birth_set,
                        const GrowthGraph& graph) = 0;
};

/// Uniform d-subset of {0,...,population-1}, sorted ascending. Partial
/// Fisher-Yates over an implicit index range: hash-map overrides when
/// d/population < 1/64, a dense swap array otherwise.
std::vector<std::uint32_t> sample_uniform_subset(RngEngine& rng, std::uint64_t population,
                                                 std::uint64_t subset_size);

/// Runs the growth process for `rounds` rounds. Identical (seq, rounds, rng)
/// give bit-identical graphs regardless of observers or thread count.
GrowthGraph grow(const DegreeSequence& seq, std::uint32_t rounds, ProcessRng rng,
                 std::span<RoundObserver* const> observers = {});

/// Exact number of vertex triples spanning a triangle.
std::uint64_t count_triangles(const GrowthGraph& g);

}  // namespace radolab
