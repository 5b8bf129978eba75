#include "radolab/engine.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace radolab {

std::span<const std::uint32_t> GrowthGraph::birth_set(std::uint32_t v) const {
  if (v >= size()) throw std::out_of_range("vertex index out of range");
  return birth_sets_[v];
}

const std::vector<std::uint32_t>& GrowthGraph::neighbors(std::uint32_t v) const {
  if (v >= size()) throw std::out_of_range("vertex index out of range");
  if (!adjacency_built_) build_adjacency();
  return adjacency_[v];
}

void GrowthGraph::build_adjacency() const {
  adjacency_.assign(birth_sets_.size(), {});
  for (std::uint32_t v = 0; v < birth_sets_.size(); ++v) {
    for (std::uint32_t u : birth_sets_[v]) {
      adjacency_[v].push_back(u);
      adjacency_[u].push_back(v);
    }
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
  adjacency_built_ = true;
}

void GrowthGraph::append_round(std::vector<std::uint32_t> birth) {
  const std::uint32_t v = size();
  std::sort(birth.begin(), birth.end());
  for (std::size_t j = 0; j < birth.size(); ++j) {
    if (birth[j] >= v) throw std::logic_error("birth set entry not an earlier vertex");
    if (j > 0 && birth[j] == birth[j - 1]) throw std::logic_error("duplicate birth set entry");
  }
  edge_count_ += birth.size();
  birth_sets_.push_back(std::move(birth));
  adjacency_built_ = false;
}

void GrowthGraph::validate() const {
  std::uint64_t edges = 0;
  for (std::uint32_t v = 0; v < size(); ++v) {
    const auto& bs = birth_sets_[v];
    edges += bs.size();
    for (std::size_t j = 0; j < bs.size(); ++j) {
      if (bs[j] >= v) throw std::logic_error("birth set violates index order");
      if (j > 0 && bs[j] <= bs[j - 1]) throw std::logic_error("birth set not strictly sorted");
    }
  }
  if (edges != edge_count_) throw std::logic_error("edge count mismatch");
  for (std::uint32_t v = 0; v < size(); ++v) {
    for (std::uint32_t u : neighbors(v)) {
      if (u == v) throw std::logic_error("self loop");
      const auto& back = neighbors(u);
      if (!std::binary_search(back.begin(), back.end(), v))
        throw std::logic_error("adjacency not symmetric");
    }
  }
}

void GrowthGraph::dump(std::ostream& out) const {
  out << "n=" << size() << " seed=" << seed_ << "\n";
  for (std::uint32_t v = 0; v < size(); ++v) {
    out << v << ":";
    for (std::uint32_t u : birth_sets_[v]) out << " " << u;
    out << "\n";
  }
}

GrowthGraph GrowthGraph::parse(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw std::invalid_argument("empty graph dump");
  std::uint64_t n = 0, seed = 0;
  if (std::sscanf(header.c_str(), "n=%llu seed=%llu", (unsigned long long*)&n,
                  (unsigned long long*)&seed) != 2)
    throw std::invalid_argument("malformed graph dump header: " + header);
  GrowthGraph g(seed);
  std::string line;
  for (std::uint64_t v = 0; v < n; ++v) {
    if (!std::getline(in, line))
      throw std::invalid_argument("graph dump truncated at vertex " + std::to_string(v));
    std::istringstream ls(line);
    std::string label;
    ls >> label;
    if (label != std::to_string(v) + ":")
      throw std::invalid_argument("graph dump: expected vertex " + std::to_string(v) +
                                  ", got '" + line + "'");
    std::vector<std::uint32_t> birth;
    std::uint64_t u;
    while (ls >> u) birth.push_back((std::uint32_t)u);
    g.append_round(std::move(birth));
  }
  return g;
}

std::vector<std::uint32_t> sample_uniform_subset(RngEngine& rng, std::uint64_t population,
                                                 std::uint64_t subset_size) {
  if (subset_size > population)
    throw std::invalid_argument("subset size exceeds population");
  std::vector<std::uint32_t> out;
  out.reserve(subset_size);
  if (subset_size == 0) return out;

  if (subset_size * 64 < population) {
    // Sparse: implicit array with hash-map overrides, O(d) expected space.
    std::unordered_map<std::uint64_t, std::uint64_t> override;
    override.reserve(2 * subset_size);
    auto value_at = [&](std::uint64_t idx) {
      auto it = override.find(idx);
      return it == override.end() ? idx : it->second;
    };
    for (std::uint64_t j = 0; j < subset_size; ++j) {
      const std::uint64_t r = j + rng.bounded(population - j);
      const std::uint64_t picked = value_at(r);
      override[r] = value_at(j);
      out.push_back((std::uint32_t)picked);
    }
  } else {
    std::vector<std::uint32_t> pool(population);
    for (std::uint64_t i = 0; i < population; ++i) pool[i] = (std::uint32_t)i;
    for (std::uint64_t j = 0; j < subset_size; ++j) {
      const std::uint64_t r = j + rng.bounded(population - j);
      std::swap(pool[j], pool[r]);
      out.push_back(pool[j]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

GrowthGraph grow(const DegreeSequence& seq, std::uint32_t rounds, ProcessRng rng,
                 std::span<RoundObserver* const> observers) {
  if (rounds < 1) throw std::invalid_argument("grow needs at least one round");
  RngEngine engine(rng);
  const std::optional<std::uint64_t> degree_seed =
      seq.needs_seed() ? std::optional<std::uint64_t>(derive_degree_seed(rng.seed, rng.stream))
                       : std::nullopt;

  GrowthGraph g(rng.seed);
  for (std::uint32_t i = 0; i < rounds; ++i) {
    const std::uint32_t d = seq.degree(i, degree_seed);
    g.append_round(sample_uniform_subset(engine, i, d));
    for (auto* obs : observers) obs->on_round(i, g.birth_set(i), g);
  }
  return g;
}

std::uint64_t count_triangles(const GrowthGraph& g) {
  std::uint64_t count = 0;
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    const auto& nv = g.neighbors(v);
    for (std::uint32_t u : nv) {
      if (u <= v) continue;
      // common neighbors w > u close each triangle exactly once
      const auto& nu = g.neighbors(u);
      auto it1 = std::upper_bound(nv.begin(), nv.end(), u);
      auto it2 = std::upper_bound(nu.begin(), nu.end(), u);
      while (it1 != nv.end() && it2 != nu.end()) {
        if (*it1 < *it2)
          ++it1;
        else if (*it2 < *it1)
          ++it2;
        else {
          ++count;
          ++it1;
          ++it2;
        }
      }
    }
  }
  return count;
}

}  // namespace radolab
