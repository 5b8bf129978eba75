#include "radolab/components.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "radolab/series.hpp"

namespace radolab {

void ComponentTracker::on_round(std::uint32_t round, std::span<const std::uint32_t> birth_set,
                                const GrowthGraph&) {
  if (round != size()) throw std::logic_error("tracker out of sync with growth run");
  observe_round(birth_set);
}

std::uint32_t ComponentTracker::find(std::uint32_t v) const {
  while (parent_[v] != v) {
    parent_[v] = parent_[parent_[v]];  // path halving
    v = parent_[v];
  }
  return v;
}

void ComponentTracker::observe_round(std::span<const std::uint32_t> birth_set) {
  const std::uint32_t v = size();
  parent_.push_back(v);
  info_.push_back(RootInfo{});
  degree_.push_back(0);
  ++component_count_;
  ++tree_census_[1];
  if (birth_set.empty()) ++zero_rounds_;

  for (std::uint32_t u : birth_set) {
    if (u >= v) throw std::logic_error("birth set entry not an earlier vertex");
    ++degree_[v];
    ++degree_[u];
    std::uint32_t rv = find(v);
    std::uint32_t ru = find(u);
    if (rv == ru) {
      RootInfo& r = info_[rv];
      if (r.edges == r.size - 1) {
        auto it = tree_census_.find(r.size);
        if (--it->second == 0) tree_census_.erase(it);
      }
      ++r.edges;  // cycle closed; component stops being a tree
      r.max_degree = std::max({r.max_degree, degree_[v], degree_[u]});
      continue;
    }
    if (info_[rv].size < info_[ru].size) std::swap(rv, ru);
    RootInfo& big = info_[rv];
    RootInfo& small = info_[ru];
    if (big.edges == big.size - 1) {
      auto it = tree_census_.find(big.size);
      if (--it->second == 0) tree_census_.erase(it);
    }
    if (small.edges == small.size - 1) {
      auto it = tree_census_.find(small.size);
      if (--it->second == 0) tree_census_.erase(it);
    }
    parent_[ru] = rv;
    big.size += small.size;
    big.edges += small.edges + 1;
    big.max_degree = std::max({big.max_degree, small.max_degree, degree_[v], degree_[u]});
    --component_count_;
    if (big.edges == big.size - 1) ++tree_census_[big.size];
  }
}

std::uint64_t ComponentTracker::component_size(std::uint32_t v) const {
  if (v >= size()) throw std::out_of_range("vertex out of range");
  return info_[find(v)].size;
}

bool ComponentTracker::component_is_tree(std::uint32_t v) const {
  if (v >= size()) throw std::out_of_range("vertex out of range");
  const RootInfo& r = info_[find(v)];
  return r.edges == r.size - 1;
}

std::pair<bool, std::optional<std::uint64_t>> ComponentTracker::star_of(std::uint32_t v) const {
  if (v >= size()) throw std::out_of_range("vertex out of range");
  const RootInfo& r = info_[find(v)];
  const bool tree = r.edges == r.size - 1;
  const bool star = tree && (r.size <= 2 || r.max_degree == r.size - 1);
  if (!star) return {false, std::nullopt};
  return {true, r.size - 1};
}

std::map<std::uint64_t, std::uint64_t> ComponentTracker::star_census() const {
  std::map<std::uint64_t, std::uint64_t> out;
  for (std::uint32_t v = 0; v < size(); ++v) {
    if (find(v) != v) continue;
    const auto [star, l] = star_of(v);
    if (star) ++out[*l];
  }
  return out;
}

std::string ComponentTracker::census_json() const {
  nlohmann::ordered_json j;
  j["horizon"] = size() == 0 ? 0 : size() - 1;
  nlohmann::ordered_json census = nlohmann::ordered_json::object();
  for (const auto& [sz, count] : tree_census_) census[std::to_string(sz)] = count;
  j["census"] = census;
  j["zero_count"] = zero_rounds_;
  nlohmann::ordered_json stars = nlohmann::ordered_json::object();
  for (const auto& [l, count] : star_census()) stars[std::to_string(l)] = count;
  j["stars"] = stars;
  return j.dump();
}

// --- expectation table -------------------------------------------------------

ExpectationTable::ExpectationTable(const DegreeSequence& seq, unsigned k_max,
                                   std::uint64_t horizon, std::optional<std::uint64_t> seed)
    : horizon_(horizon) {
  if (k_max < 1) throw std::invalid_argument("expectation table needs k_max >= 1");
  rows_.assign(k_max, std::vector<Rat>(horizon + 1, Rat(0)));
  rows_[0][0] = 1;  // a(1)_0: the first vertex is a singleton

  for (std::uint64_t i = 1; i <= horizon; ++i) {
    const std::uint32_t d = seq.degree(i, seed);
    if (d > 1)
      throw std::invalid_argument(
          "expectation recursion applies to zero-one sequences only (d_" + std::to_string(i) +
          " = " + std::to_string(d) + ")");
    if (d == 0) {
      for (unsigned k = 1; k <= k_max; ++k) rows_[k - 1][i] = rows_[k - 1][i - 1];
      rows_[0][i] += 1;
      continue;
    }
    Rat inv_i(1, (unsigned long)i);
    inv_i.canonicalize();
    rows_[0][i] = rows_[0][i - 1] * (Rat(1) - inv_i);
    for (unsigned k = 2; k <= k_max; ++k) {
      rows_[k - 1][i] = rows_[k - 1][i - 1] +
                        Rat((unsigned long)(k - 1)) * rows_[k - 2][i - 1] * inv_i -
                        Rat((unsigned long)k) * rows_[k - 1][i - 1] * inv_i;
    }
  }
}

const Rat& ExpectationTable::value(unsigned k, std::uint64_t i) const {
  if (k < 1 || k > rows_.size()) throw std::out_of_range("expectation table: k out of range");
  if (i > horizon_) throw std::out_of_range("expectation table: index beyond horizon");
  return rows_[k - 1][i];
}

// --- census Monte Carlo check --------------------------------------------------

bool CensusCheckReport::all_pass() const {
  if (zero_one_law_violations != 0) return false;
  return std::all_of(entries.begin(), entries.end(),
                     [](const CensusCheckEntry& e) { return e.stat.pass; });
}

namespace {

struct CensusSnapshotObserver : RoundObserver {
  ComponentTracker tracker;
  const std::vector<std::uint64_t>* snapshot_rounds = nullptr;
  std::vector<std::map<std::uint64_t, std::uint64_t>> snapshots;
  std::uint64_t law_violations = 0;

  void on_round(std::uint32_t round, std::span<const std::uint32_t> birth_set,
                const GrowthGraph& graph) override {
    tracker.on_round(round, birth_set, graph);
    if (tracker.component_count() != tracker.zero_rounds()) ++law_violations;
    if (std::binary_search(snapshot_rounds->begin(), snapshot_rounds->end(), round))
      snapshots.push_back(tracker.tree_census());
  }
};

}  // namespace

CensusCheckReport census_mc_check(const DegreeSequence& seq, unsigned k_max,
                                  std::uint64_t horizon, std::uint64_t replicas,
                                  std::uint64_t base_seed,
                                  const std::vector<std::pair<unsigned, std::uint64_t>>& grid,
                                  unsigned workers) {
  if (!seq.zero_one_up_to(horizon))
    throw std::invalid_argument("census check requires a zero-one sequence");
  for (const auto& [k, i] : grid)
    if (k < 1 || k > k_max || i > horizon)
      throw std::invalid_argument("census grid point out of range");

  std::vector<std::uint64_t> snapshot_rounds;
  for (const auto& [k, i] : grid) snapshot_rounds.push_back(i);
  std::sort(snapshot_rounds.begin(), snapshot_rounds.end());
  snapshot_rounds.erase(std::unique(snapshot_rounds.begin(), snapshot_rounds.end()),
                        snapshot_rounds.end());

  // per replica: census count at each (snapshot index, k)
  struct ReplicaResult {
    std::vector<std::int64_t> counts;
    std::uint64_t law_violations = 0;
  };
  std::vector<ReplicaResult> results(replicas);

  auto run_replica = [&](std::uint64_t r) {
    CensusSnapshotObserver obs;
    obs.snapshot_rounds = &snapshot_rounds;
    RoundObserver* obs_ptr = &obs;
    grow(seq, (std::uint32_t)(horizon + 1), ProcessRng{base_seed, r}, {&obs_ptr, 1});
    ReplicaResult res;
    res.law_violations = obs.law_violations;
    for (std::size_t s = 0; s < snapshot_rounds.size(); ++s) {
      for (unsigned k = 1; k <= k_max; ++k) {
        const auto& census = obs.snapshots.at(s);
        auto it = census.find(k);
        res.counts.push_back(it == census.end() ? 0 : (std::int64_t)it->second);
      }
    }
    results[r] = std::move(res);
  };

  if (workers <= 1) {
    for (std::uint64_t r = 0; r < replicas; ++r) run_replica(r);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::uint64_t r = next.fetch_add(1); r < replicas; r = next.fetch_add(1))
          run_replica(r);
      });
    for (auto& t : pool) t.join();
  }

  ExpectationTable table(seq, k_max, horizon);
  CensusCheckReport report;
  for (const auto& [k, i] : grid) {
    const std::size_t s =
        std::lower_bound(snapshot_rounds.begin(), snapshot_rounds.end(), i) -
        snapshot_rounds.begin();
    CountAccumulator acc;
    for (std::uint64_t r = 0; r < replicas; ++r)
      acc.add(results[r].counts[s * k_max + (k - 1)]);
    CensusCheckEntry entry;
    entry.k = k;
    entry.i = i;
    entry.stat = make_equality_stat(
        "census_k" + std::to_string(k) + "_i" + std::to_string(i), acc, table.value(k, i));
    report.entries.push_back(std::move(entry));
  }
  for (std::uint64_t r = 0; r < replicas; ++r)
    report.zero_one_law_violations += results[r].law_violations;
  return report;
}

// --- recursion bound checks -----------------------------------------------------

BoundsCheckReport recursion_bounds_check(const ExpectationTable& table,
                                         const SeriesLedger& ledger, Sparsity sparsity) {
  const std::uint64_t horizon = std::min(table.horizon(), ledger.horizon());
  for (std::uint64_t i = 0; i <= horizon; ++i)
    if (ledger.degree(i) > 1)
      throw std::invalid_argument("bound checks apply to zero-one sequences only");

  BoundsCheckReport report;

  // tails t_{j+1,H} at support indices, one right-to-left sweep
  std::vector<std::pair<std::uint64_t, Rat>> support_tails;  // ascending by j
  {
    Rat tail(0);
    std::vector<std::pair<std::uint64_t, Rat>> reversed;
    for (std::uint64_t j = horizon; j >= 1; --j) {
      if (ledger.degree(j) == 1) reversed.emplace_back(j, tail);
      Rat term(ledger.degree(j), (unsigned long)j);
      term.canonicalize();
      tail += term;
    }
    support_tails.assign(reversed.rbegin(), reversed.rend());
  }

  for (unsigned k = 2; k <= table.k_max(); ++k) {
    // Q_k = prod_{l=k+1..H} (1 - k d_l/l)
    Rat q(1);
    for (std::uint64_t l = k + 1; l <= horizon; ++l) {
      if (ledger.degree(l) == 0) continue;
      Rat factor((unsigned long)(l - k), (unsigned long)l);
      factor.canonicalize();
      q *= factor;
    }

    Rat sum_full(0);   // sum_{j=1..i} a(k-1)_{j-1} d_j / j
    Rat sum_from_k(0);
    Rat upbd_sum(0);   // sum_{j=1..i} d_j t_{j+1,H}^{k-2}
    std::size_t support_pos = 0;
    const Rat k_factorial(falling_factorial(k, k));
    for (std::uint64_t i = 1; i <= horizon; ++i) {
      if (ledger.degree(i) == 1) {
        Rat inv(1, (unsigned long)i);
        inv.canonicalize();
        const Rat term = table.value(k - 1, i - 1) * inv;
        sum_full += term;
        if (i >= k) sum_from_k += term;
        upbd_sum += rat_pow(support_tails[support_pos].second, k - 2);
        ++support_pos;
      }
      const Rat& a_ki = table.value(k, i);
      if (a_ki < q * sum_from_k)
        report.violations.push_back({k, i, "recursion-lower"});
      if (a_ki > Rat((unsigned long)k) * sum_full)
        report.violations.push_back({k, i, "recursion-upper"});
      if (a_ki > k_factorial * upbd_sum)
        report.violations.push_back({k, i, "tail-upper"});
    }
  }

  // Tree lower bounds, sparse families only: need N with 2 s_n/n <= 1/2 onward.
  if (sparsity == Sparsity::Sparse || sparsity == Sparsity::VerySparse) {
    std::optional<std::uint64_t> threshold;
    {
      std::uint64_t last_bad = 1;
      for (std::uint64_t m = 2; m <= horizon; ++m)
        if (4 * ledger.prefix_sum(m) > m) last_bad = m;
      if (last_bad + 1 <= horizon) threshold = std::max<std::uint64_t>(2, last_bad + 1);
    }
    if (threshold) {
      report.checked_lower_trees = true;
      report.lower_trees_threshold = threshold;
      const std::uint64_t N = *threshold;
      auto window_sum = [&](std::uint64_t from, std::uint64_t to) {  // s_{from,to}
        if (from > to) return (std::uint64_t)0;
        return ledger.prefix_sum(to) - (from == 0 ? 0 : ledger.prefix_sum(from - 1));
      };
      // C_2 = Q_2/2, C_k = Q_k C_{k-1}
      std::vector<Rat> q_consts(table.k_max() + 1, Rat(1));
      for (unsigned k = 2; k <= table.k_max(); ++k) {
        Rat q(1);
        for (std::uint64_t l = k + 1; l <= horizon; ++l) {
          if (ledger.degree(l) == 0) continue;
          Rat factor((unsigned long)(l - k), (unsigned long)l);
          factor.canonicalize();
          q *= factor;
        }
        q_consts[k] = q;
      }
      std::vector<Rat> c_consts(table.k_max() + 1, Rat(0));
      if (table.k_max() >= 2) c_consts[2] = q_consts[2] / 2;
      for (unsigned k = 3; k <= table.k_max(); ++k) c_consts[k] = q_consts[k] * c_consts[k - 1];

      std::vector<std::uint64_t> probe_is{horizon, horizon / 2, (3 * horizon) / 4};
      std::sort(probe_is.begin(), probe_is.end());
      probe_is.erase(std::unique(probe_is.begin(), probe_is.end()), probe_is.end());
      for (std::uint64_t i : probe_is) {
        if (i < N) continue;
        if (table.k_max() >= 2 &&
            table.value(2, i) < c_consts[2] * Rat(BigInt(window_sum(N, i))))
          report.violations.push_back({2, i, "lower-trees"});
        for (unsigned k = 3; k <= table.k_max(); ++k) {
          if (i + 3 < (std::uint64_t)k + 3) continue;
          Rat rhs(0);
          for (std::uint64_t j = 3; j + k <= i + 3; ++j) {
            const std::uint64_t s_window = window_sum(N, j - 1);
            if (s_window == 0) continue;
            const Rat b = family_weight_sum(
                ledger, FamilySpec{TupleFamily::IncreasingMin, k - 2, j}, i);
            rhs += Rat(BigInt(s_window)) * b;
          }
          if (table.value(k, i) < c_consts[k] * rhs)
            report.violations.push_back({k, i, "lower-trees"});
        }
      }
    }
  }
  return report;
}

// --- atom threshold diagnostics ---------------------------------------------------

AtomThresholdReport zero_one_atom_threshold(const DegreeSequence& seq, std::uint64_t horizon,
                                            unsigned k_probe_max,
                                            std::optional<std::uint64_t> seed) {
  if (k_probe_max < 2) throw std::invalid_argument("atom threshold probes start at kappa = 2");
  SeriesLedger ledger(seq, horizon, seed);
  for (std::uint64_t i = 0; i <= horizon; ++i)
    if (ledger.degree(i) > 1)
      throw std::invalid_argument("atom threshold applies to zero-one sequences only");

  AtomThresholdReport report;
  report.truncation = horizon;
  std::vector<Rat> sums(k_probe_max + 1, Rat(0));
  Rat tail(0);  // t_{l+1, H} while sweeping l downward
  std::uint64_t last_one = 0;
  for (std::uint64_t l = horizon; l >= 1; --l) {
    if (ledger.degree(l) == 1) {
      ++report.ones_in_window;
      if (last_one == 0) last_one = l;
      for (unsigned kappa = 2; kappa <= k_probe_max; ++kappa)
        sums[kappa] += rat_pow(tail, kappa - 2);
    }
    Rat term(ledger.degree(l), (unsigned long)l);
    term.canonicalize();
    tail += term;
  }
  for (unsigned kappa = 2; kappa <= k_probe_max; ++kappa)
    report.partial_sums.emplace_back(kappa, sums[kappa]);

  report.registered_threshold = seq.atom_threshold();
  report.dense_branch = seq.sparsity() == Sparsity::Dense;
  // Degree support dying out well before the window end suggests finitely
  // many ones; the sparse-case theorem assumes infinitely many.
  report.assumption_flag = report.ones_in_window == 0 || last_one * 2 < horizon;
  if (report.dense_branch)
    report.note = "registered dense family: every finite-size census class dies out";
  else if (report.registered_threshold)
    report.note = "registered analytic threshold k = " +
                  std::to_string(*report.registered_threshold);
  else
    report.note = "diagnostics only: convergence is not decidable from a finite window";
  return report;
}

bool longest_new_path_probe(const GrowthGraph& g, std::uint32_t start, unsigned k) {
  if (start >= g.size()) throw std::out_of_range("probe start vertex out of range");
  if (k == 0) return true;
  std::vector<bool> visited(g.size(), false);
  // DFS over simple paths; only vertices beyond `start` may continue the path
  std::function<bool(std::uint32_t, unsigned)> dfs = [&](std::uint32_t v,
                                                         unsigned depth) -> bool {
    if (depth == k) return true;
    for (std::uint32_t u : g.neighbors(v)) {
      if (u <= start || visited[u]) continue;
      visited[u] = true;
      if (dfs(u, depth + 1)) return true;
      visited[u] = false;
    }
    return false;
  };
  return dfs(start, 0);
}

}  // namespace radolab
