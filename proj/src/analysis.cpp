#include "radolab/analysis.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace radolab {

Rat witness_probability(std::uint64_t n, std::uint64_t d_n, std::uint64_t k) {
  return generalized_witness_probability(n, d_n, k, k);
}

Rat generalized_witness_probability(std::uint64_t n, std::uint64_t d_n, std::uint64_t a,
                                    std::uint64_t b) {
  if (d_n > n) throw std::invalid_argument("witness probability requires d_n <= n");
  if (a + b > n) return Rat(0);  // no room for a+b distinct earlier vertices
  if (d_n < a || n - d_n < b) return Rat(0);
  Rat r(falling_factorial(d_n, a) * falling_factorial(n - d_n, b),
        falling_factorial(n, a + b));
  r.canonicalize();
  return r;
}

TermEquivalence term_equivalence_check(std::uint64_t d_n, std::uint64_t n, unsigned t) {
  if (d_n > n) throw std::invalid_argument("term check requires d_n <= n");
  TermEquivalence out;
  Rat base(BigInt((unsigned long)d_n) * BigInt((unsigned long)(n - d_n)),
           BigInt((unsigned long)n) * BigInt((unsigned long)n));
  base.canonicalize();
  out.power_term = rat_pow(base, t);
  if (2 * (std::uint64_t)t > n) {
    out.factorial_term = Rat(0);
  } else {
    out.factorial_term = Rat(falling_factorial(d_n, t) * falling_factorial(n - d_n, t),
                             falling_factorial(n, 2 * t));
    out.factorial_term.canonicalize();
  }
  if (out.power_term != 0 && out.factorial_term != 0)
    out.ratio = Rat(out.factorial_term / out.power_term);
  return out;
}

RadocityReport radocity_series(const DegreeSequence& seq, unsigned t_max, std::uint64_t horizon,
                               std::optional<std::uint64_t> seed) {
  if (t_max < 1 || horizon < 1) throw std::invalid_argument("radocity_series bounds");
  RadocityReport report;
  report.per_t.resize(t_max);
  for (unsigned t = 1; t <= t_max; ++t) report.per_t[t - 1].t = t;

  SeriesLedger ledger(seq, horizon, seed);
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    const std::uint64_t d = ledger.degree(n);
    for (unsigned t = 1; t <= t_max; ++t) {
      auto terms = term_equivalence_check(d, n, t);
      report.per_t[t - 1].power_form += terms.power_term;
      report.per_t[t - 1].factorial_form += terms.factorial_term;
    }
  }

  report.family_note = seq.family_note();
  switch (seq.kind()) {
    case SequenceKind::ConstFraction:
      // limsup a_n = min(alpha, 1-alpha) > 0: Rado graph a.s.
      report.verdict = RadocityVerdict::Known;
      report.known_infinite = true;
      break;
    case SequenceKind::Bernoulli:
      // Zero-one degrees with sum d_i/i = inf a.s.: the t=1 series diverges,
      // (d_n)_(2) = 0 kills t=2. Radocity 1 almost surely.
      report.verdict = RadocityVerdict::Known;
      report.known_radocity = 1;
      report.family_note += "; radocity holds almost surely over degree draws";
      break;
    case SequenceKind::AllOnesAfterZero:
    case SequenceKind::TriangleConstruction:
      // Mostly-ones sequences: harmonic divergence at t=1, the t=2 factorial
      // form is dominated by sum 2/n^2.
      report.verdict = RadocityVerdict::Known;
      report.known_radocity = 1;
      break;
    case SequenceKind::ZeroOnePattern: {
      bool any_one = false;
      for (std::uint64_t n = 1; n <= std::min<std::uint64_t>(horizon, 4096); ++n)
        any_one |= ledger.degree(n) > 0;
      report.verdict = RadocityVerdict::Known;
      if (any_one)
        report.known_radocity = 1;
      else
        report.known_radocity = 0;  // empty divergence set
      break;
    }
    case SequenceKind::Explicit:
    case SequenceKind::PowerSupport:
    case SequenceKind::SquareSupport:
      report.verdict = RadocityVerdict::DiagnosticsOnly;
      break;
  }
  return report;
}

std::string RadocityReport::to_json() const {
  nlohmann::ordered_json j;
  j["per_t"] = nlohmann::ordered_json::array();
  for (const auto& row : per_t) {
    nlohmann::ordered_json item;
    item["t"] = row.t;
    item["power_form"] = fraction_str(row.power_form);
    item["factorial_form"] = fraction_str(row.factorial_form);
    item["power_float"] = to_double(row.power_form);
    item["factorial_float"] = to_double(row.factorial_form);
    j["per_t"].push_back(item);
  }
  if (verdict == RadocityVerdict::DiagnosticsOnly)
    j["verdict"] = "diagnostics";
  else if (known_infinite)
    j["verdict"] = "known:inf";
  else
    j["verdict"] = "known:" + std::to_string(*known_radocity);
  j["family_note"] = family_note;
  return j.dump();
}

std::uint64_t count_witnesses(const GrowthGraph& g, const WitnessQuery& q) {
  auto in_range = [&](std::uint32_t v) { return v < g.size(); };
  if (!std::all_of(q.include.begin(), q.include.end(), in_range) ||
      !std::all_of(q.exclude.begin(), q.exclude.end(), in_range))
    throw std::invalid_argument("witness query indices out of range");
  for (std::uint32_t a : q.include)
    for (std::uint32_t b : q.exclude)
      if (a == b) throw std::invalid_argument("witness query sets must be disjoint");

  std::uint64_t count = 0;
  for (std::uint32_t v = q.from; v < g.size(); ++v) {
    if (std::find(q.include.begin(), q.include.end(), v) != q.include.end()) continue;
    if (std::find(q.exclude.begin(), q.exclude.end(), v) != q.exclude.end()) continue;
    const auto& nb = g.neighbors(v);
    auto adjacent = [&](std::uint32_t u) {
      return std::binary_search(nb.begin(), nb.end(), u);
    };
    if (!std::all_of(q.include.begin(), q.include.end(), adjacent)) continue;
    if (std::any_of(q.exclude.begin(), q.exclude.end(), adjacent)) continue;
    ++count;
  }
  return count;
}

Rat no_witness_tail_probability(const DegreeSequence& seq, std::uint64_t k, std::uint64_t N,
                                std::uint64_t M, std::optional<std::uint64_t> seed) {
  if (N > M) throw std::invalid_argument("no-witness window requires N <= M");
  Rat out(1);
  for (std::uint64_t n = N; n <= M; ++n) {
    out *= (Rat(1) - witness_probability(n, seq.degree(n, seed), k));
    if (out == 0) break;  // a certain witness zeroes the tail
  }
  return out;
}

}  // namespace radolab
