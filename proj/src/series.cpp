#include "radolab/series.hpp"

#include <algorithm>

#include <json.hpp>

namespace radolab {

namespace {

struct EnumerationState {
  const FamilySpec& spec;
  std::uint64_t max_bound;
  std::uint64_t budget;
  std::uint64_t emitted = 0;
  IndexTuple tuple;
};

// Lexicographic recursive enumeration. `anchor_pending` tracks whether the
// minimum (for MinExactly/InjectiveMin) still has to appear.
void enumerate_rec(EnumerationState& st, unsigned depth, bool anchor_seen,
                   const std::function<void(const IndexTuple&)>& fn) {
  const auto& spec = st.spec;
  if (depth == spec.length) {
    if (++st.emitted > st.budget) throw EnumerationBudgetError(st.budget);
    fn(st.tuple);
    return;
  }
  const unsigned remaining = spec.length - depth - 1;
  switch (spec.family) {
    case TupleFamily::EntrywiseAtLeast:
      for (std::uint64_t v = spec.anchor; v <= st.max_bound; ++v) {
        st.tuple[depth] = v;
        enumerate_rec(st, depth + 1, true, fn);
      }
      break;
    case TupleFamily::MinExactly:
      for (std::uint64_t v = spec.anchor; v <= st.max_bound; ++v) {
        const bool seen = anchor_seen || v == spec.anchor;
        if (!seen && remaining == 0) break;  // min can no longer be hit
        st.tuple[depth] = v;
        enumerate_rec(st, depth + 1, seen, fn);
      }
      break;
    case TupleFamily::InjectiveMin:
      for (std::uint64_t v = spec.anchor; v <= st.max_bound; ++v) {
        bool used = false;
        for (unsigned j = 0; j < depth; ++j) used |= st.tuple[j] == v;
        if (used) continue;
        const bool seen = anchor_seen || v == spec.anchor;
        if (!seen && remaining == 0) continue;
        st.tuple[depth] = v;
        enumerate_rec(st, depth + 1, seen, fn);
      }
      break;
    case TupleFamily::IncreasingMin: {
      const std::uint64_t low = depth == 0 ? spec.anchor : st.tuple[depth - 1] + 1;
      if (depth == 0) {
        // sigma_1 = min = anchor
        st.tuple[0] = spec.anchor;
        enumerate_rec(st, 1, true, fn);
        break;
      }
      for (std::uint64_t v = low; v + remaining <= st.max_bound; ++v) {
        st.tuple[depth] = v;
        enumerate_rec(st, depth + 1, true, fn);
      }
      break;
    }
  }
}

void validate_spec(const FamilySpec& spec) {
  if (spec.length < 1) throw std::invalid_argument("tuple family length must be >= 1");
  if (spec.anchor < 1) throw std::invalid_argument("tuple family anchor must be >= 1");
}

// Enumeration-order weight sum with zero-weight pruning: a prefix entry with
// d = 0 zeroes every completion, so the subtree is skipped wholesale. Visited
// nodes count toward the budget.
void weight_sum_rec(const SeriesLedger& ledger, const FamilySpec& spec,
                    std::uint64_t max_bound, unsigned depth, bool anchor_seen,
                    IndexTuple& tuple, const Rat& prefix, Rat& total,
                    std::uint64_t& visited, std::uint64_t budget) {
  if (++visited > budget) throw EnumerationBudgetError(budget);
  if (depth == spec.length) {
    total += prefix;
    return;
  }
  const unsigned remaining = spec.length - depth - 1;
  auto descend = [&](std::uint64_t v, bool seen) {
    const std::uint32_t d = ledger.degree(v);
    if (d == 0) return;
    Rat factor(d, (unsigned long)v);
    factor.canonicalize();
    tuple[depth] = v;
    Rat next = prefix * factor;
    weight_sum_rec(ledger, spec, max_bound, depth + 1, seen, tuple, next, total, visited,
                   budget);
  };
  switch (spec.family) {
    case TupleFamily::EntrywiseAtLeast:
      for (std::uint64_t v = spec.anchor; v <= max_bound; ++v) descend(v, true);
      break;
    case TupleFamily::MinExactly:
      for (std::uint64_t v = spec.anchor; v <= max_bound; ++v) {
        const bool seen = anchor_seen || v == spec.anchor;
        if (!seen && remaining == 0) break;
        descend(v, seen);
      }
      break;
    case TupleFamily::InjectiveMin:
      for (std::uint64_t v = spec.anchor; v <= max_bound; ++v) {
        bool used = false;
        for (unsigned j = 0; j < depth; ++j) used |= tuple[j] == v;
        if (used) continue;
        const bool seen = anchor_seen || v == spec.anchor;
        if (!seen && remaining == 0) continue;
        descend(v, seen);
      }
      break;
    case TupleFamily::IncreasingMin: {
      if (depth == 0) {
        descend(spec.anchor, true);
        break;
      }
      for (std::uint64_t v = tuple[depth - 1] + 1; v + remaining <= max_bound; ++v)
        descend(v, true);
      break;
    }
  }
}

}  // namespace

void for_each_tuple(const FamilySpec& spec, std::uint64_t max_bound,
                    const std::function<void(const IndexTuple&)>& fn, std::uint64_t budget) {
  validate_spec(spec);
  if (spec.anchor > max_bound) return;  // empty family
  EnumerationState st{spec, max_bound, budget, 0, IndexTuple(spec.length)};
  enumerate_rec(st, 0, false, fn);
}

Rat f_weight(const SeriesLedger& ledger, const IndexTuple& sigma) {
  Rat out(1);
  for (std::uint64_t entry : sigma) {
    if (entry == 0) throw std::invalid_argument("index tuple entries must be >= 1");
    const std::uint32_t d = ledger.degree(entry);  // range-checks
    if (d == 0) return Rat(0);
    Rat factor(d, (unsigned long)entry);
    factor.canonicalize();
    out *= factor;
  }
  return out;
}

Rat family_weight_sum(const SeriesLedger& ledger, const FamilySpec& spec,
                      std::uint64_t max_bound, std::uint64_t budget) {
  validate_spec(spec);
  if (spec.anchor > max_bound) return Rat(0);
  if (max_bound > ledger.horizon())
    throw std::out_of_range("family weight sum bound beyond ledger horizon");
  Rat total(0);
  IndexTuple tuple(spec.length);
  std::uint64_t visited = 0;
  weight_sum_rec(ledger, spec, max_bound, 0, false, tuple, Rat(1), total, visited, budget);
  return total;
}

IdentityCheck rearrangement_identity_check(const SeriesLedger& ledger, unsigned l,
                                           std::uint64_t M) {
  if (l < 1 || M < 1) throw std::invalid_argument("rearrangement check needs l, M >= 1");
  IdentityCheck out;
  out.lhs = 0;
  out.rhs = 0;
  // lhs in one right-to-left tail sweep
  TailSweep sweep(ledger, M);
  while (sweep.advance()) {
    const std::uint64_t i = sweep.index();
    if (ledger.degree(i) == 0) continue;
    out.lhs += Rat((unsigned long)ledger.degree(i)) * rat_pow(sweep.current(), l);
  }
  // rhs by family enumeration, grouped by the tuple minimum
  for (std::uint64_t j = 1; j <= M; ++j) {
    const std::uint64_t s_j = ledger.prefix_sum(j);
    if (s_j == 0) continue;
    const Rat inner =
        family_weight_sum(ledger, FamilySpec{TupleFamily::MinExactly, l, j}, M);
    out.rhs += Rat(BigInt((unsigned long)s_j)) * inner;
  }
  return out;
}

DefectBoundCheck injectivity_defect_bound_check(const SeriesLedger& ledger, unsigned l,
                                                std::uint64_t M) {
  if (l < 2 || M < 1) throw std::invalid_argument("defect check needs l >= 2, M >= 1");
  for (std::uint64_t i = 0; i <= M; ++i)
    if (ledger.degree(i) > 1)
      throw std::invalid_argument("defect bound is stated for zero-one sequences");

  DefectBoundCheck out;
  out.lhs = 0;
  out.rhs = 0;
  for (std::uint64_t i = 1; i <= M; ++i) {
    const std::uint64_t s_i = ledger.prefix_sum(i);
    if (s_i == 0) continue;
    // non-injective part of the min-exactly family
    Rat defect =
        family_weight_sum(ledger, FamilySpec{TupleFamily::MinExactly, l, i}, M) -
        family_weight_sum(ledger, FamilySpec{TupleFamily::InjectiveMin, l, i}, M);
    out.lhs += Rat(BigInt((unsigned long)s_i)) * defect;
  }
  const Rat pair_factor((unsigned long)(l - 1) * ((unsigned long)l * (l - 1) / 2));
  TailSweep sweep(ledger, M);
  while (sweep.advance()) {
    const std::uint64_t i = sweep.index();
    const std::uint32_t d = ledger.degree(i);
    if (d == 0) continue;
    Rat term(BigInt((unsigned long)ledger.prefix_sum(i)) * BigInt((unsigned long)d),
             BigInt((unsigned long)i) * BigInt((unsigned long)i));
    term.canonicalize();
    out.rhs += term * rat_pow(sweep.current(), l - 2);
  }
  out.rhs *= pair_factor;
  return out;
}

std::string IdentityCheck::to_json() const {
  nlohmann::ordered_json j;
  j["lhs"] = fraction_str(lhs);
  j["rhs"] = fraction_str(rhs);
  j["equal"] = equal();
  return j.dump();
}

std::string DefectBoundCheck::to_json() const {
  nlohmann::ordered_json j;
  j["lhs"] = fraction_str(lhs);
  j["rhs"] = fraction_str(rhs);
  j["holds"] = holds();
  return j.dump();
}

}  // namespace radolab
