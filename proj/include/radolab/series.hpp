#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "radolab/rational.hpp"
#include "radolab/sequence.hpp"

namespace radolab {

using IndexTuple = std::vector<std::uint64_t>;

/// The four tuple families over positive indices, all with anchor i:
///   MinExactly       min sigma = i                          (A^l_i)
///   IncreasingMin    strictly increasing, sigma_1 = i       (B^l_i)
///   InjectiveMin     pairwise distinct, min sigma = i       (C^l_i)
///   EntrywiseAtLeast every entry >= i                       (D^l_i)
enum class TupleFamily { MinExactly, IncreasingMin, InjectiveMin, EntrywiseAtLeast };

struct FamilySpec {
  TupleFamily family = TupleFamily::MinExactly;
  unsigned length = 1;       // l >= 1
  std::uint64_t anchor = 1;  // i >= 1
};

class EnumerationBudgetError : public std::runtime_error {
 public:
  explicit EnumerationBudgetError(std::uint64_t budget)
      : std::runtime_error("tuple enumeration exceeded budget of " + std::to_string(budget)) {}
};

inline constexpr std::uint64_t kDefaultTupleBudget = 100'000'000;

/// Streams the family's tuples with entries <= max_bound, each exactly once,
/// in lexicographic order. Throws EnumerationBudgetError past the budget.
void for_each_tuple(const FamilySpec& spec, std::uint64_t max_bound,
                    const std::function<void(const IndexTuple&)>& fn,
                    std::uint64_t budget = kDefaultTupleBudget);

/// f(sigma) = prod d_{sigma_j}/sigma_j; empty tuple gives 1. Entries must be
/// >= 1 and within the ledger horizon.
Rat f_weight(const SeriesLedger& ledger, const IndexTuple& sigma);

/// Exact sum of f over the family, entries bounded by max_bound. Evaluated by
/// enumeration order with zero-weight subtree pruning (same tuple set).
Rat family_weight_sum(const SeriesLedger& ledger, const FamilySpec& spec,
                      std::uint64_t max_bound, std::uint64_t budget = kDefaultTupleBudget);

struct IdentityCheck {
  Rat lhs;
  Rat rhs;
  bool equal() const { return lhs == rhs; }
  std::string to_json() const;
};

/// lhs = sum_{i=1..M} d_i t_{i,M}^l against
/// rhs = sum_{j=1..M} s_j * (sum over min-exactly-j tuples of f), both exact.
IdentityCheck rearrangement_identity_check(const SeriesLedger& ledger, unsigned l,
                                           std::uint64_t M);

struct DefectBoundCheck {
  Rat lhs;
  Rat rhs;
  bool holds() const { return lhs <= rhs; }
  std::string to_json() const;
};

/// Zero-one sequences, l >= 2: exact
///   sum_i s_i * (sum over non-injective min-exactly-i tuples of f)
///     <= (l-1) C(l,2) sum_i (s_i/i)(d_i/i) t_{i,M}^{l-2}.
DefectBoundCheck injectivity_defect_bound_check(const SeriesLedger& ledger, unsigned l,
                                                std::uint64_t M);

}  // namespace radolab
