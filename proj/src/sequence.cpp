#include "radolab/sequence.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "radolab/rng.hpp"

namespace radolab {
namespace {

bool is_power_of(std::uint64_t i, std::uint64_t base) {
  if (i == 0) return false;
  std::uint64_t p = 1;
  while (p < i) {
    if (p > i / base) return false;  // next multiply would overflow past i
    p *= base;
  }
  return p == i;
}

bool is_square(std::uint64_t i) {
  if (i == 0) return false;
  auto r = (std::uint64_t)std::sqrt((double)i);
  for (std::uint64_t c = r > 1 ? r - 1 : 0; c <= r + 1; ++c)
    if (c * c == i) return true;
  return false;
}

}  // namespace

DegreeSequence::DegreeSequence(SequenceKind kind, Data data, Sparsity sparsity,
                               std::string note, std::optional<unsigned> atom_threshold)
    : kind_(kind),
      data_(std::move(data)),
      sparsity_(sparsity),
      note_(std::move(note)),
      atom_threshold_(atom_threshold) {}

DegreeSequence DegreeSequence::explicit_values(std::vector<std::uint32_t> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] > i)
      throw std::invalid_argument("explicit degree d_" + std::to_string(i) + " = " +
                                  std::to_string(values[i]) + " violates 0 <= d_i <= i");
  }
  return DegreeSequence(SequenceKind::Explicit, ExplicitData{std::move(values)},
                        Sparsity::Unregistered, "explicit list");
}

DegreeSequence DegreeSequence::const_fraction(const Rat& alpha) {
  if (alpha <= 0 || alpha >= 1)
    throw std::invalid_argument("const-fraction alpha must lie in (0,1)");
  // d_i = floor(alpha*i): a_n is bounded away from 0, limsup a_n > 0.
  return DegreeSequence(SequenceKind::ConstFraction, ConstFractionData{alpha},
                        Sparsity::Dense, "d_i = floor(alpha*i), alpha = " + fraction_str(alpha));
}

DegreeSequence DegreeSequence::zero_one_pattern(std::vector<bool> pattern,
                                                std::vector<bool> prefix) {
  if (pattern.empty()) throw std::invalid_argument("zero-one pattern must be nonempty");
  const bool first = prefix.empty() ? pattern[0] : prefix[0];
  if (first)
    throw std::invalid_argument("zero-one pattern produces d_0 = 1, violating 0 <= d_i <= i");
  bool any_one = false;
  for (bool b : pattern) any_one |= b;
  // One 1 per period makes sum d_i/i a scaled harmonic tail.
  return DegreeSequence(SequenceKind::ZeroOnePattern,
                        PatternData{std::move(prefix), std::move(pattern)},
                        any_one ? Sparsity::Dense : Sparsity::VerySparse,
                        any_one ? "periodic zero-one pattern" : "all-zero pattern");
}

DegreeSequence DegreeSequence::bernoulli(const Rat& p, std::optional<std::uint64_t> seed) {
  if (p <= 0 || p >= 1) throw std::invalid_argument("bernoulli p must lie in (0,1)");
  if (!p.get_den().fits_ulong_p() || p.get_den().get_ui() > (1ULL << 32) ||
      !p.get_num().fits_ulong_p())
    throw std::invalid_argument("bernoulli p denominator out of supported range");
  BernoulliData data{p, p.get_num().get_ui(), p.get_den().get_ui(), seed};
  return DegreeSequence(SequenceKind::Bernoulli, std::move(data), Sparsity::Dense,
                        "d_i ~ Bernoulli(" + fraction_str(p) + ") i.i.d., d_0 = 0 (a.s. dense)");
}

DegreeSequence DegreeSequence::all_ones_after_zero() {
  return DegreeSequence(SequenceKind::AllOnesAfterZero, OnesData{}, Sparsity::Dense,
                        "0,1,1,1,...");
}

DegreeSequence DegreeSequence::power_support(std::uint64_t base) {
  if (base < 2) throw std::invalid_argument("power support base must be >= 2");
  // t_{l+1,inf} at l = base^j is sum_{m>j} base^-m = base^-j/(base-1), so
  // sum_l d_l t_{l+1}^{kappa-2} behaves like sum_j base^{-j(kappa-2)}:
  // divergent at kappa = 2 (infinitely many ones), finite from kappa = 3.
  // s_{base^j} = j+1, so sum s_i d_i/i ~ sum j/base^j < inf: very sparse.
  return DegreeSequence(SequenceKind::PowerSupport, PowerData{base}, Sparsity::VerySparse,
                        "d_i = 1 iff i = " + std::to_string(base) + "^j", 3);
}

DegreeSequence DegreeSequence::square_support() {
  // t_{l+1,inf} at l = j^2 is sum_{m>j} m^-2 ~ 1/j, so the atom-threshold
  // sums behave like sum_j j^{-(kappa-2)}: divergent through kappa = 3,
  // finite from kappa = 4. s_{j^2} = j, so sum s_i d_i/i ~ sum 1/j = inf:
  // sparse but not very sparse.
  return DegreeSequence(SequenceKind::SquareSupport, SquareData{}, Sparsity::Sparse,
                        "d_i = 1 iff i is a positive square", 4);
}

std::optional<std::uint64_t> DegreeSequence::max_index() const {
  if (auto* e = std::get_if<ExplicitData>(&data_)) {
    if (e->values.empty()) return std::uint64_t(0);
    return e->values.size() - 1;
  }
  if (auto* t = std::get_if<TriangleData>(&data_)) return t->twos.back();
  return std::nullopt;
}

std::uint32_t DegreeSequence::degree(std::uint64_t i,
                                     std::optional<std::uint64_t> seed) const {
  switch (kind_) {
    case SequenceKind::Explicit: {
      const auto& v = std::get<ExplicitData>(data_).values;
      if (i >= v.size())
        throw std::out_of_range("degree index " + std::to_string(i) +
                                " beyond explicit list of length " + std::to_string(v.size()));
      return v[i];
    }
    case SequenceKind::ConstFraction: {
      const auto& alpha = std::get<ConstFractionData>(data_).alpha;
      BigInt d = (alpha.get_num() * (unsigned long)i) / alpha.get_den();
      return (std::uint32_t)d.get_ui();
    }
    case SequenceKind::ZeroOnePattern: {
      const auto& p = std::get<PatternData>(data_);
      if (i < p.prefix.size()) return p.prefix[i] ? 1 : 0;
      return p.pattern[(i - p.prefix.size()) % p.pattern.size()] ? 1 : 0;
    }
    case SequenceKind::TriangleConstruction: {
      const auto& twos = std::get<TriangleData>(data_).twos;
      if (i > twos.back())
        throw std::out_of_range("triangle-construction index " + std::to_string(i) +
                                " beyond materialized rounds (last = " +
                                std::to_string(twos.back()) + ")");
      if (i == 0) return 0;
      for (auto t : twos)
        if (t == i) return 2;
      return 1;
    }
    case SequenceKind::Bernoulli: {
      const auto& b = std::get<BernoulliData>(data_);
      if (i == 0) return 0;
      std::optional<std::uint64_t> s = seed ? seed : b.seed;
      if (!s) throw std::invalid_argument("bernoulli degree query requires a seed");
      const std::uint64_t u = counter_hash(*s, i);
      // u/2^64 < num/den, exact cross-multiplication.
      const auto lhs = (unsigned __int128)u * b.den;
      const auto rhs = (unsigned __int128)b.num << 64;
      return lhs < rhs ? 1 : 0;
    }
    case SequenceKind::AllOnesAfterZero:
      return i == 0 ? 0 : 1;
    case SequenceKind::PowerSupport:
      return is_power_of(i, std::get<PowerData>(data_).base) ? 1 : 0;
    case SequenceKind::SquareSupport:
      return is_square(i) ? 1 : 0;
  }
  throw std::logic_error("unreachable");
}

bool DegreeSequence::zero_one_up_to(std::uint64_t horizon) const {
  switch (kind_) {
    case SequenceKind::ZeroOnePattern:
    case SequenceKind::Bernoulli:
    case SequenceKind::AllOnesAfterZero:
    case SequenceKind::PowerSupport:
    case SequenceKind::SquareSupport:
      return true;
    case SequenceKind::TriangleConstruction:
      return false;
    case SequenceKind::ConstFraction:
      return degree(horizon) <= 1;  // floor(alpha*i) is nondecreasing
    case SequenceKind::Explicit: {
      const auto& v = std::get<ExplicitData>(data_).values;
      for (std::size_t i = 0; i <= horizon && i < v.size(); ++i)
        if (v[i] > 1) return false;
      return true;
    }
  }
  return false;
}

const std::vector<std::uint32_t>& DegreeSequence::explicit_list() const {
  if (kind_ != SequenceKind::Explicit)
    throw std::invalid_argument("explicit_list() on non-explicit sequence");
  return std::get<ExplicitData>(data_).values;
}

const std::vector<std::uint64_t>& DegreeSequence::two_positions() const {
  if (kind_ != SequenceKind::TriangleConstruction)
    throw std::invalid_argument("two_positions() on non-triangle sequence");
  return std::get<TriangleData>(data_).twos;
}

// --- triangle construction -------------------------------------------------

namespace {

// Least k > floor_k with (k + l - 1)/C(k,2) < gap, i.e. with
// gap*k^2 - (gap + 2)k - 2(l-1) > 0. The left side is increasing for
// admissible k, so solve the quadratic and verify exactly around the root.
std::uint64_t least_insertion_index(const Rat& gap, std::uint64_t l, std::uint64_t floor_k) {
  const BigInt& g_num = gap.get_num();
  const BigInt& g_den = gap.get_den();
  auto satisfied = [&](const BigInt& k) {
    // (k + l - 1)*2*g_den < g_num*k*(k-1), all exact.
    return 2 * g_den * (k + (long)l - 1) < g_num * k * (k - 1);
  };
  // Root of g*k^2 - (g+2)k - 2(l-1) = 0 via integer sqrt of the discriminant,
  // computed over the common denominator g_den.
  BigInt a = g_num;
  BigInt b = g_num + 2 * g_den;
  BigInt c = 2 * g_den * (long)(l - 1);
  BigInt disc = b * b + 4 * a * c;
  BigInt root;
  mpz_sqrt(root.get_mpz_t(), disc.get_mpz_t());
  BigInt k0 = (b + root) / (2 * a);
  if (k0 < (long)floor_k + 1) k0 = (long)floor_k + 1;
  while (k0 > (long)floor_k + 1 && satisfied(k0 - 1)) --k0;
  while (!satisfied(k0)) ++k0;
  if (!k0.fits_ulong_p())
    throw std::invalid_argument("triangle construction: insertion index exceeds 2^64");
  return k0.get_ui();
}

}  // namespace

TriangleConstructionResult build_triangle_construction(unsigned rounds) {
  if (rounds < 1) throw std::invalid_argument("triangle construction needs rounds >= 1");
  // Positions are doubly exponential in the round count; u64 runs out fast.
  if (rounds > 6)
    throw std::invalid_argument("triangle construction: rounds > 6 exceeds index range");

  std::vector<std::uint64_t> twos{3};
  std::vector<Rat> probs{make_rat(2, 3)};  // the first 4 vertices span a triangle
  Rat sum = probs[0];
  const Rat cap = make_rat(3, 4);

  for (unsigned l = 1; l < rounds; ++l) {
    const Rat gap = cap - sum;
    const std::uint64_t k = least_insertion_index(gap, l, twos.back());
    twos.push_back(k);
    // k + l - 1 edges exist among v_0..v_{k-1} at round k, all distinct pairs.
    Rat p((unsigned long)(k + l - 1), 1);
    p /= Rat(BigInt((unsigned long)k) * BigInt((unsigned long)(k - 1)) / 2);
    p.canonicalize();
    probs.push_back(p);
    sum += p;
  }
  if (!(sum >= make_rat(2, 3) && sum < cap))
    throw std::logic_error("triangle construction invariant violated");

  DegreeSequence seq(SequenceKind::TriangleConstruction,
                     DegreeSequence::TriangleData{twos}, Sparsity::Dense,
                     "0,1,1,2,... with " + std::to_string(rounds) + " inserted 2's");
  return TriangleConstructionResult{std::move(seq), twos, probs, sum};
}

// --- ledger ------------------------------------------------------------------

SeriesLedger::SeriesLedger(const DegreeSequence& seq, std::uint64_t horizon,
                           std::optional<std::uint64_t> seed)
    : horizon_(horizon) {
  degrees_.reserve(horizon + 1);
  prefix_.reserve(horizon + 1);
  std::uint64_t s = 0;
  for (std::uint64_t i = 0; i <= horizon; ++i) {
    const std::uint32_t d = seq.degree(i, seed);
    degrees_.push_back(d);
    s += d;
    prefix_.push_back(s);
  }
}

void SeriesLedger::check(std::uint64_t n) const {
  if (n > horizon_)
    throw std::out_of_range("ledger query at " + std::to_string(n) + " beyond horizon " +
                            std::to_string(horizon_));
}

std::uint32_t SeriesLedger::degree(std::uint64_t n) const {
  check(n);
  return degrees_[n];
}

std::uint64_t SeriesLedger::prefix_sum(std::uint64_t n) const {
  check(n);
  return prefix_[n];
}

Rat SeriesLedger::tail_sum(std::uint64_t n, std::uint64_t m) const {
  if (n == 0) throw std::out_of_range("tail sum starts at index >= 1");
  if (n > m + 1) throw std::out_of_range("tail sum window reversed");
  check(m);
  Rat acc(0);
  for (std::uint64_t i = n; i <= m; ++i) {
    if (degrees_[i] == 0) continue;
    acc += Rat(degrees_[i], (unsigned long)i);
  }
  acc.canonicalize();
  return acc;
}

Rat SeriesLedger::min_ratio(std::uint64_t n) const {
  if (n == 0) throw std::out_of_range("a_n defined for n >= 1");
  check(n);
  Rat lhs(degrees_[n], (unsigned long)n);
  Rat rhs((unsigned long)(n - degrees_[n]), (unsigned long)n);
  lhs.canonicalize();
  rhs.canonicalize();
  return lhs < rhs ? lhs : rhs;
}

TailSweep::TailSweep(const SeriesLedger& ledger, std::uint64_t window_end)
    : ledger_(ledger), n_(window_end + 1), tail_(0) {
  if (window_end > ledger.horizon())
    throw std::out_of_range("tail sweep window beyond ledger horizon");
}

bool TailSweep::advance() {
  if (n_ <= 1) return false;
  --n_;
  if (ledger_.degree(n_) != 0) {
    Rat term(ledger_.degree(n_), (unsigned long)n_);
    term.canonicalize();
    tail_ += term;
  }
  return true;
}

// --- spec-string parsing -----------------------------------------------------

namespace {

[[noreturn]] void parse_fail(const std::string& spec, std::size_t pos, const std::string& what) {
  throw std::invalid_argument("sequence spec error at position " + std::to_string(pos) + " ('" +
                              spec.substr(pos, 16) + "'): " + what);
}

std::uint64_t parse_u64(const std::string& spec, std::size_t pos, const std::string& tok) {
  if (tok.empty() || tok[0] == '-' || tok[0] == '+')
    parse_fail(spec, pos, "expected unsigned integer, got '" + tok + "'");
  try {
    std::size_t used = 0;
    const auto v = std::stoull(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    parse_fail(spec, pos, "expected unsigned integer, got '" + tok + "'");
  }
}

Rat parse_rat(const std::string& spec, std::size_t pos, const std::string& tok) {
  const auto slash = tok.find('/');
  const std::uint64_t num = parse_u64(spec, pos, tok.substr(0, slash));
  std::uint64_t den = 1;
  if (slash != std::string::npos) den = parse_u64(spec, pos + slash + 1, tok.substr(slash + 1));
  if (den == 0) parse_fail(spec, pos, "zero denominator");
  Rat r((unsigned long)num, (unsigned long)den);
  r.canonicalize();
  return r;
}

std::vector<bool> parse_bits(const std::string& spec, std::size_t pos, const std::string& tok) {
  std::vector<bool> bits;
  for (std::size_t i = 0; i < tok.size(); ++i) {
    if (tok[i] != '0' && tok[i] != '1') parse_fail(spec, pos + i, "expected 0/1 bit");
    bits.push_back(tok[i] == '1');
  }
  if (bits.empty()) parse_fail(spec, pos, "empty bit pattern");
  return bits;
}

// "key=value,key=value" -> ordered pairs with positions.
std::vector<std::pair<std::pair<std::string, std::string>, std::size_t>> parse_kv(
    const std::string& spec, std::size_t pos, const std::string& body) {
  std::vector<std::pair<std::pair<std::string, std::string>, std::size_t>> out;
  if (body.empty()) return out;
  std::size_t start = 0;
  while (start <= body.size()) {
    auto end = body.find(',', start);
    if (end == std::string::npos) end = body.size();
    const std::string item = body.substr(start, end - start);
    const auto eq = item.find('=');
    if (eq == std::string::npos) parse_fail(spec, pos + start, "expected key=value");
    out.push_back({{item.substr(0, eq), item.substr(eq + 1)}, pos + start + eq + 1});
    if (end == body.size()) break;
    start = end + 1;
  }
  return out;
}

}  // namespace

DegreeSequence parse_sequence_spec(const std::string& spec) {
  if (spec.rfind("explicit@", 0) == 0) {
    const std::string path = spec.substr(9);
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open degree file '" + path + "'");
    std::vector<std::uint32_t> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      try {
        values.push_back((std::uint32_t)std::stoull(line));
      } catch (...) {
        throw std::invalid_argument("degree file '" + path + "' line " +
                                    std::to_string(line_no) + ": expected integer");
      }
    }
    return DegreeSequence::explicit_values(std::move(values));
  }

  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string body = colon == std::string::npos ? "" : spec.substr(colon + 1);
  const std::size_t body_pos = colon == std::string::npos ? spec.size() : colon + 1;

  if (head == "ones") {
    if (!body.empty()) parse_fail(spec, body_pos, "'ones' takes no arguments");
    return DegreeSequence::all_ones_after_zero();
  }
  if (head == "squares") {
    if (!body.empty()) parse_fail(spec, body_pos, "'squares' takes no arguments");
    return DegreeSequence::square_support();
  }
  if (head == "explicit") {
    if (body.empty()) parse_fail(spec, body_pos, "explicit list is empty");
    std::vector<std::uint32_t> values;
    std::size_t start = 0;
    while (start <= body.size()) {
      auto end = body.find(',', start);
      if (end == std::string::npos) end = body.size();
      values.push_back(
          (std::uint32_t)parse_u64(spec, body_pos + start, body.substr(start, end - start)));
      if (end == body.size()) break;
      start = end + 1;
    }
    return DegreeSequence::explicit_values(std::move(values));
  }
  if (head == "const-frac") {
    return DegreeSequence::const_fraction(parse_rat(spec, body_pos, body));
  }
  if (head == "zero-one") {
    std::vector<bool> pattern, prefix;
    for (const auto& [kv, vpos] : parse_kv(spec, body_pos, body)) {
      if (kv.first == "pattern")
        pattern = parse_bits(spec, vpos, kv.second);
      else if (kv.first == "prefix")
        prefix = parse_bits(spec, vpos, kv.second);
      else
        parse_fail(spec, vpos, "unknown key '" + kv.first + "'");
    }
    if (pattern.empty()) parse_fail(spec, body_pos, "zero-one requires pattern=");
    return DegreeSequence::zero_one_pattern(std::move(pattern), std::move(prefix));
  }
  if (head == "triangle") {
    std::optional<std::uint64_t> rounds;
    for (const auto& [kv, vpos] : parse_kv(spec, body_pos, body)) {
      if (kv.first == "rounds")
        rounds = parse_u64(spec, vpos, kv.second);
      else
        parse_fail(spec, vpos, "unknown key '" + kv.first + "'");
    }
    if (!rounds) parse_fail(spec, body_pos, "triangle requires rounds=");
    return build_triangle_construction((unsigned)*rounds).sequence;
  }
  if (head == "bernoulli") {
    std::optional<Rat> p;
    std::optional<std::uint64_t> seed;
    for (const auto& [kv, vpos] : parse_kv(spec, body_pos, body)) {
      if (kv.first == "p")
        p = parse_rat(spec, vpos, kv.second);
      else if (kv.first == "seed")
        seed = parse_u64(spec, vpos, kv.second);
      else
        parse_fail(spec, vpos, "unknown key '" + kv.first + "'");
    }
    if (!p) parse_fail(spec, body_pos, "bernoulli requires p=");
    return DegreeSequence::bernoulli(*p, seed);
  }
  if (head == "powers") {
    std::optional<std::uint64_t> base;
    for (const auto& [kv, vpos] : parse_kv(spec, body_pos, body)) {
      if (kv.first == "base")
        base = parse_u64(spec, vpos, kv.second);
      else
        parse_fail(spec, vpos, "unknown key '" + kv.first + "'");
    }
    if (!base) parse_fail(spec, body_pos, "powers requires base=");
    return DegreeSequence::power_support(*base);
  }
  parse_fail(spec, 0, "unknown sequence family '" + head + "'");
}

}  // namespace radolab
