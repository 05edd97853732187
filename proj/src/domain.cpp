#include "mua/domain.hpp"

#include <algorithm>
#include <stdexcept>

namespace mua {

int total_items(const Allocation& a) {
  int sum = 0;
  for (int q : a) sum += q;
  return sum;
}

std::optional<std::string> Valuation::invalid_reason() const {
  if (m < 0) return "m must be non-negative";
  if (values.size() != static_cast<std::size_t>(m) + 1)
    return "values must have m+1 entries";
  if (values[0] != 0) return "value at quantity 0 must be 0";
  for (int s = 1; s <= m; ++s)
    if (values[static_cast<std::size_t>(s)] < values[static_cast<std::size_t>(s) - 1])
      return "values must be non-decreasing";
  return std::nullopt;
}

std::optional<std::string> KMindedStructure::invalid_reason(int m) const {
  int prev = 0;
  for (int q : steps) {
    if (q < 1 || q > m) return "step quantities must lie in 1..m";
    if (q <= prev) return "step quantities must be strictly increasing";
    prev = q;
  }
  return std::nullopt;
}

Domain Domain::from_fn(int m, Int size, std::function<Int(const Int&, int)> fn) {
  if (m < 0) throw std::invalid_argument("Domain: m must be non-negative");
  if (size < 0) throw std::invalid_argument("Domain: size must be non-negative");
  Domain d;
  d.m_ = m;
  d.size_ = std::move(size);
  d.fn_ = std::move(fn);
  return d;
}

Domain Domain::from_valuations(int m, std::vector<Valuation> valuations) {
  for (const auto& v : valuations) {
    if (v.m != m) throw std::invalid_argument("Domain: valuation has mismatched m");
    if (auto why = v.invalid_reason())
      throw std::invalid_argument("Domain: " + *why);
  }
  auto shared = std::make_shared<std::vector<Valuation>>(std::move(valuations));
  return from_fn(m, Int(shared->size()), [shared](const Int& t, int s) {
    return shared->at(t.convert_to<std::size_t>()).value(s);
  });
}

Int Domain::query(const Int& t, int s) const {
  if (t < 0 || t >= size_) throw std::out_of_range("Domain::query: index out of range");
  if (s < 0 || s > m_) throw std::out_of_range("Domain::query: quantity out of range");
  ++*query_count_;
  if (s == 0) return 0;
  return fn_(t, s);
}

Valuation Domain::materialize(const Int& t) const {
  Valuation v;
  v.m = m_;
  v.values.resize(static_cast<std::size_t>(m_) + 1);
  for (int s = 0; s <= m_; ++s) v.values[static_cast<std::size_t>(s)] = query(t, s);
  return v;
}

std::vector<Valuation> Domain::materialize_all() const {
  int count = size_int("Domain::materialize_all");
  std::vector<Valuation> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int t = 0; t < count; ++t) out.push_back(materialize(t));
  return out;
}

Domain Domain::prefix(const Int& count) const {
  if (count < 0 || count > size_)
    throw std::out_of_range("Domain::prefix: count out of range");
  Domain d = *this;
  d.size_ = count;
  return d;
}

int Domain::value_bits() const {
  if (size_ == 0 || m_ == 0) return 0;
  Int top = query(size_ - 1, m_);
  if (top == 0) return 0;
  return static_cast<int>(boost::multiprecision::msb(top)) + 1;
}

std::optional<SingleCrossingViolation> validate_domain(const Domain& d,
                                                      std::int64_t max_pairs) {
  int size = d.size_int("validate_domain");
  int m = d.m();
  std::int64_t t_pairs = static_cast<std::int64_t>(size) * (size - 1) / 2;
  std::int64_t s_pairs = static_cast<std::int64_t>(m + 1) * m / 2;
  if (t_pairs > 0 && s_pairs > 0 && t_pairs > max_pairs / s_pairs)
    throw CapacityError("validate_domain: too many ordered pairs to enumerate");

  std::vector<Valuation> vals = d.materialize_all();
  for (const auto& v : vals)
    if (auto why = v.invalid_reason())
      throw IntegrityError("validate_domain: member valuation invalid: " + *why);

  for (int t = 0; t < size; ++t) {
    for (int th = t + 1; th < size; ++th) {
      const auto& lo = vals[static_cast<std::size_t>(t)];
      const auto& hi = vals[static_cast<std::size_t>(th)];
      for (int s = 0; s <= m; ++s) {
        for (int sh = s + 1; sh <= m; ++sh) {
          if (hi.value(sh) - hi.value(s) < lo.value(sh) - lo.value(s)) {
            SingleCrossingViolation v;
            v.t_lo = t;
            v.t_hi = th;
            v.s_lo = s;
            v.s_hi = sh;
            v.lo_at_slo = lo.value(s);
            v.lo_at_shi = lo.value(sh);
            v.hi_at_slo = hi.value(s);
            v.hi_at_shi = hi.value(sh);
            return v;
          }
        }
      }
    }
  }
  return std::nullopt;
}

KMindedStructure derive_step_set(const Domain& d) {
  const int size = d.size_int("derive_step_set");
  KMindedStructure out;
  for (int s = 1; s <= d.m(); ++s) {
    for (int t = 0; t < size; ++t) {
      if (d.query(t, s) != d.query(t, s - 1)) {
        out.steps.push_back(s);
        break;
      }
    }
  }
  return out;
}

std::optional<std::string> AuctionInstance::invalid_reason() const {
  if (domains.size() != reports.size()) return "one report per player required";
  for (std::size_t i = 0; i < domains.size(); ++i) {
    if (domains[i].m() != m) return "player domain has mismatched m";
    if (reports[i] < 0 || reports[i] >= domains[i].size())
      return "report index out of range";
  }
  return std::nullopt;
}

Valuation bid_valuation(const SingleMindedBid& bid, int m) {
  Valuation v;
  v.m = m;
  v.values.assign(static_cast<std::size_t>(m) + 1, Int(0));
  for (int s = std::max(1, bid.quantity); s <= m; ++s)
    v.values[static_cast<std::size_t>(s)] = bid.value;
  return v;
}

Domain single_minded_domain(const std::vector<SingleMindedBid>& bids, int m) {
  std::vector<Valuation> vals;
  vals.reserve(bids.size());
  for (const auto& b : bids) vals.push_back(bid_valuation(b, m));
  return Domain::from_valuations(m, std::move(vals));
}

std::int64_t clause_universe_size(int num_vars) {
  std::int64_t L = 2 * static_cast<std::int64_t>(num_vars);
  return L * (L + 1) * (L + 2) / 6;
}

namespace {
// Number of non-decreasing pairs over x symbols.
std::int64_t pair_count(std::int64_t x) { return x * (x + 1) / 2; }
}  // namespace

std::int64_t clause_rank(const Clause& c, int num_vars) {
  const int L = 2 * num_vars;
  if (!(0 <= c[0] && c[0] <= c[1] && c[1] <= c[2] && c[2] < L))
    throw std::invalid_argument("clause_rank: malformed clause");
  std::int64_t rank = 0;
  for (int a = 0; a < c[0]; ++a) rank += pair_count(L - a);
  for (int b = c[0]; b < c[1]; ++b) rank += L - b;
  rank += c[2] - c[1];
  return rank;
}

Clause clause_unrank(std::int64_t rank, int num_vars) {
  const int L = 2 * num_vars;
  if (rank < 0 || rank >= clause_universe_size(num_vars))
    throw std::out_of_range("clause_unrank: rank out of range");
  Clause c{};
  int a = 0;
  while (rank >= pair_count(L - a)) {
    rank -= pair_count(L - a);
    ++a;
  }
  int b = a;
  while (rank >= L - b) {
    rank -= L - b;
    ++b;
  }
  c = {a, b, b + static_cast<int>(rank)};
  return c;
}

Int formula_ordinal(const CnfFormula& f) {
  Int x = 0;
  for (const auto& c : f.clauses)
    boost::multiprecision::bit_set(x, static_cast<unsigned>(clause_rank(c, f.num_vars)));
  return x;
}

CnfFormula formula_from_ordinal(int num_vars, const Int& ordinal) {
  if (ordinal < 0) throw std::invalid_argument("formula_from_ordinal: negative ordinal");
  std::int64_t universe = clause_universe_size(num_vars);
  CnfFormula f;
  f.num_vars = num_vars;
  for (std::int64_t r = 0; r < universe; ++r)
    if (boost::multiprecision::bit_test(ordinal, static_cast<unsigned>(r)))
      f.clauses.push_back(clause_unrank(r, num_vars));
  Int limit = Int(1) << static_cast<unsigned>(universe);
  if (ordinal >= limit)
    throw std::out_of_range("formula_from_ordinal: ordinal exceeds the clause universe");
  return f;
}

bool satisfies(const CnfFormula& f, std::uint64_t assignment) {
  for (const auto& c : f.clauses) {
    bool clause_true = false;
    for (int lit : c) {
      int var = lit / 2;           // 0-based variable
      bool negated = (lit & 1) != 0;
      bool var_value = ((assignment >> var) & 1u) != 0;
      if (var_value != negated) {
        clause_true = true;
        break;
      }
    }
    if (!clause_true) return false;
  }
  return true;
}

}  // namespace mua
