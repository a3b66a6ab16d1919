#include "ea/algebra.hpp"

#include <mutex>
#include <numeric>
#include <random>
#include <sstream>

#include "ea/error.hpp"
#include "ea/poset.hpp"
#include "algebra_cache.hpp"

namespace ea {


std::optional<Elem> CarrierModel::parse_address(const nlohmann::json& j) const {
  if (!j.is_number_integer()) return std::nullopt;
  auto v = j.get<std::int64_t>();
  if (v < 0 || static_cast<std::size_t>(v) >= size()) return std::nullopt;
  return Elem{static_cast<std::uint32_t>(v)};
}

FiniteEffectAlgebra::FiniteEffectAlgebra(std::shared_ptr<const CarrierModel> model)
    : model_(std::move(model)), cache_(std::make_shared<AlgebraCache>()) {
  n_ = model_->size();
  zero_ = model_->zero();
  one_ = model_->one();
  if (n_ <= kDenseLimit) {
    dense_.assign(n_ * n_, -1);
    for (std::uint32_t a = 0; a < n_; ++a)
      for (std::uint32_t b = 0; b < n_; ++b)
        if (auto s = model_->sum(Elem{a}, Elem{b})) dense_[a * n_ + b] = static_cast<std::int32_t>(s->id);
  }
  supp_.assign(n_, -1);
  for (std::uint32_t a = 0; a < n_; ++a) {
    if (auto h = model_->supplement(Elem{a}); h && h->id < n_) {
      auto s = sum(Elem{a}, *h);
      if (s && *s == one_) {
        supp_[a] = static_cast<std::int32_t>(h->id);
        continue;
      }
    }
    for (std::uint32_t c = 0; c < n_; ++c) {
      auto s = sum(Elem{a}, Elem{c});
      if (s && *s == one_) {
        supp_[a] = static_cast<std::int32_t>(c);
        break;
      }
    }
  }
}

void FiniteEffectAlgebra::check(Elem a) const {
  if (!contains(a)) fail(ErrorKind::ElementNotInCarrier, "index " + std::to_string(a.id) + " >= " + std::to_string(n_));
}

Elem FiniteEffectAlgebra::supplement(Elem a) const {
  auto s = try_supplement(a);
  if (!s) fail(ErrorKind::InvalidInstance, "no orthosupplement for " + label(a));
  return *s;
}

std::optional<Elem> FiniteEffectAlgebra::ominus(Elem b, Elem a) const {
  auto s = sum(a, supplement(b));
  if (!s) return std::nullopt;
  return supplement(*s);
}

std::optional<Elem> FiniteEffectAlgebra::multiple(Elem a, unsigned n) const {
  Elem acc = zero_;
  for (unsigned i = 0; i < n; ++i) {
    auto s = sum(acc, a);
    if (!s) return std::nullopt;
    acc = *s;
  }
  return acc;
}

std::vector<Elem> FiniteEffectAlgebra::elements() const {
  std::vector<Elem> out(n_);
  for (std::uint32_t i = 0; i < n_; ++i) out[i] = Elem{i};
  return out;
}

std::optional<Elem> partial_sum(const FiniteEffectAlgebra& E, Elem a, Elem b) {
  E.check(a);
  E.check(b);
  return E.sum(a, b);
}

bool leq(const FiniteEffectAlgebra& E, Elem a, Elem b) {
  E.check(a);
  E.check(b);
  return E.leq(a, b);
}

std::optional<Elem> ominus(const FiniteEffectAlgebra& E, Elem b, Elem a) {
  E.check(a);
  E.check(b);
  return E.ominus(b, a);
}

Elem orthosupplement(const FiniteEffectAlgebra& E, Elem a) {
  E.check(a);
  return E.supplement(a);
}

namespace {

std::string show(const FiniteEffectAlgebra& E, std::initializer_list<Elem> xs) {
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (Elem x : xs) {
    if (!first) os << ", ";
    os << E.label(x);
    first = false;
  }
  os << ")";
  return os.str();
}

struct PairScan {
  std::string e1, e4, cancel, e3, unique;
  std::vector<std::uint64_t> row;       // number of partners of x
  std::vector<std::uint64_t> pairs_to;  // number of ordered pairs summing to x
};

// E1, E3, E4 and cancellation over every ordered pair.
PairScan scan_pairs(const FiniteEffectAlgebra& E) {
  const std::size_t n = E.size();
  PairScan r;
  r.row.assign(n, 0);
  r.pairs_to.assign(n, 0);
  std::vector<std::uint32_t> supp_count(n, 0);
  std::vector<std::uint32_t> stamp(n, UINT32_MAX), who(n, 0);
  for (std::uint32_t c = 0; c < n; ++c) {
    for (std::uint32_t a = 0; a < n; ++a) {
      auto s = E.sum(Elem{a}, Elem{c});
      if (!s) continue;
      ++r.row[a];
      ++r.pairs_to[s->id];
      if (r.e1.empty()) {
        auto t = E.sum(Elem{c}, Elem{a});
        if (!t || *t != *s) r.e1 = "a+b defined but b+a differs at " + show(E, {Elem{a}, Elem{c}});
      }
      if (r.cancel.empty()) {
        if (stamp[s->id] == c)
          r.cancel = "a+c = b+c with a != b at (a,b,c) = " + show(E, {Elem{a}, Elem{who[s->id]}, Elem{c}});
        stamp[s->id] = c;
        who[s->id] = a;
      }
      if (c == E.one().id && a != E.zero().id && r.e4.empty())
        r.e4 = "a+1 defined with a != 0 at a = " + E.label(Elem{a});
      if (*s == E.one()) ++supp_count[a];
    }
  }
  for (std::uint32_t a = 0; a < n; ++a) {
    if (supp_count[a] == 0 && r.e3.empty()) r.e3 = "no orthosupplement for " + E.label(Elem{a});
    if (supp_count[a] > 1 && r.unique.empty())
      r.unique = std::to_string(supp_count[a]) + " orthosupplements for " + E.label(Elem{a});
  }
  return r;
}

std::string check_triple(const FiniteEffectAlgebra& E, Elem a, Elem b, Elem x, Elem c) {
  auto xc = E.sum(x, c);
  if (!xc) return {};
  auto bc = E.sum(b, c);
  if (!bc) return "(a+b)+c defined but b+c undefined at (a,b,c) = " + show(E, {a, b, c});
  auto abc = E.sum(a, *bc);
  if (!abc) return "(a+b)+c defined but a+(b+c) undefined at (a,b,c) = " + show(E, {a, b, c});
  if (*abc != *xc) return "(a+b)+c != a+(b+c) at (a,b,c) = " + show(E, {a, b, c});
  return {};
}

}  // namespace

Report validate_axioms(const FiniteEffectAlgebra& E, const ValidationOptions& opts) {
  Report rep;
  rep.subject = "effect algebra axioms (|E| = " + std::to_string(E.size()) + ")";
  const std::size_t n = E.size();
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(n - 1));

  std::vector<std::uint64_t> row, pairs_to;
  const bool pairs_exhaustive = static_cast<std::uint64_t>(n) * n <= opts.work_budget;
  if (pairs_exhaustive) {
    PairScan ps = scan_pairs(E);
    row = std::move(ps.row);
    pairs_to = std::move(ps.pairs_to);
    rep.add("E1 commutativity", ps.e1.empty(), ps.e1);
    rep.add("E3 orthosupplement exists", ps.e3.empty(), ps.e3);
    rep.add("orthosupplement unique", ps.unique.empty(), ps.unique);
    rep.add("E4 zero-one law", ps.e4.empty(), ps.e4);
    rep.add("cancellation", ps.cancel.empty(), ps.cancel);
  } else {
    rep.sampled = true;
    std::string e1, e3, e4, uniq, cancel;
    for (std::uint64_t i = 0; i < opts.samples; ++i) {
      Elem a{pick(rng)}, b{pick(rng)}, c{pick(rng)};
      auto s = E.sum(a, b);
      if (s && e1.empty()) {
        auto t = E.sum(b, a);
        if (!t || *t != *s) e1 = "a+b defined but b+a differs at " + show(E, {a, b});
      }
      if (E.sum(a, E.one()) && a != E.zero() && e4.empty()) e4 = "a+1 defined with a != 0 at a = " + E.label(a);
      if (s && a != c && cancel.empty()) {
        auto t = E.sum(c, b);
        if (t && *t == *s) cancel = "a+c = b+c with a != b at (a,b,c) = " + show(E, {a, c, b});
      }
    }
    const std::uint64_t probes = std::max<std::uint64_t>(1, opts.samples / n);
    for (std::uint64_t i = 0; i < probes && e3.empty() && uniq.empty(); ++i) {
      Elem a{pick(rng)};
      int count = 0;
      for (std::uint32_t c = 0; c < n; ++c)
        if (auto s = E.sum(a, Elem{c}); s && *s == E.one()) ++count;
      if (count == 0) e3 = "no orthosupplement for " + E.label(a);
      if (count > 1) uniq = std::to_string(count) + " orthosupplements for " + E.label(a);
    }
    rep.add("E1 commutativity", e1.empty(), e1);
    rep.add("E3 orthosupplement exists", e3.empty(), e3);
    rep.add("orthosupplement unique", uniq.empty(), uniq);
    rep.add("E4 zero-one law", e4.empty(), e4);
    rep.add("cancellation", cancel.empty(), cancel);
  }

  // E2: count the summable triples first, scan them all if affordable.
  std::uint64_t triples = UINT64_MAX;
  if (pairs_exhaustive) {
    triples = 0;
    for (std::size_t x = 0; x < n; ++x) triples += pairs_to[x] * row[x];
  }
  std::string e2;
  if (triples <= opts.work_budget) {
    std::vector<std::uint32_t> offset(n + 1, 0), partners;
    partners.reserve(std::accumulate(row.begin(), row.end(), std::uint64_t{0}));
    for (std::uint32_t a = 0; a < n; ++a) {
      offset[a] = static_cast<std::uint32_t>(partners.size());
      for (std::uint32_t b = 0; b < n; ++b)
        if (E.sum(Elem{a}, Elem{b})) partners.push_back(b);
    }
    offset[n] = static_cast<std::uint32_t>(partners.size());
    for (std::uint32_t a = 0; a < n && e2.empty(); ++a) {
      for (std::uint32_t i = offset[a]; i < offset[a + 1] && e2.empty(); ++i) {
        Elem b{partners[i]};
        Elem x = *E.sum(Elem{a}, b);
        for (std::uint32_t j = offset[x.id]; j < offset[x.id + 1]; ++j) {
          e2 = check_triple(E, Elem{a}, b, x, Elem{partners[j]});
          if (!e2.empty()) break;
        }
      }
    }
    rep.add("E2 associativity", e2.empty(), e2.empty() ? std::to_string(triples) + " triples" : e2);
  } else {
    rep.sampled = true;
    std::uint64_t checked = 0;
    for (std::uint64_t i = 0; i < opts.samples && e2.empty(); ++i) {
      Elem a{pick(rng)}, b{pick(rng)};
      auto x = E.sum(a, b);
      for (int t = 0; !x && t < 64; ++t) {
        b = Elem{pick(rng)};
        x = E.sum(a, b);
      }
      if (!x) continue;
      for (int t = 0; t < 64; ++t) {
        Elem c{pick(rng)};
        if (!E.sum(*x, c)) continue;
        e2 = check_triple(E, a, b, *x, c);
        ++checked;
        break;
      }
    }
    rep.add("E2 associativity", e2.empty(), e2.empty() ? std::to_string(checked) + " sampled triples" : e2);
  }
  return rep;
}

std::optional<Elem> meet(const FiniteEffectAlgebra& E, Elem a, Elem b) {
  E.check(a);
  E.check(b);
  if (E.size() <= PosetIndex::kLimit) return poset_index(E).meet(a, b);
  // Brute force: the greatest common lower bound.
  std::vector<Elem> lower;
  for (Elem x : E.elements())
    if (E.leq(x, a) && E.leq(x, b)) lower.push_back(x);
  for (Elem m : lower) {
    bool top = true;
    for (Elem x : lower)
      if (!E.leq(x, m)) {
        top = false;
        break;
      }
    if (top) return m;
  }
  return std::nullopt;
}

std::optional<Elem> join(const FiniteEffectAlgebra& E, Elem a, Elem b) {
  auto m = meet(E, E.supplement(a), E.supplement(b));
  if (!m) return std::nullopt;
  return E.supplement(*m);
}

bool is_sharp(const FiniteEffectAlgebra& E, Elem a) {
  E.check(a);
  Elem s = E.supplement(a);
  if (E.size() <= PosetIndex::kLimit) {
    const auto& P = poset_index(E);
    return (P.down(a) & P.down(s)).count() == 1;
  }
  for (Elem x : E.elements())
    if (x != E.zero() && E.leq(x, a) && E.leq(x, s)) return false;
  return true;
}

std::vector<Elem> sharp_elements(const FiniteEffectAlgebra& E) {
  std::vector<Elem> out;
  for (Elem a : E.elements())
    if (is_sharp(E, a)) out.push_back(a);
  return out;
}

bool is_principal(const FiniteEffectAlgebra& E, Elem a) {
  E.check(a);
  std::vector<Elem> below;
  for (Elem x : E.elements())
    if (E.leq(x, a)) below.push_back(x);
  for (Elem x : below)
    for (Elem y : below) {
      auto s = E.sum(x, y);
      if (s && !E.leq(*s, a)) return false;
    }
  return true;
}

std::optional<MackeyWitness> mackey_compatible(const FiniteEffectAlgebra& E, Elem a, Elem b, std::optional<Elem> hint) {
  E.check(a);
  E.check(b);
  auto attempt = [&](Elem c) -> std::optional<MackeyWitness> {
    if (!E.leq(c, a) || !E.leq(c, b)) return std::nullopt;
    Elem a1 = *E.ominus(a, c), b1 = *E.ominus(b, c);
    auto s = E.sum(a1, b1);
    if (!s || !E.sum(*s, c)) return std::nullopt;
    return MackeyWitness{a1, b1, c};
  };
  if (hint && E.contains(*hint))
    if (auto w = attempt(*hint)) return w;
  if (E.size() <= 4096)
    if (auto m = meet(E, a, b))
      if (auto w = attempt(*m)) return w;
  for (Elem c : E.elements())
    if (auto w = attempt(c)) return w;
  return std::nullopt;
}

ArchimedeanVerdict is_archimedean(const FiniteEffectAlgebra& E) {
  PairScan ps = scan_pairs(E);
  if (!ps.cancel.empty()) return {false, "cancellation fails: " + ps.cancel};
  return {true, "finite and cancellative: na = ma with n < m forces (m-n)a = 0, so na <= 1 for all n gives a = 0"};
}

TableModel::TableModel(std::size_t n, Elem zero, Elem one, std::vector<std::int32_t> table,
                       std::vector<std::string> labels)
    : n_(n), zero_(zero), one_(one), table_(std::move(table)), labels_(std::move(labels)) {
  if (table_.size() != n_ * n_) fail(ErrorKind::DomainMismatch, "sum table must have n*n entries");
  if (zero_.id >= n_ || one_.id >= n_) fail(ErrorKind::ElementNotInCarrier, "zero/one outside carrier");
  for (auto v : table_)
    if (v >= static_cast<std::int32_t>(n_)) fail(ErrorKind::ElementNotInCarrier, "sum table value outside carrier");
  if (!labels_.empty() && labels_.size() != n_) fail(ErrorKind::DomainMismatch, "label count differs from carrier size");
}

std::optional<Elem> TableModel::sum(Elem a, Elem b) const {
  std::int32_t s = table_[static_cast<std::size_t>(a.id) * n_ + b.id];
  if (s < 0) return std::nullopt;
  return Elem{static_cast<std::uint32_t>(s)};
}

std::string TableModel::label(Elem a) const {
  if (labels_.empty()) return CarrierModel::label(a);
  return labels_[a.id];
}

}  // namespace ea
