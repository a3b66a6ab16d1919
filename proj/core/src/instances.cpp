#include "ea/instances.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>

#include "ea/error.hpp"

namespace ea {

namespace {

std::string join(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

void check_size(std::size_t n, const std::string& what) {
  if (n > max_carrier())
    fail(ErrorKind::SizeLimit, what + " has " + std::to_string(n) + " elements, cap is " + std::to_string(max_carrier()));
}

void validate_or_throw(const FiniteInstance& inst, const InstanceOptions& opts) {
  if (!opts.validate) return;
  Report r = validate_instance(inst, opts.validation);
  if (!r.passed()) {
    const Check* c = r.first_failure();
    fail(ErrorKind::InvalidInstance, inst.name + ": " + c->name + (c->detail.empty() ? "" : " (" + c->detail + ")"));
  }
}

class BooleanModel : public CarrierModel {
 public:
  explicit BooleanModel(unsigned atoms) : atoms_(atoms), full_((std::uint32_t{1} << atoms) - 1) {}
  std::size_t size() const override { return std::size_t{full_} + 1; }
  Elem zero() const override { return Elem{0}; }
  Elem one() const override { return Elem{full_}; }
  std::optional<Elem> sum(Elem a, Elem b) const override {
    if (a.id & b.id) return std::nullopt;
    return Elem{a.id | b.id};
  }
  std::optional<Elem> supplement(Elem a) const override { return Elem{full_ ^ a.id}; }
  std::string label(Elem a) const override {
    std::string s = "{";
    bool first = true;
    for (unsigned i = 0; i < atoms_; ++i)
      if (a.id >> i & 1U) {
        s += (first ? "" : ",") + std::to_string(i + 1);
        first = false;
      }
    return s + "}";
  }
  // Atom list [1,3] or "{1,3}"; a bare integer is the bitmask.
  nlohmann::json address(Elem a) const override {
    auto out = nlohmann::json::array();
    for (unsigned i = 0; i < atoms_; ++i)
      if (a.id >> i & 1U) out.push_back(i + 1);
    return out;
  }
  std::optional<Elem> parse_address(const nlohmann::json& j) const override {
    if (j.is_number_integer()) return CarrierModel::parse_address(j);
    std::vector<std::int64_t> v;
    if (j.is_array()) {
      for (const auto& x : j) {
        if (!x.is_number_integer()) return std::nullopt;
        v.push_back(x.get<std::int64_t>());
      }
    } else if (j.is_string()) {
      std::string s = j.get<std::string>();
      for (char& c : s)
        if (c == '{' || c == '}' || c == ',') c = ' ';
      std::istringstream in(s);
      std::int64_t x;
      while (in >> x) v.push_back(x);
      if (!in.eof()) return std::nullopt;
    } else {
      return std::nullopt;
    }
    std::uint32_t mask = 0;
    for (auto x : v) {
      if (x < 1 || x > static_cast<std::int64_t>(atoms_)) return std::nullopt;
      mask |= std::uint32_t{1} << (x - 1);
    }
    return Elem{mask};
  }

 private:
  unsigned atoms_;
  std::uint32_t full_;
};

class MvModel : public CarrierModel {
 public:
  MvModel(unsigned k, unsigned d) : k_(k), d_(d) {
    n_ = 1;
    for (unsigned i = 0; i < d; ++i) n_ *= k + 1;
  }
  std::size_t size() const override { return n_; }
  Elem zero() const override { return Elem{0}; }
  Elem one() const override { return Elem{static_cast<std::uint32_t>(n_ - 1)}; }
  std::vector<std::int64_t> decode(Elem a) const {
    std::vector<std::int64_t> v(d_);
    std::uint32_t x = a.id;
    for (unsigned i = d_; i-- > 0;) {
      v[i] = x % (k_ + 1);
      x /= k_ + 1;
    }
    return v;
  }
  std::optional<Elem> encode(const std::vector<std::int64_t>& v) const {
    if (v.size() != d_) return std::nullopt;
    std::uint32_t x = 0;
    for (auto c : v) {
      if (c < 0 || c > static_cast<std::int64_t>(k_)) return std::nullopt;
      x = x * (k_ + 1) + static_cast<std::uint32_t>(c);
    }
    return Elem{x};
  }
  std::optional<Elem> sum(Elem a, Elem b) const override {
    auto x = decode(a), y = decode(b);
    for (unsigned i = 0; i < d_; ++i) {
      x[i] += y[i];
      if (x[i] > static_cast<std::int64_t>(k_)) return std::nullopt;
    }
    return encode(x);
  }
  std::optional<Elem> supplement(Elem a) const override { return Elem{static_cast<std::uint32_t>(n_ - 1 - a.id)}; }
  std::string label(Elem a) const override {
    auto v = decode(a);
    if (d_ == 1) return std::to_string(v[0]) + "/" + std::to_string(k_);
    return "(" + join(v) + ")/" + std::to_string(k_);
  }
  nlohmann::json address(Elem a) const override { return decode(a); }
  std::optional<Elem> parse_address(const nlohmann::json& j) const override {
    std::vector<std::int64_t> v;
    if (j.is_number_integer()) {
      v.push_back(j.get<std::int64_t>());
    } else if (j.is_array()) {
      for (const auto& x : j) {
        if (!x.is_number_integer()) return std::nullopt;
        v.push_back(x.get<std::int64_t>());
      }
    } else if (j.is_string()) {
      std::string s = j.get<std::string>();
      if (auto slash = s.find(')'); slash != std::string::npos) s = s.substr(0, slash);
      std::replace(s.begin(), s.end(), '(', ' ');
      std::replace(s.begin(), s.end(), ',', ' ');
      std::istringstream in(s);
      std::int64_t x;
      while (in >> x) v.push_back(x);
      if (!in.eof()) return std::nullopt;
    } else {
      return std::nullopt;
    }
    return encode(v);
  }

 private:
  unsigned k_, d_;
  std::size_t n_;
};

class ProductModel : public CarrierModel {
 public:
  ProductModel(FiniteEffectAlgebra a, FiniteEffectAlgebra b) : a_(std::move(a)), b_(std::move(b)) {}
  std::size_t size() const override { return a_.size() * b_.size(); }
  Elem zero() const override { return pack(a_.zero(), b_.zero()); }
  Elem one() const override { return pack(a_.one(), b_.one()); }
  std::optional<Elem> sum(Elem x, Elem y) const override {
    auto s = a_.sum(first(x), first(y));
    if (!s) return std::nullopt;
    auto t = b_.sum(second(x), second(y));
    if (!t) return std::nullopt;
    return pack(*s, *t);
  }
  std::optional<Elem> supplement(Elem x) const override {
    auto s = a_.try_supplement(first(x)), t = b_.try_supplement(second(x));
    if (!s || !t) return std::nullopt;
    return pack(*s, *t);
  }
  std::string label(Elem x) const override { return "[" + a_.label(first(x)) + ", " + b_.label(second(x)) + "]"; }
  nlohmann::json address(Elem x) const override { return {a_.address(first(x)), b_.address(second(x))}; }
  std::optional<Elem> parse_address(const nlohmann::json& j) const override {
    if (!j.is_array() || j.size() != 2) return std::nullopt;
    auto s = a_.parse_address(j[0]), t = b_.parse_address(j[1]);
    if (!s || !t) return std::nullopt;
    return pack(*s, *t);
  }

  Elem pack(Elem x, Elem y) const { return Elem{static_cast<std::uint32_t>(x.id * b_.size() + y.id)}; }
  Elem first(Elem x) const { return Elem{static_cast<std::uint32_t>(x.id / b_.size())}; }
  Elem second(Elem x) const { return Elem{static_cast<std::uint32_t>(x.id % b_.size())}; }

 private:
  FiniteEffectAlgebra a_, b_;
};

// Carrier: 0, interior of part 1, interior of part 2, 1.
class HorizontalSumModel : public CarrierModel {
 public:
  HorizontalSumModel(FiniteEffectAlgebra a, FiniteEffectAlgebra b) : parts_{std::move(a), std::move(b)} {
    to_.resize(2);
    std::uint32_t next = 1;
    for (int i = 0; i < 2; ++i) {
      const auto& P = parts_[i];
      to_[i].assign(P.size(), 0);
      for (Elem x : P.elements()) {
        if (x == P.zero()) continue;
        if (x == P.one()) continue;
        to_[i][x.id] = next++;
        from_.push_back({i, x});
      }
    }
    n_ = next + 1;
    for (int i = 0; i < 2; ++i) to_[i][parts_[i].one().id] = static_cast<std::uint32_t>(n_ - 1);
  }
  std::size_t size() const override { return n_; }
  Elem zero() const override { return Elem{0}; }
  Elem one() const override { return Elem{static_cast<std::uint32_t>(n_ - 1)}; }
  bool interior(Elem x) const { return x.id != 0 && x.id + 1 != n_; }
  int part(Elem x) const { return from_[x.id - 1].first; }
  // Element of part i representing x; x must be 0, 1 or lie in part i.
  Elem local(int i, Elem x) const {
    if (x.id == 0) return parts_[i].zero();
    if (!interior(x)) return parts_[i].one();
    return from_[x.id - 1].second;
  }
  Elem global(int i, Elem x) const { return Elem{to_[i][x.id]}; }
  const FiniteEffectAlgebra& algebra(int i) const { return parts_[i]; }

  std::optional<Elem> sum(Elem x, Elem y) const override {
    if (x.id == 0) return y;
    if (y.id == 0) return x;
    if (!interior(x) || !interior(y) || part(x) != part(y)) return std::nullopt;
    const int i = part(x);
    auto s = parts_[i].sum(local(i, x), local(i, y));
    if (!s) return std::nullopt;
    return global(i, *s);
  }
  std::optional<Elem> supplement(Elem x) const override {
    if (!interior(x)) return Elem{static_cast<std::uint32_t>(n_ - 1 - x.id)};
    const int i = part(x);
    auto s = parts_[i].try_supplement(local(i, x));
    if (!s) return std::nullopt;
    return global(i, *s);
  }
  std::string label(Elem x) const override {
    if (x.id == 0) return "0";
    if (!interior(x)) return "1";
    const int i = part(x);
    return std::string(i == 0 ? "L" : "R") + "(" + parts_[i].label(local(i, x)) + ")";
  }
  nlohmann::json address(Elem x) const override {
    if (!interior(x)) return x.id == 0 ? 0 : 1;
    const int i = part(x);
    return {{"part", i + 1}, {"element", parts_[i].address(local(i, x))}};
  }
  std::optional<Elem> parse_address(const nlohmann::json& j) const override {
    if (j.is_number_integer()) {
      auto v = j.get<std::int64_t>();
      if (v == 0) return zero();
      if (v == 1) return one();
      return std::nullopt;
    }
    if (!j.is_object() || !j.contains("part") || !j.contains("element") || !j["part"].is_number_integer())
      return std::nullopt;
    const auto p = j["part"].get<std::int64_t>();
    if (p != 1 && p != 2) return std::nullopt;
    const int i = static_cast<int>(p - 1);
    auto x = parts_[i].parse_address(j["element"]);
    if (!x) return std::nullopt;
    return global(i, *x);
  }

 private:
  FiniteEffectAlgebra parts_[2];
  std::vector<std::vector<std::uint32_t>> to_;
  std::vector<std::pair<int, Elem>> from_;
  std::size_t n_ = 0;
};

// r p in a finite part: r = j/m needs x with m x = p, and returns j x.
class Scaler {
 public:
  explicit Scaler(const FiniteEffectAlgebra& E) : E_(&E) {}
  Elem operator()(Elem p, const Rational& r) {
    if (r == 0 || p == E_->zero()) return E_->zero();
    if (r == 1) return p;
    auto key = std::make_pair(p.id, r);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    const auto m = static_cast<unsigned>(r.denominator()), j = static_cast<unsigned>(r.numerator());
    for (Elem x : E_->elements()) {
      auto mx = E_->multiple(x, m);
      if (mx && *mx == p) {
        Elem y = *E_->multiple(x, j);
        cache_[key] = y;
        return y;
      }
    }
    fail(ErrorKind::ScaleMismatch, to_string(r) + " * " + E_->label(p) + " is not in the carrier");
  }

 private:
  const FiniteEffectAlgebra* E_;
  std::map<std::pair<std::uint32_t, Rational>, Elem> cache_;
};

}  // namespace

std::size_t max_carrier() {
  if (const char* v = std::getenv("EA_MAX_CARRIER")) {
    char* end = nullptr;
    const unsigned long long x = std::strtoull(v, &end, 10);
    if (end != v && *end == '\0' && x > 0) return static_cast<std::size_t>(x);
  }
  return 100000;
}

Elem FiniteInstance::element(const nlohmann::json& address) const {
  auto e = algebra().parse_address(address);
  if (!e) fail(ErrorKind::ElementNotFound, "no element at address " + address.dump() + " in " + name);
  return *e;
}

Matrix MatrixInstance::element(const nlohmann::json& address) const {
  std::vector<double> v;
  auto push = [&](const nlohmann::json& x) {
    if (x.is_number()) v.push_back(x.get<double>());
    else if (x.is_string()) v.push_back(to_double(parse_rational(x.get<std::string>())));
    else fail(ErrorKind::ElementNotFound, "matrix entries must be numbers or strings");
  };
  if (address.is_array()) {
    for (const auto& x : address) {
      if (x.is_array())
        for (const auto& y : x) push(y);
      else
        push(x);
    }
  } else if (address.is_string()) {
    std::string s = address.get<std::string>();
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) v.push_back(to_double(parse_rational(tok)));
  } else {
    fail(ErrorKind::ElementNotFound, "matrix address must be a list of entries");
  }
  const int n = algebra.dim();
  if (v.size() != static_cast<std::size_t>(n * n))
    fail(ErrorKind::ElementNotFound, "expected " + std::to_string(n * n) + " entries, got " + std::to_string(v.size()));
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = v[static_cast<std::size_t>(i * n + j)];
  if (!algebra.is_effect(a)) fail(ErrorKind::ElementNotFound, "matrix is not a symmetric effect 0 <= a <= I");
  return symmetrize(a);
}

Report validate_instance(const FiniteInstance& inst, const ValidationOptions& opts) {
  Report r = validate_axioms(inst.algebra(), opts);
  r.subject = inst.name;
  if (!r.passed()) return r;
  Report b = validate_base(inst.base, opts);
  r.merge(b);
  r.sampled = r.sampled || b.sampled;
  return r;
}

FiniteInstance make_boolean(unsigned atoms, const InstanceOptions& opts) {
  if (atoms < 1 || atoms > 16) fail(ErrorKind::SizeLimit, "boolean algebras need 1..16 atoms");
  check_size(std::size_t{1} << atoms, "boolean algebra");
  FiniteEffectAlgebra E(std::make_shared<BooleanModel>(atoms));
  std::vector<Elem> P = E.elements();
  GroupEmbedding emb{LatticeGroup(GroupElement(atoms, 1)), [atoms](Elem a) {
                       GroupElement g(atoms, 0);
                       for (unsigned i = 0; i < atoms; ++i) g[i] = a.id >> i & 1U;
                       return g;
                     }};
  FiniteInstance inst{"boolean(" + std::to_string(atoms) + ")",
                      {{"kind", "boolean"}, {"atoms", atoms}},
                      CompressionBase(E, P, [](Elem p, Elem a) { return Elem{a.id & p.id}; }),
                      std::move(emb),
                      std::nullopt};
  validate_or_throw(inst, opts);
  return inst;
}

FiniteInstance make_mv_product(unsigned k, unsigned d, const InstanceOptions& opts) {
  if (k != 2 && k != 4 && k != 8 && k != 16) fail(ErrorKind::InvalidInstance, "denominator must be 2, 4, 8 or 16");
  if (d < 1 || d > 4) fail(ErrorKind::InvalidInstance, "arity must be in 1..4");
  std::size_t n = 1;
  for (unsigned i = 0; i < d; ++i) n *= k + 1;
  check_size(n, "mv product");
  auto model = std::make_shared<MvModel>(k, d);
  FiniteEffectAlgebra E(model);
  std::vector<Elem> P;
  for (Elem a : E.elements()) {
    auto v = model->decode(a);
    if (std::all_of(v.begin(), v.end(), [k](std::int64_t x) { return x == 0 || x == static_cast<std::int64_t>(k); }))
      P.push_back(a);
  }
  auto maps = [model, k](Elem p, Elem a) {
    auto vp = model->decode(p), va = model->decode(a);
    for (std::size_t i = 0; i < va.size(); ++i)
      if (vp[i] != static_cast<std::int64_t>(k)) va[i] = 0;
    return *model->encode(va);
  };
  GroupEmbedding emb{LatticeGroup(GroupElement(d, k)), [model](Elem a) { return model->decode(a); }};
  std::string name = d == 1 ? "L" + std::to_string(k) : "mv_product(" + std::to_string(k) + "," + std::to_string(d) + ")";
  FiniteInstance inst{name,
                      {{"kind", "mv_product"}, {"denominator", k}, {"arity", d}},
                      CompressionBase(E, P, maps),
                      std::move(emb),
                      MvShape{k, d}};
  validate_or_throw(inst, opts);
  return inst;
}

MatrixInstance make_matrix(int dim) {
  if (dim < 2 || dim > 4) fail(ErrorKind::InvalidInstance, "matrix dimension must be 2, 3 or 4");
  return {"matrix(" + std::to_string(dim) + ")", {{"kind", "matrix"}, {"dim", dim}}, MatrixEffectAlgebra(dim)};
}

FiniteInstance make_product(const FiniteInstance& a, const FiniteInstance& b, const InstanceOptions& opts) {
  check_size(a.algebra().size() * b.algebra().size(), "product");
  auto model = std::make_shared<ProductModel>(a.algebra(), b.algebra());
  FiniteEffectAlgebra E(model);
  std::vector<Elem> P;
  for (Elem p : a.base.projections())
    for (Elem q : b.base.projections()) P.push_back(model->pack(p, q));
  const CompressionBase ba = a.base, bb = b.base;
  auto maps = [model, ba, bb](Elem p, Elem x) {
    return model->pack(ba.apply(model->first(p), model->first(x)), bb.apply(model->second(p), model->second(x)));
  };
  std::optional<GroupEmbedding> emb;
  if (a.group && b.group) {
    GroupElement unit = a.group->group.unit();
    unit.insert(unit.end(), b.group->group.unit().begin(), b.group->group.unit().end());
    if (unit.size() <= LatticeGroup::kMaxRank) {
      auto ea = a.group->embed, eb = b.group->embed;
      emb = GroupEmbedding{LatticeGroup(unit), [model, ea, eb](Elem x) {
                             GroupElement g = ea(model->first(x)), h = eb(model->second(x));
                             g.insert(g.end(), h.begin(), h.end());
                             return g;
                           }};
    }
  }
  FiniteInstance inst{a.name + " x " + b.name,
                      {{"kind", "product"}, {"factors", {a.document, b.document}}},
                      CompressionBase(E, P, maps),
                      std::move(emb),
                      std::nullopt};
  validate_or_throw(inst, opts);
  return inst;
}

namespace {

nlohmann::json state_json(const State& s) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& v : s.values) j.push_back(to_string(v));
  return j;
}

void check_part_state(const FiniteInstance& part, const State& s, const InstanceOptions& opts) {
  Report r = validate_state(part.algebra(), s, opts.validation);
  if (!r.passed()) fail(ErrorKind::InvalidState, part.name + ": " + r.first_failure()->name + " " + r.first_failure()->detail);
  if (opts.require_faithful && !is_faithful(part.algebra(), s))
    fail(ErrorKind::NotFaithful, "state on " + part.name + " vanishes on a nonzero element");
}

}  // namespace

FiniteInstance make_horizontal_sum(const FiniteInstance& a, const FiniteInstance& b, const State& sa, const State& sb,
                                   const InstanceOptions& opts) {
  check_part_state(a, sa, opts);
  check_part_state(b, sb, opts);
  auto model = std::make_shared<HorizontalSumModel>(a.algebra(), b.algebra());
  check_size(model->size(), "horizontal sum");
  FiniteEffectAlgebra E(model);
  const CompressionBase* bases[2] = {&a.base, &b.base};
  const State* states[2] = {&sa, &sb};
  std::vector<Elem> P;
  for (int i = 0; i < 2; ++i)
    for (Elem p : bases[i]->projections()) P.push_back(model->global(i, p));
  std::sort(P.begin(), P.end());
  P.erase(std::unique(P.begin(), P.end()), P.end());
  // Precompute every J_p(x) so scaling failures surface here.
  std::map<std::pair<std::uint32_t, std::uint32_t>, Elem> table;
  Scaler scale[2] = {Scaler(model->algebra(0)), Scaler(model->algebra(1))};
  for (Elem p : P) {
    for (Elem x : E.elements()) {
      Elem v;
      if (p == E.zero()) {
        v = E.zero();
      } else if (p == E.one()) {
        v = x;
      } else {
        const int i = model->part(p);
        const Elem lp = model->local(i, p);
        if (!model->interior(x) || model->part(x) == i) {
          v = model->global(i, bases[i]->apply(lp, model->local(i, x)));
        } else {
          const int j = 1 - i;
          v = model->global(i, scale[i](lp, (*states[j])(model->local(j, x))));
        }
      }
      table[{p.id, x.id}] = v;
    }
  }
  auto maps = [table](Elem p, Elem x) { return table.at({p.id, x.id}); };
  FiniteInstance inst{a.name + " + " + b.name,
                      {{"kind", "horizontal_sum"},
                       {"parts", {a.document, b.document}},
                       {"states", {state_json(sa), state_json(sb)}}},
                      CompressionBase(E, P, maps),
                      std::nullopt,
                      std::nullopt};
  validate_or_throw(inst, opts);
  return inst;
}

FiniteInstance make_horizontal_sum_central(const FiniteInstance& a, const FiniteInstance& b, const InstanceOptions& opts) {
  auto model = std::make_shared<HorizontalSumModel>(a.algebra(), b.algebra());
  check_size(model->size(), "horizontal sum");
  FiniteEffectAlgebra E(model);
  FiniteInstance inst{a.name + " + " + b.name,
                      {{"kind", "horizontal_sum"}, {"parts", {a.document, b.document}}, {"base", "central"}},
                      central_base(E),
                      std::nullopt,
                      std::nullopt};
  validate_or_throw(inst, opts);
  return inst;
}

FiniteInstance make_mo2(const InstanceOptions& opts) {
  FiniteInstance inst = make_horizontal_sum_central(make_boolean(2, opts), make_boolean(2, opts), opts);
  inst.name = "MO2";
  return inst;
}

FiniteInstance make_table(std::size_t n, Elem zero, Elem one, std::vector<std::int32_t> table,
                          std::vector<std::string> labels, std::optional<TableBase> base, const InstanceOptions& opts) {
  check_size(n, "table");
  nlohmann::json doc = {{"kind", "table"}, {"size", n}, {"zero", zero.id}, {"one", one.id}};
  nlohmann::json sums = nlohmann::json::array();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (table.at(a * n + b) >= 0) sums.push_back({a, b, table[a * n + b]});
  doc["sums"] = sums;
  if (!labels.empty()) doc["labels"] = labels;
  FiniteEffectAlgebra E(std::make_shared<TableModel>(n, zero, one, std::move(table), std::move(labels)));
  std::optional<CompressionBase> cb;
  if (base) {
    if (base->maps.size() != base->projections.size())
      fail(ErrorKind::InvalidInstance, "one map per projection is required");
    std::map<std::uint32_t, std::vector<Elem>> maps;
    nlohmann::json jp = nlohmann::json::array(), jm = nlohmann::json::array();
    for (std::size_t i = 0; i < base->projections.size(); ++i) {
      E.check(base->projections[i]);
      if (base->maps[i].size() != n) fail(ErrorKind::InvalidInstance, "map table needs one value per element");
      for (Elem v : base->maps[i]) E.check(v);
      maps[base->projections[i].id] = base->maps[i];
      jp.push_back(base->projections[i].id);
      nlohmann::json row = nlohmann::json::array();
      for (Elem v : base->maps[i]) row.push_back(v.id);
      jm.push_back(row);
    }
    doc["base"] = {{"projections", jp}, {"maps", jm}};
    cb.emplace(E, base->projections, [maps](Elem p, Elem a) { return maps.at(p.id)[a.id]; });
  } else {
    doc["base"] = "central";
    cb.emplace(central_base(E));
  }
  FiniteInstance inst{"table(" + std::to_string(n) + ")", doc, *cb, std::nullopt, std::nullopt};
  validate_or_throw(inst, opts);
  return inst;
}

State state_from_weights(const FiniteInstance& inst, const std::vector<Rational>& weights) {
  if (!inst.group) fail(ErrorKind::InvalidState, inst.name + " has no coordinate embedding for weights");
  const auto& G = inst.group->group;
  if (weights.size() != G.rank())
    fail(ErrorKind::InvalidState, "expected " + std::to_string(G.rank()) + " weights, got " + std::to_string(weights.size()));
  State s;
  for (Elem a : inst.algebra().elements()) {
    const GroupElement g = inst.group->embed(a);
    Rational v = 0;
    for (std::size_t i = 0; i < G.rank(); ++i) v += weights[i] * Rational(g[i], G.unit()[i]);
    s.values.push_back(v);
  }
  return s;
}

State average_state(const FiniteInstance& inst) {
  if (!inst.group) fail(ErrorKind::InvalidState, inst.name + " has no coordinate embedding");
  const auto r = static_cast<std::int64_t>(inst.group->group.rank());
  return state_from_weights(inst, std::vector<Rational>(static_cast<std::size_t>(r), Rational(1, r)));
}

Elem mv_element(const FiniteInstance& inst, const std::vector<std::int64_t>& numerators) {
  if (!inst.mv) fail(ErrorKind::DomainMismatch, inst.name + " is not an mv product");
  nlohmann::json j = numerators;
  return inst.element(j);
}

std::vector<std::int64_t> mv_numerators(const FiniteInstance& inst, Elem a) {
  if (!inst.mv || !inst.group) fail(ErrorKind::DomainMismatch, inst.name + " is not an mv product");
  inst.algebra().check(a);
  return inst.group->embed(a);
}

SplittingTree<Elem> closed_form_mv_resolution(const FiniteInstance& inst, Elem a, unsigned n) {
  if (!inst.mv) fail(ErrorKind::DomainMismatch, inst.name + " is not an mv product");
  if (n > 30) fail(ErrorKind::DomainMismatch, "depth too large");
  const std::int64_t k = inst.mv->denominator;
  const auto x = mv_numerators(inst, a);
  const std::size_t d = x.size();
  auto cell = [&](unsigned l, std::int64_t i) -> std::int64_t {
    // Index w with k(w)/2^l < x_i/k <= (k(w)+1)/2^l, or -1 when x_i = 0.
    if (x[static_cast<std::size_t>(i)] == 0) return -1;
    const std::int64_t scaled = x[static_cast<std::size_t>(i)] << l;  // 2^l x_i
    return (scaled + k - 1) / k - 1;
  };
  std::vector<std::int64_t> cover(d, 0);
  for (std::size_t i = 0; i < d; ++i) cover[i] = x[i] > 0 ? k : 0;
  SplittingTree<Elem> tree(n, inst.algebra().zero(), mv_element(inst, cover));
  for (unsigned l = 0; l <= n; ++l) {
    std::map<std::int64_t, std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>> nodes;
    for (std::size_t i = 0; i < d; ++i) {
      const std::int64_t w = cell(l, static_cast<std::int64_t>(i));
      if (w < 0) continue;
      auto& [u, c] = nodes.try_emplace(w, std::vector<std::int64_t>(d, 0), std::vector<std::int64_t>(d, 0)).first->second;
      u[i] = k;
      c[i] = (x[i] << l) - w * k;
    }
    for (const auto& [w, uc] : nodes)
      tree.level(l).push_back({static_cast<std::uint64_t>(w), mv_element(inst, uc.first), mv_element(inst, uc.second)});
  }
  return tree;
}

std::optional<std::pair<Elem, Elem>> torsion_witness(const FiniteEffectAlgebra& E) {
  std::vector<Elem> halves;
  for (Elem a : E.elements())
    if (auto s = E.sum(a, a); s && *s == E.one()) halves.push_back(a);
  if (halves.size() < 2) return std::nullopt;
  return std::make_pair(halves[0], halves[1]);
}

}  // namespace ea
