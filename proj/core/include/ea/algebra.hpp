#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ea/report.hpp"

namespace ea {

struct Elem {
  std::uint32_t id = 0;
  constexpr auto operator<=>(const Elem&) const = default;
};

// Concrete carrier description. Elements are dense indices 0..size()-1.
class CarrierModel {
 public:
  virtual ~CarrierModel() = default;
  virtual std::size_t size() const = 0;
  virtual Elem zero() const = 0;
  virtual Elem one() const = 0;
  virtual std::optional<Elem> sum(Elem a, Elem b) const = 0;
  // Optional fast orthosupplement; the algebra verifies it and falls back to a scan.
  virtual std::optional<Elem> supplement(Elem) const { return std::nullopt; }
  virtual std::string label(Elem a) const { return "#" + std::to_string(a.id); }
  // JSON address used by documents and the CLI.
  virtual nlohmann::json address(Elem a) const { return a.id; }
  virtual std::optional<Elem> parse_address(const nlohmann::json& j) const;
};

// Immutable finite effect algebra. Small carriers are materialized as a dense
// sum table; larger ones evaluate through the model.
struct AlgebraCache;
class PosetIndex;

class FiniteEffectAlgebra {
 public:
  static constexpr std::size_t kDenseLimit = 2048;

  explicit FiniteEffectAlgebra(std::shared_ptr<const CarrierModel> model);

  std::size_t size() const { return n_; }
  Elem zero() const { return zero_; }
  Elem one() const { return one_; }
  bool contains(Elem a) const { return a.id < n_; }
  void check(Elem a) const;

  // Unchecked fast path; arguments must lie in the carrier.
  std::optional<Elem> sum(Elem a, Elem b) const {
    if (!dense_.empty()) {
      std::int32_t s = dense_[static_cast<std::size_t>(a.id) * n_ + b.id];
      if (s < 0) return std::nullopt;
      return Elem{static_cast<std::uint32_t>(s)};
    }
    return model_->sum(a, b);
  }
  bool orthogonal(Elem a, Elem b) const { return sum(a, b).has_value(); }

  // Orthosupplement found during construction (first c with a+c=1).
  std::optional<Elem> try_supplement(Elem a) const {
    std::int32_t s = supp_[a.id];
    if (s < 0) return std::nullopt;
    return Elem{static_cast<std::uint32_t>(s)};
  }
  Elem supplement(Elem a) const;
  bool leq(Elem a, Elem b) const { return orthogonal(a, supplement(b)); }
  std::optional<Elem> ominus(Elem b, Elem a) const;
  std::optional<Elem> multiple(Elem a, unsigned n) const;

  std::string label(Elem a) const { return model_->label(a); }
  nlohmann::json address(Elem a) const { return model_->address(a); }
  std::optional<Elem> parse_address(const nlohmann::json& j) const { return model_->parse_address(j); }
  const CarrierModel& model() const { return *model_; }
  std::shared_ptr<const CarrierModel> model_ptr() const { return model_; }

  std::vector<Elem> elements() const;

 private:
  std::shared_ptr<const CarrierModel> model_;
  std::size_t n_ = 0;
  Elem zero_{}, one_{};
  std::vector<std::int32_t> dense_;
  std::vector<std::int32_t> supp_;
  std::shared_ptr<AlgebraCache> cache_;

  friend const PosetIndex& poset_index(const FiniteEffectAlgebra& E);
};

// Checked operations.
std::optional<Elem> partial_sum(const FiniteEffectAlgebra& E, Elem a, Elem b);
bool leq(const FiniteEffectAlgebra& E, Elem a, Elem b);
std::optional<Elem> ominus(const FiniteEffectAlgebra& E, Elem b, Elem a);
Elem orthosupplement(const FiniteEffectAlgebra& E, Elem a);

Report validate_axioms(const FiniteEffectAlgebra& E, const ValidationOptions& opts = {});

std::optional<Elem> meet(const FiniteEffectAlgebra& E, Elem a, Elem b);
std::optional<Elem> join(const FiniteEffectAlgebra& E, Elem a, Elem b);
bool is_sharp(const FiniteEffectAlgebra& E, Elem a);
std::vector<Elem> sharp_elements(const FiniteEffectAlgebra& E);
bool is_principal(const FiniteEffectAlgebra& E, Elem a);

struct MackeyWitness {
  Elem a1, b1, c;
};
// `hint` is tried as the common part c before the meet and the full scan.
std::optional<MackeyWitness> mackey_compatible(const FiniteEffectAlgebra& E, Elem a, Elem b,
                                               std::optional<Elem> hint = std::nullopt);

struct ArchimedeanVerdict {
  bool archimedean = true;
  std::string reason;
};
ArchimedeanVerdict is_archimedean(const FiniteEffectAlgebra& E);

// Explicit-table carrier; used for documents, restrictions and horizontal sums.
class TableModel : public CarrierModel {
 public:
  // table[a*n+b] = a+b or -1.
  TableModel(std::size_t n, Elem zero, Elem one, std::vector<std::int32_t> table,
             std::vector<std::string> labels = {});
  std::size_t size() const override { return n_; }
  Elem zero() const override { return zero_; }
  Elem one() const override { return one_; }
  std::optional<Elem> sum(Elem a, Elem b) const override;
  std::string label(Elem a) const override;

 private:
  std::size_t n_;
  Elem zero_, one_;
  std::vector<std::int32_t> table_;
  std::vector<std::string> labels_;
};

}  // namespace ea

template <>
struct std::hash<ea::Elem> {
  std::size_t operator()(const ea::Elem& e) const noexcept { return e.id; }
};
