#include <doctest.h>

#include "ea/algebra.hpp"
#include "ea/error.hpp"
#include "ea/instances.hpp"

using namespace ea;

namespace {

Elem mv(const FiniteInstance& inst, std::vector<std::int64_t> x) { return mv_element(inst, x); }

bool has_failed(const Report& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name.find(name) != std::string::npos && !c.passed) return true;
  return false;
}

FiniteEffectAlgebra chain_with_bad_unit_sum() {
  // 0, h, 1 with h + h = 1 and the illegal h + 1 = 1.
  std::vector<std::int32_t> t(9, -1);
  auto put = [&](int a, int b, int c) { t[static_cast<std::size_t>(a * 3 + b)] = c; };
  for (int a = 0; a < 3; ++a) {
    put(0, a, a);
    put(a, 0, a);
  }
  put(1, 1, 2);
  put(1, 2, 2);
  put(2, 1, 2);
  return FiniteEffectAlgebra(std::make_shared<TableModel>(3, Elem{0}, Elem{2}, t, std::vector<std::string>{"0", "h", "1"}));
}

}  // namespace

TEST_CASE("partial sums") {
  const auto b2 = make_boolean(2);
  CHECK(partial_sum(b2.algebra(), Elem{1}, Elem{2}) == Elem{3});
  CHECK_FALSE(partial_sum(b2.algebra(), Elem{1}, Elem{3}).has_value());

  const auto l8 = make_mv_product(8, 1);
  CHECK_FALSE(partial_sum(l8.algebra(), mv(l8, {3}), mv(l8, {6})).has_value());
  CHECK(partial_sum(l8.algebra(), mv(l8, {3}), mv(l8, {5})) == l8.algebra().one());

  const auto l83 = make_mv_product(8, 3);
  CHECK(partial_sum(l83.algebra(), mv(l83, {2, 4, 7}), mv(l83, {6, 4, 1})) == l83.algebra().one());
  CHECK_THROWS_AS(partial_sum(l83.algebra(), Elem{729}, Elem{0}), Error);
}

TEST_CASE("order, difference and orthosupplement") {
  const auto l8 = make_mv_product(8, 1);
  const auto& E = l8.algebra();
  CHECK(leq(E, mv(l8, {2}), mv(l8, {5})));
  CHECK_FALSE(leq(E, mv(l8, {5}), mv(l8, {2})));
  CHECK(ominus(E, mv(l8, {5}), mv(l8, {2})) == mv(l8, {3}));
  CHECK_FALSE(ominus(E, mv(l8, {2}), mv(l8, {5})).has_value());

  const auto l83 = make_mv_product(8, 3);
  CHECK(orthosupplement(l83.algebra(), mv(l83, {2, 4, 7})) == mv(l83, {6, 4, 1}));
  for (Elem a : l83.algebra().elements()) CHECK(leq(l83.algebra(), a, a));
}

TEST_CASE("axiom validation") {
  CHECK(validate_axioms(make_boolean(3).algebra()).passed());
  const Report r = validate_axioms(make_mv_product(8, 3).algebra());
  CHECK(r.passed());
  CHECK_FALSE(r.sampled);

  const Report bad = validate_axioms(chain_with_bad_unit_sum());
  CHECK(has_failed(bad, "E4"));
  const Check* e4 = nullptr;
  for (const auto& c : bad.checks)
    if (c.name.find("E4") != std::string::npos) e4 = &c;
  REQUIRE(e4 != nullptr);
  CHECK(e4->detail.find("h") != std::string::npos);
}

TEST_CASE("non-associative table is reported with a witness") {
  // Chain 0..4 quarters with 1 + 2 redirected to 4.
  const std::size_t n = 5;
  std::vector<std::int32_t> t(n * n, -1);
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 4; ++b) t[static_cast<std::size_t>(a * 5 + b)] = a + b;
  t[1 * 5 + 2] = 4;
  t[2 * 5 + 1] = 4;
  FiniteEffectAlgebra E(std::make_shared<TableModel>(n, Elem{0}, Elem{4}, t));
  const Report r = validate_axioms(E);
  CHECK(has_failed(r, "E2"));
}

TEST_CASE("sharp elements") {
  const auto l83 = make_mv_product(8, 3);
  const auto sharp = sharp_elements(l83.algebra());
  CHECK(sharp.size() == 8);
  for (Elem s : sharp)
    for (auto x : mv_numerators(l83, s)) CHECK((x == 0 || x == 8));

  const auto b3 = make_boolean(3);
  CHECK(sharp_elements(b3.algebra()).size() == 8);
  CHECK(sharp_elements(make_mo2().algebra()).size() == 6);
}

TEST_CASE("principal elements") {
  const auto b3 = make_boolean(3);
  for (Elem a : b3.algebra().elements()) CHECK(is_principal(b3.algebra(), a));
  const auto l8 = make_mv_product(8, 1);
  CHECK(is_principal(l8.algebra(), l8.algebra().one()));
  CHECK_FALSE(is_principal(l8.algebra(), mv(l8, {4})));
}

TEST_CASE("Mackey compatibility") {
  const auto l83 = make_mv_product(8, 3);
  const auto& E = l83.algebra();
  const Elem a = mv(l83, {2, 4, 7}), b = mv(l83, {4, 4, 4});
  auto w = mackey_compatible(E, a, b);
  REQUIRE(w.has_value());
  CHECK(w->c == mv(l83, {2, 4, 4}));
  CHECK(E.sum(w->a1, w->c) == a);
  CHECK(E.sum(w->b1, w->c) == b);

  const auto mo2 = make_mo2();
  const auto& M = mo2.algebra();
  const Elem left = mo2.element(nlohmann::json{{"part", 1}, {"element", 1}});
  const Elem right = mo2.element(nlohmann::json{{"part", 2}, {"element", 1}});
  CHECK_FALSE(mackey_compatible(M, left, right).has_value());
  CHECK(mackey_compatible(M, left, M.supplement(left)).has_value());
  const Elem h = mv(make_mv_product(8, 1), {3});
  const auto l8 = make_mv_product(8, 1);
  CHECK(mackey_compatible(l8.algebra(), h, l8.algebra().supplement(h)).has_value());
}

TEST_CASE("archimedean verdicts") {
  CHECK(is_archimedean(make_mv_product(8, 3).algebra()).archimedean);
  CHECK(is_archimedean(make_boolean(3).algebra()).archimedean);
  CHECK(is_archimedean(make_mo2().algebra()).archimedean);
}

TEST_CASE("meets and joins in a chain product") {
  const auto l83 = make_mv_product(8, 3);
  const auto& E = l83.algebra();
  CHECK(meet(E, mv(l83, {2, 4, 7}), mv(l83, {4, 4, 4})) == mv(l83, {2, 4, 4}));
  CHECK(join(E, mv(l83, {2, 4, 7}), mv(l83, {4, 4, 4})) == mv(l83, {4, 4, 7}));
}
