#include <doctest.h>

#include "ea/comparability.hpp"
#include "ea/error.hpp"
#include "ea/instances.hpp"

using namespace ea;

namespace {

Elem mv(const FiniteInstance& inst, std::vector<std::int64_t> x) { return mv_element(inst, x); }

}  // namespace

TEST_CASE("b-property") {
  const auto l83 = make_mv_product(8, 3);
  for (Elem q : l83.base.projections()) CHECK(has_b_property(l83.base, q));
  CHECK(has_all_b(l83.base));
  const auto mo2 = make_mo2();
  for (Elem q : mo2.base.projections()) CHECK(has_b_property(mo2.base, q));
}

TEST_CASE("commute") {
  const auto l83 = make_mv_product(8, 3);
  const auto& E = l83.algebra();
  const Elem a = mv(l83, {2, 4, 7});
  for (Elem b : {mv(l83, {4, 4, 4}), mv(l83, {0, 8, 1}), E.one(), E.zero()}) CHECK(commute(l83.base, a, b));
  CHECK(commute(l83.base, a, E.supplement(a)));
  const Elem p = mv(l83, {8, 0, 8});
  CHECK(commute(l83.base, a, p) == in_commutant(l83.base, a, p));
}

TEST_CASE("p_le_set") {
  const auto l83 = make_mv_product(8, 3);
  const Elem e = mv(l83, {2, 4, 7}), f = mv(l83, {4, 4, 4});
  const auto s = p_le_set(l83.base, e, f);
  CHECK(s.test(l83.base.slot_of(mv(l83, {8, 8, 0}))));
  CHECK(s.test(l83.base.slot_of(mv(l83, {8, 0, 0}))));
  CHECK_FALSE(s.test(l83.base.slot_of(mv(l83, {8, 8, 8}))));
  CHECK(s.count() == 2);
  CHECK(p_le_set(l83.base, e, e) == bicommutant(l83.base, e));

  const auto b3 = make_boolean(3);
  const Elem p{0b001}, q{0b011};
  CHECK(p_le_set(b3.base, p, q).test(b3.base.slot_of(q)));
}

TEST_CASE("spectrality verdicts") {
  CHECK(is_spectral(make_boolean(1).base));
  CHECK(is_spectral(make_boolean(3).base));
  CHECK(is_spectral(make_mv_product(8, 3).base));
  CHECK(is_spectral(make_mv_product(4, 2).base));

  const Report mo2 = spectrality_report(make_mo2().base);
  CHECK_FALSE(mo2.passed());
  REQUIRE(mo2.first_failure() != nullptr);
  CHECK(mo2.first_failure()->name == "P = E_S");
}

TEST_CASE("two L8 chains pasted at 0 and 1 are not b-comparable") {
  const auto l8 = make_mv_product(8, 1);
  const auto hs = make_horizontal_sum(l8, l8, average_state(l8), average_state(l8));
  const Report r = spectrality_report(hs.base);
  CHECK_FALSE(r.passed());
  REQUIRE(r.first_failure() != nullptr);
  CHECK(r.first_failure()->name == "commuting pairs have nonempty P_<=");
  CHECK(blocks(hs.base).size() == 1);
}

TEST_CASE("positive parts") {
  const auto l83 = make_mv_product(8, 3);
  const Elem a = mv(l83, {2, 4, 7}), b = mv(l83, {4, 4, 4});
  CHECK(positive_part(l83.base, b, a) == mv(l83, {2, 0, 0}));
  CHECK(positive_part(l83.base, a, b) == mv(l83, {0, 0, 3}));
  CHECK(positive_part(l83.base, a, a) == l83.algebra().zero());

  const auto b3 = make_boolean(3);
  const Elem p{0b011}, q{0b110};
  CHECK(positive_part(b3.base, q, p) == Elem{0b100});

  const auto l8 = make_mv_product(8, 1);
  const auto hs = make_horizontal_sum(l8, l8, average_state(l8), average_state(l8));
  const Elem left = hs.element(nlohmann::json{{"part", 1}, {"element", 1}});
  const Elem right = hs.element(nlohmann::json{{"part", 2}, {"element", 1}});
  try {
    positive_part(hs.base, left, right);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ComparabilityMissing);
  }
}

TEST_CASE("split") {
  const auto l83 = make_mv_product(8, 3);
  const auto& E = l83.algebra();
  auto r = split(l83.base, mv(l83, {2, 4, 7}), E.one());
  CHECK(r.u0 == mv(l83, {8, 8, 0}));
  CHECK(r.u1 == mv(l83, {0, 0, 8}));
  CHECK(r.c0 == mv(l83, {4, 8, 0}));
  CHECK(r.c1 == mv(l83, {0, 0, 6}));

  const Elem q = mv(l83, {8, 0, 8});
  r = split(l83.base, E.zero(), q);
  CHECK(r.u0 == q);
  CHECK(r.u1 == E.zero());
  CHECK(r.c0 == E.zero());
  CHECK(r.c1 == E.zero());

  r = split(l83.base, q, q);
  CHECK(r.u0 == E.zero());
  CHECK(r.u1 == q);
  CHECK(r.c0 == E.zero());
  CHECK(r.c1 == q);

  CHECK_THROWS_AS(split(l83.base, mv(l83, {2, 4, 7}), q), Error);
}

TEST_CASE("restrict") {
  const auto l83 = make_mv_product(8, 3);
  auto r = restrict(l83.base, mv(l83, {8, 8, 0}));
  CHECK(r.base.algebra().size() == 81);
  CHECK(r.base.num_projections() == 4);
  CHECK(is_spectral(r.base));
  CHECK(r.base.algebra().one() == Elem{static_cast<std::uint32_t>(r.from_parent[mv(l83, {8, 8, 0}).id])});

  r = restrict(l83.base, l83.algebra().one());
  CHECK(r.base.algebra().size() == 729);
  CHECK(r.base.num_projections() == 8);

  const auto b3 = make_boolean(3);
  r = restrict(b3.base, Elem{0b011});
  CHECK(r.base.algebra().size() == 4);
  CHECK(r.base.num_projections() == 4);
  CHECK_THROWS_AS(restrict(l83.base, mv(l83, {2, 4, 7})), Error);
}
