#include <doctest.h>

#include "ea/compbase.hpp"
#include "ea/error.hpp"
#include "ea/instances.hpp"

using namespace ea;
using nlohmann::json;

namespace {

std::vector<Elem> map_table(const CompressionBase& cb, Elem p) {
  std::vector<Elem> J;
  for (Elem a : cb.algebra().elements()) J.push_back(cb.apply(p, a));
  return J;
}

Elem part(const FiniteInstance& inst, int i, json addr) { return inst.element(json{{"part", i}, {"element", addr}}); }

bool failed(const Report& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return !c.passed;
  return false;
}

FiniteInstance mv82_plus_mo2(const State& mo2_state) {
  const auto left = make_mv_product(8, 2);
  const auto right = make_mo2();
  return make_horizontal_sum(left, right, average_state(left), mo2_state);
}

State mo2_state(Rational left_atom, Rational right_atom) {
  // MO2 layout: 0, L({1}), L({2}), R({1}), R({2}), 1.
  return State{{Rational(0), left_atom, 1 - left_atom, right_atom, 1 - right_atom, Rational(1)}};
}

}  // namespace

TEST_CASE("classify_map") {
  const auto b3 = make_boolean(3);
  const auto& E = b3.algebra();
  const Elem p{0b011};
  std::vector<Elem> U;
  for (Elem a : E.elements()) U.push_back(Elem{a.id & p.id});
  auto c = classify_map(E, U);
  CHECK(c.kind == MapClass::Kind::Compression);
  CHECK(c.focus == p);

  std::vector<Elem> zero(E.size(), E.zero());
  c = classify_map(E, zero);
  CHECK(c.kind == MapClass::Kind::Compression);
  CHECK(c.focus == E.zero());

  std::vector<Elem> one(E.size(), E.one());
  CHECK(classify_map(E, one).kind == MapClass::Kind::NotAdditive);

  const std::vector<Elem> id = E.elements();
  CHECK(classify_map(E, id).kind == MapClass::Kind::Compression);

  // Swapping atoms 1 and 2 is additive with J(1) = 1 but moves elements.
  std::vector<Elem> swap;
  for (Elem a : E.elements()) swap.push_back(Elem{(a.id & 0b100) | (a.id & 1U) << 1 | (a.id >> 1 & 1U)});
  CHECK(classify_map(E, swap).kind == MapClass::Kind::NotRetraction);
  CHECK_THROWS_AS(classify_map(E, std::vector<Elem>(3, E.zero())), Error);
}

TEST_CASE("classify_map: a non-faithful cross state gives a retraction") {
  const auto left = make_mv_product(8, 2);
  const auto right = make_mv_product(8, 2);
  InstanceOptions loose;
  loose.validate = false;
  loose.require_faithful = false;
  const State sl = state_from_weights(left, {Rational(1), Rational(0)});
  const State sr = state_from_weights(right, {Rational(0), Rational(1)});
  const auto hs = make_horizontal_sum(left, right, sl, sr, loose);
  const Elem p = part(hs, 1, json::array({8, 0}));
  const auto c = classify_map(hs.algebra(), map_table(hs.base, p));
  CHECK(c.kind == MapClass::Kind::Retraction);
  CHECK(c.focus == p);
  CHECK_THROWS_AS(make_horizontal_sum(left, right, sl, sr), Error);
}

TEST_CASE("validate_base") {
  CHECK(validate_base(make_mv_product(8, 3).base).passed());
  const auto hs = make_horizontal_sum(make_mv_product(8, 1), make_mv_product(8, 1),
                                      average_state(make_mv_product(8, 1)), average_state(make_mv_product(8, 1)));
  CHECK(validate_base(hs.base).passed());

  // J_p replaced by J_{p'} for one p.
  const auto l83 = make_mv_product(8, 3);
  const Elem p = mv_element(l83, {8, 0, 0}), pp = mv_element(l83, {0, 8, 8});
  const CompressionBase& central = l83.base;
  CompressionBase swapped(l83.algebra(), central.projections(),
                          [&central, p, pp](Elem q, Elem a) { return central.apply(q == p ? pp : q, a); });
  const Report r = validate_base(swapped);
  CHECK(failed(r, "(C1) J_p(1) = p"));
}

TEST_CASE("central_base") {
  CHECK(central_base(make_boolean(3).algebra()).num_projections() == 8);
  const auto l83 = make_mv_product(8, 3);
  const auto cb = central_base(l83.algebra());
  CHECK(cb.num_projections() == 8);
  for (Elem p : cb.projections())
    for (auto x : mv_numerators(l83, p)) CHECK((x == 0 || x == 8));
  const auto mo2 = make_mo2();
  const auto cm = central_base(mo2.algebra());
  CHECK(cm.projections() == std::vector<Elem>{mo2.algebra().zero(), mo2.algebra().one()});
  const Elem a = mv_element(l83, {2, 4, 7});
  CHECK(cb.apply(mv_element(l83, {8, 8, 0}), a) == mv_element(l83, {2, 4, 0}));
}

TEST_CASE("commutants and bicommutants") {
  const auto b3 = make_boolean(3);
  for (Elem p : b3.base.projections()) CHECK(commutant(b3.base, p).size() == 8);
  for (Elem a : b3.algebra().elements()) CHECK(bicommutant(b3.base, a).count() == 8);

  const auto hs = mv82_plus_mo2(mo2_state(Rational(1, 8), Rational(3, 8)));
  const Elem p = part(hs, 1, json::array({8, 0}));
  auto pcs = hs.base.to_elements(pc(hs.base, p));
  const auto& E = hs.algebra();
  std::vector<Elem> want{E.zero(), p, E.supplement(p), E.one()};
  std::sort(pcs.begin(), pcs.end());
  std::sort(want.begin(), want.end());
  CHECK(pcs == want);

  const auto mo2 = make_mo2();
  const Elem atom = mo2.element(json{{"part", 1}, {"element", 1}});
  CHECK(pc(mo2.base, atom).count() == 2);
}

TEST_CASE("blocks and C-blocks") {
  const auto b3 = make_boolean(3);
  auto bl = blocks(b3.base);
  REQUIRE(bl.size() == 1);
  CHECK(bl[0].count() == 8);
  CHECK(c_block(b3.base, bl[0]).size() == 8);

  const auto l83 = make_mv_product(8, 3);
  bl = blocks(l83.base);
  REQUIRE(bl.size() == 1);
  CHECK(bl[0].count() == 8);
  CHECK(c_block(l83.base, bl[0]).size() == 729);

  // The horizontal-sum base with a nontrivial left part: one block, its C-block the left summand.
  const auto hs = mv82_plus_mo2(mo2_state(Rational(1, 8), Rational(3, 8)));
  bl = blocks(hs.base);
  REQUIRE(bl.size() == 1);
  CHECK(bl[0].count() == 4);
  CHECK(c_block(hs.base, bl[0]).size() == 81);
}

TEST_CASE("block enumeration over the six sharp elements of MO2") {
  const auto mo2 = make_mo2();
  const auto& E = mo2.algebra();
  // Layout 0, L({1}), L({2}), R({1}), R({2}), 1; J_p is the meet inside p's side and 0 across.
  auto side = [](std::uint32_t id) { return id == 1 || id == 2 ? 1 : id == 3 || id == 4 ? 2 : 0; };
  CompressionBase all(E, E.elements(), [&](Elem p, Elem a) {
    if (p == E.zero() || a == E.zero()) return E.zero();
    if (p == E.one()) return a;
    if (a == E.one() || a == p) return p;
    return E.zero();
  });
  const auto bl = blocks(all);
  REQUIRE(bl.size() == 2);
  CHECK(bl[0].count() == 4);
  CHECK(bl[1].count() == 4);
  CHECK((bl[0] & bl[1]).count() == 2);
  for (const auto& b : bl) {
    int sides = 0;
    for (Elem x : all.to_elements(b)) sides |= 1 << side(x.id);
    CHECK((sides == 0b011 || sides == 0b101));
  }
}

TEST_CASE("projection covers") {
  const auto l83 = make_mv_product(8, 3);
  CHECK(projection_cover(l83.base, mv_element(l83, {2, 4, 7})) == l83.algebra().one());
  CHECK(projection_cover(l83.base, mv_element(l83, {2, 0, 7})) == mv_element(l83, {8, 0, 8}));
  CHECK(has_pcp(l83.base));
  const auto b3 = make_boolean(3);
  for (Elem a : b3.algebra().elements()) CHECK(projection_cover(b3.base, a) == a);

  // No least projection above an atom of MO2 besides 1: the cover is 1.
  const auto mo2 = make_mo2();
  CHECK(projection_cover(mo2.base, mo2.element(json{{"part", 1}, {"element", 1}})) == mo2.algebra().one());
}

TEST_CASE("NoCover when the projections above a have no least element") {
  const auto b3 = make_boolean(3);
  const auto& E = b3.algebra();
  // {1,2} and {2,3} both sit minimally above {2}.
  CompressionBase partial(E, {Elem{0}, Elem{0b011}, Elem{0b100}, Elem{0b110}, Elem{0b001}, Elem{0b111}},
                          [](Elem p, Elem a) { return Elem{p.id & a.id}; });
  CHECK_FALSE(find_cover(partial, Elem{0b010}).has_value());
  try {
    projection_cover(partial, Elem{0b010});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoCover);
  }
  CHECK_FALSE(has_pcp(partial));
}

TEST_CASE("orthomodular lattice checks") {
  CHECK(check_oml(make_boolean(3).base).passed());
  CHECK(check_oml(make_mv_product(8, 3).base).passed());
  CHECK(check_oml(mv82_plus_mo2(mo2_state(Rational(1, 8), Rational(3, 8))).base).passed());
}

TEST_CASE("two faithful states give different bases with the same projections") {
  const auto h1 = mv82_plus_mo2(mo2_state(Rational(1, 8), Rational(3, 8)));
  const auto h2 = mv82_plus_mo2(mo2_state(Rational(1, 2), Rational(1, 4)));
  CHECK(h1.base.projections() == h2.base.projections());
  CHECK(validate_base(h1.base).passed());
  CHECK(validate_base(h2.base).passed());
  bool differ = false;
  for (Elem p : h1.base.projections())
    for (Elem a : h1.algebra().elements()) differ = differ || h1.base.apply(p, a) != h2.base.apply(p, a);
  CHECK(differ);
}

TEST_CASE("scale mismatch and faithfulness guards") {
  const auto b2 = make_boolean(2);
  const auto mo2_parts = make_boolean(2);
  CHECK_THROWS_AS(make_horizontal_sum(b2, mo2_parts, average_state(b2), average_state(mo2_parts)), Error);
  try {
    make_horizontal_sum(b2, mo2_parts, average_state(b2), average_state(mo2_parts));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ScaleMismatch);
  }
}
