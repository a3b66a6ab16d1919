#include "ea/state.hpp"

#include <cmath>
#include <random>

#include "ea/error.hpp"

namespace ea {

Rational parse_rational(std::string_view text) {
  std::string t(text);
  auto trim = [](std::string& x) {
    while (!x.empty() && std::isspace(static_cast<unsigned char>(x.front()))) x.erase(x.begin());
    while (!x.empty() && std::isspace(static_cast<unsigned char>(x.back()))) x.pop_back();
  };
  trim(t);
  auto bad = [&]() -> Rational { fail(ErrorKind::ParseError, "not a rational: '" + t + "'"); };
  if (t.empty()) return bad();
  try {
    std::size_t used = 0;
    if (auto slash = t.find('/'); slash != std::string::npos) {
      std::string num = t.substr(0, slash), den = t.substr(slash + 1);
      trim(num);
      trim(den);
      std::int64_t m = std::stoll(num, &used);
      if (used != num.size()) return bad();
      std::int64_t n = std::stoll(den, &used);
      if (used != den.size() || n == 0) return bad();
      return Rational(m, n);
    }
    if (auto dot = t.find('.'); dot != std::string::npos) {
      bool neg = t[0] == '-';
      std::string digits = t.substr(neg ? 1 : 0);
      dot = digits.find('.');
      std::string ip = digits.substr(0, dot), fp = digits.substr(dot + 1);
      if (fp.size() > 15 || fp.find_first_not_of("0123456789") != std::string::npos ||
          ip.find_first_not_of("0123456789") != std::string::npos)
        return bad();
      std::int64_t den = 1;
      for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
      std::int64_t num = (ip.empty() ? 0 : std::stoll(ip)) * den + (fp.empty() ? 0 : std::stoll(fp));
      return Rational(neg ? -num : num, den);
    }
    std::int64_t m = std::stoll(t, &used);
    if (used != t.size()) return bad();
    return Rational(m);
  } catch (const std::logic_error&) {
    return bad();
  }
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational& r) { return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()); }

Report validate_state(const FiniteEffectAlgebra& E, const State& s, const ValidationOptions& opts) {
  Report rep;
  rep.subject = "state";
  const std::size_t n = E.size();
  if (s.values.size() != n) {
    rep.add("domain", false, std::to_string(s.values.size()) + " values for " + std::to_string(n) + " elements");
    return rep;
  }
  rep.add("s(1) = 1", s(E.one()) == 1, "s(1) = " + to_string(s(E.one())));
  std::string range;
  for (Elem a : E.elements())
    if (s(a) < 0 || s(a) > 1) {
      range = "s(" + E.label(a) + ") = " + to_string(s(a));
      break;
    }
  rep.add("values in [0,1]", range.empty(), range);
  std::string add;
  auto probe = [&](Elem a, Elem b) {
    auto x = E.sum(a, b);
    if (x && s(*x) != s(a) + s(b))
      add = "s(" + E.label(a) + " + " + E.label(b) + ") != s(" + E.label(a) + ") + s(" + E.label(b) + ")";
  };
  if (static_cast<std::uint64_t>(n) * n <= opts.work_budget / 8) {
    for (std::uint32_t a = 0; a < n && add.empty(); ++a)
      for (std::uint32_t b = a; b < n && add.empty(); ++b) probe(Elem{a}, Elem{b});
  } else {
    rep.sampled = true;
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(n - 1));
    for (std::uint64_t i = 0; i < opts.samples && add.empty(); ++i) probe(Elem{pick(rng)}, Elem{pick(rng)});
  }
  rep.add("additive", add.empty(), add);
  return rep;
}

bool is_faithful(const FiniteEffectAlgebra& E, const State& s) {
  for (Elem a : E.elements())
    if (a != E.zero() && s(a) == 0) return false;
  return true;
}

ValidatedState::ValidatedState(const FiniteEffectAlgebra& E, State s, const ValidationOptions& opts)
    : s_(std::move(s)) {
  Report r = validate_state(E, s_, opts);
  if (const Check* f = r.first_failure()) fail(ErrorKind::InvalidState, f->name + ": " + f->detail);
}

}  // namespace ea
