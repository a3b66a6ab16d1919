#include "ea/document.hpp"

#include <fstream>
#include <sstream>

#include "ea/error.hpp"

namespace ea {

namespace {

using nlohmann::json;

[[noreturn]] void schema(const std::string& msg) { fail(ErrorKind::ParseError, msg); }

const json& need(const json& doc, const char* key, const std::string& where) {
  if (!doc.is_object() || !doc.contains(key)) schema("missing key '" + std::string(key) + "' in " + where);
  return doc[key];
}

std::int64_t need_int(const json& doc, const char* key, const std::string& where) {
  const json& v = need(doc, key, where);
  if (!v.is_number_integer()) schema("'" + std::string(key) + "' in " + where + " must be an integer");
  return v.get<std::int64_t>();
}

Rational value_of(const json& v) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_float()) return parse_rational(v.dump());
  schema("expected a rational (\"m/n\", integer or decimal string), got " + v.dump());
}

FiniteInstance parse_table(const json& doc, const InstanceOptions& opts) {
  const std::string where = "table document";
  const std::int64_t n = need_int(doc, "size", where);
  if (n < 1) schema("table size must be positive");
  const auto N = static_cast<std::size_t>(n);
  auto index = [&](const json& v) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0 || v.get<std::int64_t>() >= n)
      schema("table element " + v.dump() + " outside 0.." + std::to_string(n - 1));
    return static_cast<std::uint32_t>(v.get<std::int64_t>());
  };
  const Elem zero{index(need(doc, "zero", where))}, one{index(need(doc, "one", where))};
  const bool symmetric = doc.value("symmetric", true);
  std::vector<std::int32_t> table(N * N, -1);
  auto put = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    auto& slot = table[a * N + b];
    if (slot >= 0 && slot != static_cast<std::int32_t>(c))
      schema("conflicting sums for (" + std::to_string(a) + ", " + std::to_string(b) + ")");
    slot = static_cast<std::int32_t>(c);
  };
  const json& sums = need(doc, "sums", where);
  if (!sums.is_array()) schema("'sums' must be a list of [a, b, a+b] triples");
  for (const auto& t : sums) {
    if (!t.is_array() || t.size() != 3) schema("sum triple must have three entries: " + t.dump());
    const auto a = index(t[0]), b = index(t[1]), c = index(t[2]);
    put(a, b, c);
    if (symmetric) put(b, a, c);
  }
  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    for (const auto& l : doc["labels"]) {
      if (!l.is_string()) schema("labels must be strings");
      labels.push_back(l.get<std::string>());
    }
    if (labels.size() != N) schema("expected " + std::to_string(N) + " labels");
  }
  std::optional<TableBase> base;
  if (doc.contains("base") && !(doc["base"].is_string() && doc["base"] == "central")) {
    const json& b = doc["base"];
    const json& ps = need(b, "projections", "table base");
    const json& ms = need(b, "maps", "table base");
    if (!ps.is_array() || !ms.is_array() || ps.size() != ms.size()) schema("base needs one map per projection");
    base.emplace();
    for (const auto& p : ps) base->projections.push_back(Elem{index(p)});
    for (const auto& m : ms) {
      if (!m.is_array() || m.size() != N) schema("each map needs " + std::to_string(N) + " values");
      std::vector<Elem> row;
      for (const auto& v : m) row.push_back(Elem{index(v)});
      base->maps.push_back(std::move(row));
    }
  }
  return make_table(N, zero, one, std::move(table), std::move(labels), std::move(base), opts);
}

}  // namespace

json parse_json_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    fail(ErrorKind::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

FiniteInstance parse_finite_instance(const json& doc, const InstanceOptions& opts) {
  Instance inst = parse_instance(doc, opts);
  if (auto* f = std::get_if<FiniteInstance>(&inst)) return std::move(*f);
  schema("a finite instance is required here");
}

Instance parse_instance(const json& doc, const InstanceOptions& opts) {
  if (!doc.is_object()) schema("instance document must be a JSON object");
  const json& kind_v = need(doc, "kind", "instance document");
  if (!kind_v.is_string()) schema("'kind' must be a string");
  const std::string kind = kind_v.get<std::string>();
  // Parts are validated as part of the whole.
  InstanceOptions inner = opts;
  inner.validate = false;
  if (kind == "boolean") {
    const auto n = need_int(doc, "atoms", kind);
    if (n < 1 || n > 16) schema("'atoms' must be in 1..16");
    return make_boolean(static_cast<unsigned>(n), opts);
  }
  if (kind == "mv_product") {
    const auto k = need_int(doc, "denominator", kind), d = need_int(doc, "arity", kind);
    if (k < 1 || d < 1 || k > 16 || d > 4) schema("mv_product needs denominator in {2,4,8,16} and arity in 1..4");
    return make_mv_product(static_cast<unsigned>(k), static_cast<unsigned>(d), opts);
  }
  if (kind == "matrix") {
    const auto d = need_int(doc, "dim", kind);
    if (d < 2 || d > 4) schema("'dim' must be 2, 3 or 4");
    return make_matrix(static_cast<int>(d));
  }
  if (kind == "product") {
    const json& fs = need(doc, "factors", kind);
    if (!fs.is_array() || fs.size() < 2) schema("'factors' must list at least two instance documents");
    FiniteInstance acc = parse_finite_instance(fs[0], inner);
    for (std::size_t i = 1; i < fs.size(); ++i)
      acc = make_product(acc, parse_finite_instance(fs[i], inner), i + 1 == fs.size() ? opts : inner);
    if (fs.size() > 2) acc.document = doc;
    return acc;
  }
  if (kind == "horizontal_sum") {
    const json& ps = need(doc, "parts", kind);
    if (!ps.is_array() || ps.size() != 2) schema("'parts' must list exactly two instance documents");
    FiniteInstance a = parse_finite_instance(ps[0], inner), b = parse_finite_instance(ps[1], inner);
    if (doc.contains("base") && doc["base"] == "central") return make_horizontal_sum_central(a, b, opts);
    const json& ss = need(doc, "states", kind);
    if (!ss.is_array() || ss.size() != 2) schema("'states' must list one state per part");
    InstanceOptions o = opts;
    o.require_faithful = doc.value("require_faithful", opts.require_faithful);
    return make_horizontal_sum(a, b, parse_state(a, ss[0]), parse_state(b, ss[1]), o);
  }
  if (kind == "table") return parse_table(doc, opts);
  schema("unknown kind '" + kind + "'");
}

const json& to_document(const Instance& inst) {
  return std::visit([](const auto& x) -> const json& { return x.document; }, inst);
}

State parse_state(const FiniteInstance& inst, const json& spec) {
  if (spec.is_string() && (spec == "avg" || spec == "average")) return average_state(inst);
  if (spec.is_object()) {
    const json& w = need(spec, "weights", "state");
    if (!w.is_array()) schema("'weights' must be a list");
    std::vector<Rational> ws;
    for (const auto& v : w) ws.push_back(value_of(v));
    return state_from_weights(inst, ws);
  }
  if (spec.is_array()) {
    State s;
    for (const auto& v : spec) s.values.push_back(value_of(v));
    if (s.values.size() != inst.algebra().size())
      schema("state lists " + std::to_string(s.values.size()) + " values for " + std::to_string(inst.algebra().size()) +
             " elements");
    return s;
  }
  schema("state must be a value list, {\"weights\": [...]} or \"avg\"");
}

json parse_address_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error&) {
    return std::string(text);
  }
}

}  // namespace ea
