#include "ea_tools/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "ea/comparability.hpp"
#include "ea/document.hpp"
#include "ea/error.hpp"
#include "ea/group.hpp"
#include "ea/instances.hpp"
#include "ea/matrix.hpp"
#include "ea/spectral.hpp"

namespace ea::tools {

namespace {

using nlohmann::json;

enum class Format { Table, Csv, Json };

struct Options {
  std::string file;
  std::string format = "table";
  std::uint64_t seed = 1;
  int depth = -1;
  std::string element;
  std::string lambda;
  std::string state;
  std::string g, unit, approx;
  std::int64_t scale = 1;
};

Format format_of(const Options& o) {
  if (o.format == "json") return Format::Json;
  if (o.format == "csv") return Format::Csv;
  return Format::Table;
}

std::string num(double x) {
  if (std::abs(x) < 1e-12) x = 0;
  std::ostringstream s;
  s << std::setprecision(6) << x;
  return s.str();
}

std::string matrix_text(const Matrix& m) {
  std::string s = "[";
  for (int i = 0; i < m.rows(); ++i) {
    s += i ? ",[" : "[";
    for (int j = 0; j < m.cols(); ++j) s += (j ? "," : "") + num(m(i, j));
    s += "]";
  }
  return s + "]";
}

json matrix_json(const Matrix& m) {
  json j = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(std::abs(m(i, k)) < 1e-12 ? 0.0 : m(i, k));
    j.push_back(row);
  }
  return j;
}

// Zero-one vector for coordinate instances, the label otherwise.
std::string projection_text(const FiniteInstance& inst, Elem p) {
  if (!inst.group) return inst.algebra().label(p);
  const GroupElement g = inst.group->embed(p);
  const auto& u = inst.group->group.unit();
  std::string s = "(";
  for (std::size_t i = 0; i < g.size(); ++i) {
    Rational r(g[i], u[i]);
    s += (i ? "," : "") + to_string(r);
  }
  return s + ")";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string list_labels(const FiniteInstance& inst, const std::vector<Elem>& xs) {
  if (xs.size() > 16) return std::to_string(xs.size()) + " elements";
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + inst.algebra().label(xs[i]);
  return "{" + s + "}";
}

std::vector<std::int64_t> parse_int_list(std::string text) {
  for (char& c : text)
    if (c == '(' || c == ')' || c == '[' || c == ']' || c == ',') c = ' ';
  std::istringstream in(text);
  std::vector<std::int64_t> v;
  std::int64_t x;
  while (in >> x) v.push_back(x);
  if (!in.eof()) fail(ErrorKind::ParseError, "expected a list of integers");
  return v;
}

std::vector<std::int64_t> parse_grid(const std::string& text) {
  if (std::count(text.begin(), text.end(), ':') == 2) {
    std::string t = text;
    std::replace(t.begin(), t.end(), ':', ' ');
    std::istringstream in(t);
    std::int64_t lo, hi, step;
    if (!(in >> lo >> hi >> step) || step <= 0 || hi < lo) fail(ErrorKind::ParseError, "grid must be lo:hi:step");
    std::vector<std::int64_t> v;
    for (std::int64_t m = lo; m < hi; m += step) v.push_back(m);
    v.push_back(hi);
    return v;
  }
  return parse_int_list(text);
}

std::string verdict_reason(const Report& r) {
  const Check* c = r.first_failure();
  if (!c) return {};
  if (c->name == "P = E_S") return "P ≠ E_S";
  return c->name + " fails";
}

Instance load(const Options& o, bool validate) {
  InstanceOptions io;
  io.validate = validate;
  io.validation.seed = o.seed;
  return parse_instance(read_json_file(o.file), io);
}

void print_report(std::ostream& out, const Report& r, Format f) {
  if (f == Format::Json) out << r.to_json().dump(2) << "\n";
  else out << r.to_text();
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  const json doc = read_json_file(o.file);
  InstanceOptions io;
  io.validate = false;
  io.validation.seed = o.seed;
  Instance inst = [&]() -> Instance {
    try {
      return parse_instance(doc, io);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::InvalidInstance || e.kind() == ErrorKind::InternalConsistency) {
        Report r;
        r.subject = "instance";
        r.add("construction", false, e.what());
        print_report(out, r, format_of(o));
        throw;
      }
      throw;
    }
  }();
  Report r;
  if (auto* f = std::get_if<FiniteInstance>(&inst)) {
    ValidationOptions vo;
    vo.seed = o.seed;
    r = validate_instance(*f, vo);
  } else {
    const auto& m = std::get<MatrixInstance>(inst);
    r = validate_axioms(m.algebra, 2000, o.seed);
    r.subject = m.name;
    r.merge(validate_base(m.algebra, 2000, o.seed));
  }
  print_report(out, r, format_of(o));
  (void)err;
  return r.passed() ? 0 : 1;
}

int cmd_analyze(const Options& o, std::ostream& out) {
  Instance inst = load(o, true);
  const Format fmt = format_of(o);
  if (auto* m = std::get_if<MatrixInstance>(&inst)) {
    Report r = check_b_property(m->algebra, 500, o.seed);
    json j = {{"instance", m->name}, {"dim", m->algebra.dim()}, {"spectral", true}, {"checks", r.to_json()}};
    if (fmt == Format::Json) out << j.dump(2) << "\n";
    else
      out << "instance: " << m->name << "\nE: effects on R^" << m->algebra.dim()
          << " (not enumerable)\nP: symmetric projections, J_p(a) = pap\n"
          << "b-property spot check: " << (r.passed() ? "pass" : "FAIL") << " (sampled)\nspectral: yes\n";
    return 0;
  }
  const auto& f = std::get<FiniteInstance>(inst);
  const auto& E = f.algebra();
  const auto sharp = sharp_elements(E);
  const auto cen = center(E);
  const auto bl = blocks(f.base);
  std::vector<std::size_t> sizes;
  for (const auto& b : bl) sizes.push_back(c_block(f.base, b).size());
  const Report sr = spectrality_report(f.base);
  const bool spectral = sr.passed();
  if (fmt == Format::Json) {
    json j = {{"instance", f.name},
              {"size", E.size()},
              {"sharp", sharp.size()},
              {"center", cen.size()},
              {"projections", f.base.num_projections()},
              {"blocks", bl.size()},
              {"c_block_sizes", sizes},
              {"spectral", spectral},
              {"reason", verdict_reason(sr)},
              {"report", sr.to_json()}};
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "instance: " << f.name << "\n";
  out << "|E| = " << E.size() << "\n";
  out << "sharp elements: " << sharp.size() << " " << list_labels(f, sharp) << "\n";
  out << "center: " << cen.size() << " " << list_labels(f, cen) << "\n";
  out << "P: " << f.base.num_projections() << " " << list_labels(f, f.base.projections()) << "\n";
  out << "C-block sizes:";
  for (auto s : sizes) out << " " << s;
  out << "\n";
  for (const auto& c : sr.checks) out << "  [" << (c.passed ? "pass" : "FAIL") << "] " << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
  out << "spectral: " << (spectral ? "yes" : "no (" + verdict_reason(sr) + ")") << "; blocks: " << bl.size()
      << "; |P|=" << f.base.num_projections() << "\n";
  return 0;
}

int cmd_check_spectral(const Options& o, std::ostream& out) {
  Instance inst = load(o, true);
  const Format fmt = format_of(o);
  Report r;
  if (auto* m = std::get_if<MatrixInstance>(&inst)) {
    r = check_b_property(m->algebra, 500, o.seed);
  } else {
    r = spectrality_report(std::get<FiniteInstance>(inst).base);
  }
  if (fmt == Format::Json) {
    json j = r.to_json();
    j["spectral"] = r.passed();
    out << j.dump(2) << "\n";
  } else {
    out << "spectral: " << (r.passed() ? "yes" : "no (" + verdict_reason(r) + ")") << "\n";
  }
  return r.passed() ? 0 : 1;
}

template <class E, class Show, class ShowJson>
void emit_resolution(std::ostream& out, Format fmt, const std::string& element, const SplittingTree<E>& tree,
                     const SpectralResolution<E>& res, Show show, ShowJson show_json) {
  const unsigned n = res.depth;
  const std::uint64_t top = std::uint64_t{1} << n;
  if (fmt == Format::Csv) {
    out << "level,k,lambda,projection\n";
    for (std::uint64_t j = 0; j <= top; ++j) {
      DyadicRational d(j, n);
      out << d.level() << "," << d.numerator() << "," << d.to_string() << "," << csv_field(show(res.entries[j])) << "\n";
    }
    return;
  }
  if (fmt == Format::Json) {
    json rows = json::array(), layers = json::array();
    for (std::uint64_t j = 0; j <= top; ++j) {
      DyadicRational d(j, n);
      rows.push_back({{"level", d.level()}, {"k", d.numerator()}, {"lambda", d.to_string()}, {"projection", show_json(res.entries[j])}});
    }
    for (unsigned l = 0; l <= n; ++l)
      for (const auto& node : tree.level(l))
        layers.push_back({{"level", l},
                          {"w", l == 0 ? std::string() : BinaryString::from_index(node.k, l).to_string()},
                          {"u", show_json(node.u)},
                          {"c", show_json(node.c)}});
    out << json{{"element", element}, {"depth", n}, {"resolution", rows}, {"layers", layers}}.dump(2) << "\n";
    return;
  }
  out << "element: " << element << "\ndepth: " << n << "\n\nlambda\tp_lambda\n";
  for (std::uint64_t j = 0; j <= top; ++j) out << DyadicRational(j, n).to_string() << "\t" << show(res.entries[j]) << "\n";
  out << "\nlevel\tw\tu_w\tc_w\n";
  for (unsigned l = 0; l <= n; ++l)
    for (const auto& node : tree.level(l))
      out << l << "\t" << (l == 0 ? std::string("e") : BinaryString::from_index(node.k, l).to_string()) << "\t"
          << show(node.u) << "\t" << show(node.c) << "\n";
}

template <class E, class Show, class ShowJson>
void emit_lambda(std::ostream& out, Format fmt, const Rational& lambda, const RationalValue<E>& v, Show show,
                 ShowJson show_json) {
  if (fmt == Format::Json) {
    out << json{{"lambda", to_string(lambda)}, {"projection", show_json(v.value)}, {"stable", v.stable}, {"depth", v.depth}}.dump(2)
        << "\n";
  } else if (fmt == Format::Csv) {
    out << "level,k,lambda,projection\n,," << to_string(lambda) << "," << csv_field(show(v.value)) << "\n";
  } else {
    out << "p_" << to_string(lambda) << " = " << show(v.value) << " (stable at depth " << v.depth << ")\n";
  }
}

int cmd_spectral(const Options& o, std::ostream& out) {
  Instance inst = load(o, true);
  const Format fmt = format_of(o);
  const json addr = parse_address_text(o.element);
  if (auto* m = std::get_if<MatrixInstance>(&inst)) {
    const unsigned n = o.depth < 0 ? 8U : static_cast<unsigned>(o.depth);
    MatrixBackend b(m->algebra);
    const Matrix a = m->element(addr);
    auto tree = splitting_tree(b, a, n);
    auto res = binary_resolution(b, tree);
    auto show = [](const Matrix& x) { return matrix_text(x); };
    auto show_json = [](const Matrix& x) { return matrix_json(x); };
    if (!o.lambda.empty()) {
      const Rational l = parse_rational(o.lambda);
      emit_lambda(out, fmt, l, rational_resolution(b, res, l), show, show_json);
    } else {
      emit_resolution(out, fmt, matrix_text(a), tree, res, show, show_json);
    }
    return 0;
  }
  const auto& f = std::get<FiniteInstance>(inst);
  const Report sr = spectrality_report(f.base);
  if (!sr.passed()) fail(ErrorKind::NotSpectral, f.name + ": " + verdict_reason(sr));
  const unsigned n = o.depth < 0 ? 16U : static_cast<unsigned>(o.depth);
  const Elem a = f.element(addr);
  FiniteBackend b(f.base);
  auto tree = splitting_tree(b, a, n);
  auto res = binary_resolution(b, tree);
  auto show = [&](Elem x) { return projection_text(f, x); };
  auto show_json = [&](Elem x) { return json{{"address", f.algebra().address(x)}, {"label", projection_text(f, x)}}; };
  if (!o.lambda.empty()) {
    const Rational l = parse_rational(o.lambda);
    emit_lambda(out, fmt, l, rational_resolution(b, res, l), show, show_json);
  } else {
    emit_resolution(out, fmt, f.algebra().label(a), tree, res, show, show_json);
  }
  return 0;
}

int cmd_expect(const Options& o, std::ostream& out) {
  Instance inst = load(o, true);
  const Format fmt = format_of(o);
  const json addr = parse_address_text(o.element);
  const json sspec = parse_address_text(o.state.empty() ? std::string("\"avg\"") : o.state);
  if (auto* m = std::get_if<MatrixInstance>(&inst)) {
    const unsigned n = o.depth < 0 ? 8U : static_cast<unsigned>(o.depth);
    const int d = m->algebra.dim();
    Matrix rho = Matrix::Identity(d, d) / d;
    if (!(sspec.is_string() && (sspec == "avg" || sspec == "average"))) {
      MatrixInstance probe{m->name, m->document, MatrixEffectAlgebra(d)};
      rho = probe.element(sspec);
    }
    DensityState s(rho);
    MatrixBackend b(m->algebra);
    const Matrix a = m->element(addr);
    auto [lo, hi] = expectation_bounds(splitting_tree(b, a, n), s);
    const double sa = s(a);
    if (fmt == Format::Json)
      out << json{{"lo", lo}, {"hi", hi}, {"width", hi - lo}, {"value", sa}, {"depth", n}}.dump(2) << "\n";
    else
      out << "lo = " << num(lo) << "\nhi = " << num(hi) << "\nwidth = " << num(hi - lo) << "\ns(a) = " << num(sa) << "\n";
    return 0;
  }
  const auto& f = std::get<FiniteInstance>(inst);
  const unsigned n = o.depth < 0 ? 16U : static_cast<unsigned>(o.depth);
  const Elem a = f.element(addr);
  ValidationOptions vo;
  vo.seed = o.seed;
  ValidatedState s(f.algebra(), parse_state(f, sspec), vo);
  auto [lo, hi] = expectation_bounds(f.base, a, s, n);
  if (fmt == Format::Json) {
    out << json{{"lo", to_string(lo)}, {"hi", to_string(hi)}, {"width", to_string(hi - lo)}, {"value", to_string(s(a))}, {"depth", n}}.dump(2)
        << "\n";
  } else {
    out << "lo = " << to_string(lo) << "\nhi = " << to_string(hi) << "\nwidth = " << to_string(hi - lo)
        << "\ns(a) = " << to_string(s(a)) << "\n";
  }
  return 0;
}

int cmd_group(const Options& o, std::ostream& out) {
  const Format fmt = format_of(o);
  GroupElement unit;
  if (!o.unit.empty()) {
    unit = parse_int_list(o.unit);
  } else if (!o.file.empty()) {
    FiniteInstance f = parse_finite_instance(read_json_file(o.file), InstanceOptions{false, true, {}});
    if (!f.group) fail(ErrorKind::DomainMismatch, f.name + " has no lattice-group embedding");
    unit = f.group->group.unit();
  } else {
    fail(ErrorKind::ParseError, "group needs --unit or an instance file");
  }
  LatticeGroup G(unit);
  if (o.g.empty()) fail(ErrorKind::ParseError, "--g is required");
  const GroupElement g = parse_int_list(o.g);
  G.check(g);
  const auto [lg, ug] = bounds(G, g);
  const auto dec = orthogonal_decomposition(G, g);
  json j = {{"g", g},
            {"unit", unit},
            {"l_g", to_string(lg)},
            {"u_g", to_string(ug)},
            {"norm", to_string(norm(G, g))},
            {"g_plus", dec.pos},
            {"g_minus", dec.neg},
            {"rickart", G.element(rickart(G, g))}};
  std::ostringstream text;
  text << "g = " << to_string(g) << ", u = " << to_string(unit) << "\n";
  text << "l_g = " << to_string(lg) << ", u_g = " << to_string(ug) << ", ||g|| = " << to_string(norm(G, g)) << "\n";
  text << "g+ = " << to_string(dec.pos) << ", g- = " << to_string(dec.neg) << ", g* = " << mask_to_string(G, rickart(G, g))
       << "\n";
  if (!o.lambda.empty()) {
    const Rational l = parse_rational(o.lambda);
    const GroupProjection p = group_spectral(G, g, l);
    j["lambda"] = to_string(l);
    j["projection"] = G.element(p);
    text << "p_" << to_string(l) << " = " << mask_to_string(G, p) << "\n";
  }
  if (!o.approx.empty()) {
    const auto grid = parse_grid(o.approx);
    const auto ap = dyadic_approximation(G, g, grid, o.scale);
    json parts = json::array();
    text << "approximation of " << o.scale << "g on grid " << to_string(GroupElement(grid)) << ":\n";
    for (std::size_t i = 0; i < ap.parts.size(); ++i) {
      parts.push_back({{"m", grid[i + 1]}, {"u", G.element(ap.parts[i])}});
      if (ap.parts[i]) text << "  u_" << i + 1 << " = " << mask_to_string(G, ap.parts[i]) << " at m = " << grid[i + 1] << "\n";
    }
    text << "error = " << to_string(ap.error) << " <= bound = " << to_string(ap.bound) << "\n";
    j["approximation"] = {{"grid", grid}, {"scale", o.scale}, {"parts", parts}, {"error", to_string(ap.error)}, {"bound", to_string(ap.bound)}};
  }
  if (fmt == Format::Json) out << j.dump(2) << "\n";
  else out << text.str();
  return 0;
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Effect algebras with compression bases: validation and spectral resolutions", "ea"};
  app.require_subcommand(1);
  Options o;
  const std::vector<std::string> formats{"table", "csv", "json"};
  auto common = [&](CLI::App* sub, bool file_required = true) {
    auto* f = sub->add_option("file", o.file, "instance document (JSON)");
    if (file_required) f->required();
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember(formats));
    sub->add_option("--seed", o.seed, "seed for sampled checks");
  };
  auto* validate = app.add_subcommand("validate", "check effect algebra axioms and the compression base");
  common(validate);
  auto* analyze = app.add_subcommand("analyze", "structure summary and spectrality verdict");
  common(analyze);
  auto* spectral = app.add_subcommand("spectral", "binary spectral resolution of an element");
  common(spectral);
  spectral->add_option("--element", o.element, "element address")->required();
  spectral->add_option("--depth", o.depth, "depth n (default 16 finite, 8 matrix)")->check(CLI::Range(0, 24));
  spectral->add_option("--lambda", o.lambda, "rational lambda in [0,1]");
  auto* check = app.add_subcommand("check-spectral", "exit 0 when the instance is spectral, 1 otherwise");
  common(check);
  auto* group = app.add_subcommand("group", "lattice-group resolution and dyadic approximation");
  common(group, false);
  group->add_option("--g", o.g, "group element, e.g. 3,-1")->required();
  group->add_option("--unit", o.unit, "order unit, e.g. 2,2 (default: from the instance file)");
  group->add_option("--lambda", o.lambda, "rational lambda m/n");
  group->add_option("--approx", o.approx, "grid m_0..m_N as lo:hi:step or a list");
  group->add_option("--scale", o.scale, "scale n for the approximation")->check(CLI::PositiveNumber);
  auto* expect = app.add_subcommand("expect", "bounds on s(a) from the splitting tree");
  common(expect);
  expect->add_option("--element", o.element, "element address")->required();
  expect->add_option("--state", o.state, "state: \"avg\", value list, {\"weights\": [...]}, or density matrix entries");
  expect->add_option("--depth", o.depth, "depth n")->check(CLI::Range(0, 24));

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  try {
    if (*validate) return cmd_validate(o, out, err);
    if (*analyze) return cmd_analyze(o, out);
    if (*spectral) return cmd_spectral(o, out);
    if (*check) return cmd_check_spectral(o, out);
    if (*group) return cmd_group(o, out);
    if (*expect) return cmd_expect(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::NotSpectral:
      case ErrorKind::InvalidInstance:
      case ErrorKind::InternalConsistency:
        return 1;
      default:
        return 2;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace ea::tools
