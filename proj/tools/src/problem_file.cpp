#include "clin_cli/problem_file.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "clin/evaluate.hpp"
#include "clin/parser.hpp"

namespace clin::cli {

namespace {

struct Entry {
  std::size_t line;
  std::size_t column;  // 1-based column of the value
  std::string key;
  std::string value;
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(std::size_t line, const std::string& msg) const { throw ProblemError(source_, line, msg); }

  Expr expression(const Entry& e, const std::set<std::string>& allowed, const std::string& what) const {
    return expression_text(e, e.value, e.column, allowed, what);
  }

  Expr expression_text(const Entry& e, std::string_view text, std::size_t column, const std::set<std::string>& allowed,
                       const std::string& what) const {
    Expr out;
    try {
      out = parse(text);
    } catch (const ParseError& err) {
      std::string msg = "column " + std::to_string(column + err.offset()) + ": " + err.what();
      fail(e.line, msg);
    }
    for (const auto& v : free_variables(out)) {
      if (!allowed.count(v)) fail(e.line, what + " may not depend on '" + v + "'");
    }
    return out;
  }

  double constant(const Entry& e, std::string_view text) const {
    const Expr ex = expression_text(e, trim(text), e.column, {}, "a constant");
    try {
      return evaluate(ex, Bindings{});
    } catch (const EvalError& err) {
      fail(e.line, err.what());
    }
  }

  template <typename T>
  T integer(const Entry& e) const {
    T v{};
    const auto* end = e.value.data() + e.value.size();
    const auto [p, ec] = std::from_chars(e.value.data(), end, v);
    if (ec != std::errc() || p != end) fail(e.line, "expected a non-negative integer for '" + e.key + "'");
    return v;
  }

 private:
  std::string source_;
};

const std::set<std::string> kXyz{"x", "y", "z"};
const std::set<std::string> kXu{"x", "u"};
const std::set<std::string> kX{"x"};

}  // namespace

const char* to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::System: return "system";
    case ProblemKind::Scalar: return "scalar";
    case ProblemKind::ComplexScalar: return "complex-scalar";
  }
  return "?";
}

ProblemError::ProblemError(const std::string& source, std::size_t line, const std::string& message)
    : std::runtime_error(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + message), line_(line) {}

ProblemFile parse_problem(std::string_view text, const std::string& source) {
  const Reader rd(source);
  static const std::set<std::string> kSections{"problem", "coefficients", "transformation", "domain", "numeric",
                                               "initial"};
  std::map<std::string, std::vector<Entry>> sections;
  std::string current;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string_view body = trim(line);
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']') rd.fail(lineno, "unterminated section header");
      current = std::string(trim(body.substr(1, body.size() - 2)));
      if (!kSections.count(current)) rd.fail(lineno, "unknown section [" + current + "]");
      sections[current];
      continue;
    }
    if (current.empty()) rd.fail(lineno, "entry outside of any section");
    if (current == "initial") {
      sections[current].push_back({lineno, 1, "", std::string(body)});
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) rd.fail(lineno, "expected 'key = value'");
    const std::string key(trim(body.substr(0, eq)));
    const std::string_view rest = body.substr(eq + 1);
    const std::string_view value = trim(rest);
    if (key.empty()) rd.fail(lineno, "missing key");
    if (value.empty()) rd.fail(lineno, "missing value for '" + key + "'");
    const std::size_t column = static_cast<std::size_t>(value.data() - raw.data()) + 1;
    for (const auto& prev : sections[current])
      if (prev.key == key && key != "exclude") rd.fail(lineno, "duplicate key '" + key + "'");
    sections[current].push_back({lineno, column, key, std::string(value)});
  }

  ProblemFile pf;
  pf.source = source;

  bool have_kind = false;
  for (const auto& e : sections["problem"]) {
    if (e.key != "kind") rd.fail(e.line, "unknown key '" + e.key + "' in [problem]");
    if (e.value == "system") pf.kind = ProblemKind::System;
    else if (e.value == "scalar") pf.kind = ProblemKind::Scalar;
    else if (e.value == "complex-scalar") pf.kind = ProblemKind::ComplexScalar;
    else rd.fail(e.line, "kind must be system, scalar or complex-scalar");
    have_kind = true;
  }
  if (!have_kind) rd.fail(0, "missing 'kind' in [problem]");

  for (const auto& e : sections["coefficients"]) {
    switch (pf.kind) {
      case ProblemKind::System: {
        static const std::map<std::string, Expr SystemCoefficients::*> slots{
            {"a1", &SystemCoefficients::a1}, {"a2", &SystemCoefficients::a2}, {"b1", &SystemCoefficients::b1},
            {"b2", &SystemCoefficients::b2}, {"c1", &SystemCoefficients::c1}, {"c2", &SystemCoefficients::c2}};
        auto it = slots.find(e.key);
        if (it == slots.end()) rd.fail(e.line, "unknown system coefficient '" + e.key + "'");
        pf.system.*(it->second) = rd.expression(e, kXyz, "system coefficient " + e.key);
        break;
      }
      case ProblemKind::Scalar: {
        static const std::map<std::string, Expr ScalarCoefficients::*> slots{
            {"a", &ScalarCoefficients::a}, {"b", &ScalarCoefficients::b}, {"c", &ScalarCoefficients::c}};
        auto it = slots.find(e.key);
        if (it == slots.end()) rd.fail(e.line, "unknown scalar coefficient '" + e.key + "'");
        pf.scalar.*(it->second) = rd.expression(e, kXu, "scalar coefficient " + e.key);
        break;
      }
      case ProblemKind::ComplexScalar: {
        const std::string name = e.key.substr(0, 1);
        const std::size_t idx = name == "a" ? 0 : name == "b" ? 1 : name == "c" ? 2 : 3;
        const std::string suffix = e.key.size() > 1 ? e.key.substr(1) : "";
        if (idx > 2 || (suffix != "" && suffix != "_re" && suffix != "_im"))
          rd.fail(e.line, "unknown complex coefficient '" + e.key + "'");
        auto& slot = pf.complex[idx];
        if (suffix.empty()) {
          slot.in_u = rd.expression(e, kXu, "complex coefficient " + e.key);
        } else {
          (suffix == "_re" ? slot.pair.re : slot.pair.im) = rd.expression(e, kXyz, "coefficient part " + e.key);
        }
        break;
      }
    }
  }
  if (pf.kind == ProblemKind::ComplexScalar) {
    for (const auto& e : sections["coefficients"]) {
      if (e.key.size() > 1 && pf.complex[static_cast<std::size_t>(e.key[0] - 'a')].in_u)
        rd.fail(e.line, "'" + e.key.substr(0, 1) + "' is given both in u and as a re/im pair");
    }
  }

  if (sections.count("transformation")) {
    if (pf.kind == ProblemKind::ComplexScalar) rd.fail(0, "[transformation] is not supported for complex-scalar problems");
    std::map<std::string, Expr> parts;
    const std::set<std::string> keys = pf.kind == ProblemKind::System ? std::set<std::string>{"phi", "psi1", "psi2"}
                                                                      : std::set<std::string>{"phi", "psi"};
    for (const auto& e : sections["transformation"]) {
      if (!keys.count(e.key)) rd.fail(e.line, "unknown transformation component '" + e.key + "'");
      const auto& allowed = e.key == "phi" ? kX : pf.kind == ProblemKind::System ? kXyz : kXu;
      parts[e.key] = rd.expression(e, allowed, e.key);
    }
    for (const auto& k : keys)
      if (!parts.count(k)) rd.fail(0, "[transformation] is missing '" + k + "'");
    if (pf.kind == ProblemKind::System) pf.transformation = PointTransformation{parts["phi"], parts["psi1"], parts["psi2"]};
    else pf.transformation = PointTransformation{parts["phi"], parts["psi"], lit(0)};
  }

  static const std::set<std::string> kDomainVars{"x", "y", "z", "u", "t"};
  for (const auto& e : sections["domain"]) {
    pf.domain_lines.push_back(e.key + " = " + e.value);
    if (e.key == "exclude") {
      const auto gt = e.value.rfind('>');
      if (gt == std::string::npos) rd.fail(e.line, "expected 'exclude = expression > epsilon'");
      const Expr ex = rd.expression_text(e, e.value.substr(0, gt), e.column, kDomainVars, "exclusion");
      const double eps = rd.constant(e, std::string_view(e.value).substr(gt + 1));
      if (!(eps >= 0)) rd.fail(e.line, "exclusion epsilon must be non-negative");
      pf.domain.exclude(ex, eps);
      continue;
    }
    if (!kDomainVars.count(e.key)) rd.fail(e.line, "unknown domain variable '" + e.key + "'");
    const auto dots = e.value.find("..");
    if (dots == std::string::npos) rd.fail(e.line, "expected 'lo..hi'");
    const double lo = rd.constant(e, std::string_view(e.value).substr(0, dots));
    const double hi = rd.constant(e, std::string_view(e.value).substr(dots + 2));
    try {
      pf.domain.set(e.key, lo, hi);
    } catch (const std::invalid_argument& err) {
      rd.fail(e.line, err.what());
    }
  }

  for (const auto& e : sections["numeric"]) {
    pf.numeric_lines.push_back(e.key + " = " + e.value);
    if (e.key == "step") pf.numeric.step = rd.constant(e, e.value);
    else if (e.key == "tol") pf.numeric.tol = rd.constant(e, e.value);
    else if (e.key == "x_end") pf.numeric.x_end = rd.constant(e, e.value);
    else if (e.key == "samples") pf.numeric.samples = rd.integer<std::size_t>(e);
    else if (e.key == "seed") pf.numeric.seed = rd.integer<std::uint64_t>(e);
    else rd.fail(e.line, "unknown numeric setting '" + e.key + "'");
    if (e.key == "step" && !(*pf.numeric.step > 0)) rd.fail(e.line, "step must be positive");
    if (e.key == "tol" && !(*pf.numeric.tol > 0)) rd.fail(e.line, "tol must be positive");
    if (e.key == "samples" && *pf.numeric.samples == 0) rd.fail(e.line, "samples must be positive");
  }

  for (const auto& e : sections["initial"]) {
    if (pf.kind != ProblemKind::System) rd.fail(e.line, "[initial] is only supported for system problems");
    std::istringstream ls(e.value);
    std::vector<double> v;
    std::string tok;
    while (ls >> tok) {
      double d = 0;
      const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), d);
      if (ec != std::errc() || p != tok.data() + tok.size()) rd.fail(e.line, "bad number '" + tok + "'");
      v.push_back(d);
    }
    if (v.size() != 5) rd.fail(e.line, "expected five numbers: x0 y0 z0 yp0 zp0");
    pf.initial.push_back(State{v[0], v[1], v[2], v[3], v[4]});
  }
  return pf;
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ProblemError(path, 0, "cannot open file");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_problem(ss.str(), path);
}

std::string write_system_file(const SystemCoefficients& s, const ProblemFile& origin) {
  std::ostringstream out;
  out << "# split of " << origin.source << "\n\n[problem]\nkind = system\n\n[coefficients]\n";
  out << "a1 = " << format(s.a1) << "\n";
  out << "a2 = " << format(s.a2) << "\n";
  out << "b1 = " << format(s.b1) << "\n";
  out << "b2 = " << format(s.b2) << "\n";
  out << "c1 = " << format(s.c1) << "\n";
  out << "c2 = " << format(s.c2) << "\n";
  if (!origin.domain_lines.empty()) {
    out << "\n[domain]\n";
    for (const auto& l : origin.domain_lines) out << l << "\n";
  }
  if (!origin.numeric_lines.empty()) {
    out << "\n[numeric]\n";
    for (const auto& l : origin.numeric_lines) out << l << "\n";
  }
  return out.str();
}

}  // namespace clin::cli
