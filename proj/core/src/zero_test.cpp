#include "clin/zero_test.hpp"

#include <cmath>
#include <algorithm>
#include <stdexcept>

#include "clin/simplify.hpp"

namespace clin {

void Domain::set(const std::string& variable, double lower, double upper) {
  if (!(lower < upper)) throw std::invalid_argument("empty interval for '" + variable + "'");
  ranges_[variable] = Interval{lower, upper};
}

void Domain::exclude(Expr expr, double epsilon) { exclusions_.push_back(Exclusion{std::move(expr), epsilon}); }

bool Domain::covers(const std::set<std::string>& variables) const {
  for (const auto& v : variables)
    if (!ranges_.count(v)) return false;
  return true;
}

Domain Domain::standard() {
  Domain d;
  d.set("x", 1.0, 2.0);
  d.set("y", 0.5, 1.5);
  d.set("z", 0.5, 1.5);
  d.set("u", 0.5, 1.5);
  d.set("t", 1.0, 2.0);
  return d;
}

const char* to_string(ZeroStatus s) {
  switch (s) {
    case ZeroStatus::SymbolicZero: return "SymbolicZero";
    case ZeroStatus::NumericallyZero: return "NumericallyZero";
    case ZeroStatus::Violated: return "Violated";
    case ZeroStatus::Indeterminate: return "Indeterminate";
  }
  return "?";
}

DomainSampler::DomainSampler(const Domain& dom, std::uint64_t seed) : dom_(dom), state_(seed) {}

double DomainSampler::uniform() {
  // splitmix64: identical streams on every platform and standard library.
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

std::optional<Bindings> DomainSampler::draw(int max_attempts) {
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Bindings p;
    for (const auto& [name, iv] : dom_.ranges()) p[name] = iv.lower + (iv.upper - iv.lower) * uniform();
    bool ok = true;
    for (const auto& ex : dom_.exclusions()) {
      try {
        if (!(std::abs(evaluate(ex.expr, p)) > ex.epsilon)) ok = false;
      } catch (const EvalError&) {
        ok = false;
      }
      if (!ok) break;
    }
    if (ok) return p;
  }
  return std::nullopt;
}

ZeroVerdict is_zero(const Expr& e, const Domain& dom, const ZeroTestOptions& options) {
  return is_zero(e, simplify(e), dom, options);
}

ZeroVerdict is_zero(const Expr& e, const Expr& simplified, const Domain& dom, const ZeroTestOptions& options) {
  ZeroVerdict v;
  if (simplified.is_zero()) {
    v.status = ZeroStatus::SymbolicZero;
    return v;
  }
  if (!dom.covers(free_variables(e))) {
    v.status = ZeroStatus::Indeterminate;
    v.note = "domain does not cover every free variable";
    return v;
  }
  const Expr work = fold(e);
  const std::set<std::string> used = free_variables(work);
  DomainSampler sampler(dom, options.seed);
  EvalOptions eval_opts;
  eval_opts.pole_guard = dom.pole_guard;
  constexpr int kRetries = 50;
  for (std::size_t i = 0; i < options.samples; ++i) {
    for (int attempt = 0; attempt < kRetries; ++attempt) {
      auto p = sampler.draw();
      if (!p) break;
      double scale = 0.0;
      double value = 0.0;
      try {
        value = evaluate(work, *p, eval_opts, &scale);
      } catch (const EvalError&) {
        continue;
      }
      ++v.samples_used;
      const double rel = std::abs(value) / (1.0 + scale);
      v.max_abs_residual = std::max(v.max_abs_residual, std::abs(value));
      v.max_rel_residual = std::max(v.max_rel_residual, rel);
      if (rel > options.tol && (!v.witness || rel > v.witness->relative)) {
        Bindings shown;
        for (const auto& [name, val] : *p)
          if (used.count(name)) shown.emplace(name, val);
        v.witness = Witness{shown, value, rel};
      }
      break;
    }
  }
  if (v.witness) {
    v.status = ZeroStatus::Violated;
  } else if (2 * v.samples_used < options.samples) {
    v.status = ZeroStatus::Indeterminate;
    v.note = "too few evaluable sample points";
  } else {
    v.status = ZeroStatus::NumericallyZero;
  }
  return v;
}

}  // namespace clin
