#include "clin/transform_lab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "clin/evaluate.hpp"
#include "clin/simplify.hpp"

namespace clin {

namespace {

Expr d(const Expr& e, std::string_view v, std::string_view w) { return differentiate(differentiate(e, v), w); }

struct Deriv {
  double yp, zp, ypp, zpp;
};

class Rhs {
 public:
  explicit Rhs(const SystemCoefficients& s) : s_(s) {}

  Deriv operator()(double x, double y, double z, double yp, double zp) const {
    const Bindings b{{"x", x}, {"y", y}, {"z", z}};
    const double a1 = evaluate(s_.a1, b), a2 = evaluate(s_.a2, b);
    const double b1 = evaluate(s_.b1, b), b2 = evaluate(s_.b2, b);
    const double c1 = evaluate(s_.c1, b), c2 = evaluate(s_.c2, b);
    const double ypp = -(a1 * yp * yp - 2 * a2 * yp * zp - a1 * zp * zp + b1 * yp - b2 * zp + c1);
    const double zpp = -(a2 * yp * yp + 2 * a1 * yp * zp - a2 * zp * zp + b2 * yp + b1 * zp + c2);
    return {yp, zp, ypp, zpp};
  }

 private:
  const SystemCoefficients& s_;
};

bool finite(const State& s) {
  return std::isfinite(s.y) && std::isfinite(s.z) && std::isfinite(s.yp) && std::isfinite(s.zp);
}

State rk4_step(const Rhs& f, const State& s, double h) {
  const Deriv k1 = f(s.x, s.y, s.z, s.yp, s.zp);
  const double h2 = h / 2;
  const Deriv k2 = f(s.x + h2, s.y + h2 * k1.yp, s.z + h2 * k1.zp, s.yp + h2 * k1.ypp, s.zp + h2 * k1.zpp);
  const Deriv k3 = f(s.x + h2, s.y + h2 * k2.yp, s.z + h2 * k2.zp, s.yp + h2 * k2.ypp, s.zp + h2 * k2.zpp);
  const Deriv k4 = f(s.x + h, s.y + h * k3.yp, s.z + h * k3.zp, s.yp + h * k3.ypp, s.zp + h * k3.zpp);
  const double w = h / 6;
  return {s.x + h,
          s.y + w * (k1.yp + 2 * k2.yp + 2 * k3.yp + k4.yp),
          s.z + w * (k1.zp + 2 * k2.zp + 2 * k3.zp + k4.zp),
          s.yp + w * (k1.ypp + 2 * k2.ypp + 2 * k3.ypp + k4.ypp),
          s.zp + w * (k1.zpp + 2 * k2.zpp + 2 * k3.zpp + k4.zpp)};
}

// Largest deviation from the least-squares line through (t, w), normalized.
double affine_deviation(const std::vector<double>& t, const std::vector<double>& w) {
  const double n = static_cast<double>(t.size());
  double mt = 0, mw = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    mt += t[i];
    mw += w[i];
  }
  mt /= n;
  mw /= n;
  double stt = 0, stw = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    stt += (t[i] - mt) * (t[i] - mt);
    stw += (t[i] - mt) * (w[i] - mw);
  }
  const double slope = stw / stt;
  double dev = 0, scale = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    dev = std::max(dev, std::abs(w[i] - (mw + slope * (t[i] - mt))));
    scale = std::max(scale, std::abs(w[i]));
  }
  return dev / (1.0 + scale);
}

std::vector<IdentityCheck> checks(const std::vector<std::pair<std::string, Expr>>& items, const std::string& tag,
                                  const Domain& dom, const ZeroTestOptions& options) {
  std::vector<IdentityCheck> out;
  for (const auto& [name, e] : items) out.push_back(check_identity(name, tag, e, dom, options));
  return out;
}

void check_jacobian(const PointTransformation& t, const Domain& dom, const ZeroTestOptions& options,
                    VerificationReport& r) {
  const Expr delta = simplify(jacobian(t));
  if (delta.is_zero()) {
    r.jacobian_note = "Jacobian is identically zero";
    return;
  }
  DomainSampler sampler(dom, options.seed);
  std::size_t evaluated = 0;
  double smallest = INFINITY;
  for (std::size_t i = 0; i < options.samples; ++i) {
    auto p = sampler.draw();
    if (!p) break;
    try {
      smallest = std::min(smallest, std::abs(evaluate(delta, *p)));
      ++evaluated;
    } catch (const EvalError&) {
    }
  }
  if (2 * evaluated < options.samples) {
    r.jacobian_note = "Jacobian could not be evaluated on enough sample points";
  } else if (smallest < dom.pole_guard) {
    r.jacobian_note = "Jacobian vanishes on the domain (min |J| = " + std::to_string(smallest) + ")";
  } else {
    r.jacobian_ok = true;
    r.jacobian_note = "min |J| over samples = " + std::to_string(smallest);
  }
}

}  // namespace

const char* to_string(VerificationStatus s) {
  switch (s) {
    case VerificationStatus::Verified: return "Verified";
    case VerificationStatus::Failed: return "Failed";
    case VerificationStatus::Indeterminate: return "Indeterminate";
  }
  return "?";
}

VerificationReport verify_transformation(const SystemCoefficients& s, const PointTransformation& t, const Domain& dom,
                                         const ZeroTestOptions& options, const std::vector<State>& initial,
                                         const SimulationOptions& sim) {
  VerificationReport r;
  const auto cr = cr_first_order(t);
  r.cr_first_order = checks({{"psi1_y - psi2_z", cr[0]}, {"psi1_z + psi2_y", cr[1]}}, "cauchy-riemann", dom, options);
  const Expr& p1 = t.psi1;
  const Expr& p2 = t.psi2;
  r.cr_second_order = checks({{"psi1_yy - psi2_yz", d(p1, "y", "y") - d(p2, "y", "z")},
                              {"psi1_yy + psi1_zz", d(p1, "y", "y") + d(p1, "z", "z")},
                              {"psi2_zz - psi1_yz", d(p2, "z", "z") - d(p1, "y", "z")},
                              {"psi2_zz + psi2_yy", d(p2, "z", "z") + d(p2, "y", "y")}},
                             "cauchy-riemann (second order)", dom, options);
  check_jacobian(t, dom, options, r);
  bool failed = !r.jacobian_ok;
  try {
    const SystemCoefficients induced = cr_coefficient_formulas(t);
    r.coefficient_match = checks({{"a1", induced.a1 - s.a1},
                                  {"a2", induced.a2 - s.a2},
                                  {"b1", induced.b1 - s.b1},
                                  {"b2", induced.b2 - s.b2},
                                  {"c1", induced.c1 - s.c1},
                                  {"c2", induced.c2 - s.c2}},
                                 "coefficient match", dom, options);
  } catch (const std::exception& e) {
    failed = true;
    r.jacobian_note += std::string("; ") + e.what();
  }

  const double x_end = sim.x_end ? *sim.x_end : dom.ranges().count("x") ? dom.ranges().at("x").upper : 2.0;
  for (const auto& init : initial) {
    r.numeric.push_back(simulate_one(s, t, init, x_end, sim.step));
    const auto& n = r.numeric.back();
    if (!n.value) {
      failed = true;
      continue;
    }
    r.numeric_straightness = std::max(r.numeric_straightness.value_or(0.0), *n.value);
  }
  if (r.numeric_straightness && !(*r.numeric_straightness < sim.straightness_tol)) failed = true;

  bool inconclusive = false;
  for (const auto* group : {&r.cr_first_order, &r.cr_second_order, &r.coefficient_match}) {
    for (const auto& id : *group) {
      if (id.verdict.status == ZeroStatus::Violated) failed = true;
      if (id.verdict.status == ZeroStatus::Indeterminate) inconclusive = true;
    }
  }
  r.verdict = failed ? VerificationStatus::Failed
              : inconclusive ? VerificationStatus::Indeterminate
                             : VerificationStatus::Verified;
  return r;
}

Trajectory integrate(const SystemCoefficients& s, const State& init, double x_end, double step) {
  if (!(step > 0)) throw std::invalid_argument("step must be positive");
  if (!(x_end > init.x)) throw std::invalid_argument("x_end must exceed the initial x");
  const auto n = std::max<long long>(1, std::llround((x_end - init.x) / step));
  const double h = (x_end - init.x) / static_cast<double>(n);
  Trajectory tr;
  tr.step = h;
  tr.samples.reserve(static_cast<std::size_t>(n) + 1);
  tr.samples.push_back(init);
  const Rhs f(s);
  State cur = init;
  for (long long i = 1; i <= n; ++i) {
    State next;
    try {
      next = rk4_step(f, cur, h);
    } catch (const EvalError& e) {
      tr.aborted = true;
      tr.message = "evaluation failed near x = " + std::to_string(cur.x) + ": " + e.what();
      return tr;
    }
    if (!finite(next)) {
      tr.aborted = true;
      tr.message = "non-finite state near x = " + std::to_string(cur.x);
      return tr;
    }
    // Recompute x from the index so rounding does not accumulate.
    next.x = i == n ? x_end : init.x + static_cast<double>(i) * h;
    tr.samples.push_back(next);
    cur = next;
  }
  return tr;
}

PushForward push_forward(const PointTransformation& t, const Trajectory& tr) {
  PushForward out;
  out.samples.reserve(tr.samples.size());
  for (const auto& s : tr.samples) {
    const Bindings b{{"x", s.x}, {"y", s.y}, {"z", s.z}};
    try {
      out.samples.push_back({evaluate(t.phi, b), evaluate(t.psi1, b), evaluate(t.psi2, b)});
    } catch (const EvalError& e) {
      ++out.dropped;
      out.warnings.push_back("dropped sample at x = " + std::to_string(s.x) + ": " + e.what());
    }
  }
  return out;
}

double straightness(const std::vector<TransformedSample>& samples) {
  if (samples.size() < 3) throw std::invalid_argument("straightness needs at least 3 samples");
  std::vector<double> t, u, v;
  for (const auto& s : samples) {
    t.push_back(s.t);
    u.push_back(s.u);
    v.push_back(s.v);
  }
  const auto [lo, hi] = std::minmax_element(t.begin(), t.end());
  if (!(*hi - *lo > 1e-12 * (1.0 + std::abs(*hi)))) throw std::invalid_argument("transformed time span is degenerate");
  return std::max(affine_deviation(t, u), affine_deviation(t, v));
}

StraightnessCheck simulate_one(const SystemCoefficients& s, const PointTransformation& t, const State& init,
                               double x_end, double step) {
  StraightnessCheck out;
  out.initial = init;
  try {
    const Trajectory tr = integrate(s, init, x_end, step);
    if (tr.aborted) {
      out.message = "integration aborted: " + tr.message;
      return out;
    }
    const PushForward pf = push_forward(t, tr);
    if (pf.dropped > 0) out.message = std::to_string(pf.dropped) + " samples dropped";
    out.value = straightness(pf.samples);
  } catch (const std::invalid_argument& e) {
    out.message = e.what();
  }
  return out;
}

}  // namespace clin
