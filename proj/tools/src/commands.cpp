#include "clin_cli/commands.hpp"

#include <fstream>
#include <functional>

#include "clin/complexify.hpp"
#include "clin/scalar_lin.hpp"
#include "clin/system_lin.hpp"
#include "clin/transform_lab.hpp"
#include "clin_cli/problem_file.hpp"
#include "clin_cli/report.hpp"

#ifndef CLIN_VERSION
#define CLIN_VERSION "unknown"
#endif

namespace clin::cli {

namespace {

// Finite differences cannot reach the symbolic tolerance.
constexpr double kNumericAnalyticityTol = 1e-6;

struct Settings {
  ZeroTestOptions zt;
  SimulationOptions sim;
};

Settings resolve(const ProblemFile& pf, const GlobalOptions& g) {
  Settings s;
  if (pf.numeric.samples) s.zt.samples = *pf.numeric.samples;
  if (pf.numeric.tol) s.zt.tol = *pf.numeric.tol;
  if (pf.numeric.seed) s.zt.seed = *pf.numeric.seed;
  if (pf.numeric.step) s.sim.step = *pf.numeric.step;
  if (g.samples) s.zt.samples = *g.samples;
  if (g.tol) s.zt.tol = *g.tol;
  if (g.seed) s.zt.seed = *g.seed;
  if (g.step) s.sim.step = *g.step;
  s.sim.x_end = pf.numeric.x_end;
  if (!s.sim.x_end && pf.domain.ranges().count("x")) s.sim.x_end = pf.domain.ranges().at("x").upper;
  return s;
}

json envelope(const std::string& command, const ProblemFile& pf, const Settings& s) {
  json j;
  j["command"] = command;
  j["file"] = pf.source;
  j["kind"] = to_string(pf.kind);
  j["provenance"] = {{"version", CLIN_VERSION},
                     {"seed", s.zt.seed},
                     {"samples", s.zt.samples},
                     {"tol", s.zt.tol},
                     {"step", s.sim.step},
                     {"straightness_tol", s.sim.straightness_tol}};
  return j;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::Linearizable: return kExitOk;
    case Verdict::NotLinearizable: return kExitNegative;
    case Verdict::Indeterminate: return kExitIndeterminate;
  }
  return kExitIndeterminate;
}

int exit_for(VerificationStatus v) {
  switch (v) {
    case VerificationStatus::Verified: return kExitOk;
    case VerificationStatus::Failed: return kExitNegative;
    case VerificationStatus::Indeterminate: return kExitIndeterminate;
  }
  return kExitIndeterminate;
}

const char* const kComplexNames[3] = {"a", "b", "c"};

// Symbolic split of every complex coefficient; throws UnsupportedShape.
SystemCoefficients split_all(const ProblemFile& pf) {
  std::array<ComplexCoefficient, 3> pairs;
  for (std::size_t i = 0; i < 3; ++i)
    pairs[i] = pf.complex[i].in_u ? split_expression(*pf.complex[i].in_u) : pf.complex[i].pair;
  return split_scalar_ode(pairs[0], pairs[1], pairs[2]);
}

std::string unsupported_hint(const UnsupportedShape& e) {
  return std::string("unsupported expression shape (") + e.what() + "); rerun split with --numeric-only";
}

// Runs `body`, mapping input errors to exit code 3.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ProblemError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const UnsupportedShape& e) {
    err << "error: " << unsupported_hint(e) << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitInputError;
}

}  // namespace

int run_check(const std::string& path, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ProblemFile pf = load_problem(path);
    const Settings s = resolve(pf, g);
    ConditionReport r;
    switch (pf.kind) {
      case ProblemKind::System: r = check_system(pf.system, pf.domain, s.zt); break;
      case ProblemKind::Scalar: r = check_scalar(pf.scalar, pf.domain, s.zt); break;
      case ProblemKind::ComplexScalar: r = check_system(split_all(pf), pf.domain, s.zt); break;
    }
    if (g.json) {
      json j = envelope("check", pf, s);
      j.update(to_json(r));
      emit(out, j);
    } else {
      out << "check " << pf.source << " (" << to_string(pf.kind) << ")\n";
      print_condition_report(out, r);
    }
    return exit_for(r.verdict);
  });
}

int run_split(const std::string& path, const std::optional<std::string>& out_path, bool numeric_only,
              const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ProblemFile pf = load_problem(path);
    if (pf.kind != ProblemKind::ComplexScalar) {
      err << "error: split needs a problem with kind = complex-scalar\n";
      return static_cast<int>(kExitInputError);
    }
    const Settings s = resolve(pf, g);
    std::array<ComplexCoefficient, 3> pairs;
    std::vector<IdentityCheck> numeric;
    bool symbolic = true;
    for (std::size_t i = 0; i < 3; ++i) {
      const auto& in = pf.complex[i];
      if (!in.in_u) {
        pairs[i] = in.pair;
        continue;
      }
      try {
        pairs[i] = split_expression(*in.in_u);
      } catch (const UnsupportedShape& e) {
        if (!numeric_only) throw;
        symbolic = false;
        ZeroTestOptions zt = s.zt;
        zt.tol = kNumericAnalyticityTol;
        numeric.push_back({std::string(kComplexNames[i]) + " analytic in u", "numeric analyticity", *in.in_u,
                           numeric_analyticity(*in.in_u, pf.domain, zt)});
      }
    }
    ConditionReport r;
    std::string system_text;
    if (symbolic) {
      const SystemCoefficients sys = split_scalar_ode(pairs[0], pairs[1], pairs[2]);
      const CrResiduals cr = cr_residuals(sys);
      for (std::size_t i = 0; i < 6; ++i)
        r.identities.push_back(check_identity(CrResiduals::names()[i], "cauchy-riemann", cr.values[i], pf.domain, s.zt));
      system_text = write_system_file(sys, pf);
    } else {
      r.identities = numeric;
      r.note = "no symbolic split; system file not written";
    }
    r.verdict = combine(r.identities);
    if (out_path && symbolic) {
      std::ofstream f(*out_path, std::ios::binary);
      if (!f || !(f << system_text)) {
        err << "error: cannot write " << *out_path << '\n';
        return static_cast<int>(kExitInputError);
      }
    }
    if (g.json) {
      json j = envelope("split", pf, s);
      j.update(to_json(r));
      j["system_file"] = symbolic ? json(system_text) : json(nullptr);
      if (out_path && symbolic) j["written_to"] = *out_path;
      emit(out, j);
    } else {
      out << "split " << pf.source << '\n';
      print_condition_report(out, r);
      if (symbolic && out_path) out << "wrote " << *out_path << '\n';
      else if (symbolic) out << "\n" << system_text;
    }
    return exit_for(r.verdict);
  });
}

int run_verify(const std::string& path, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ProblemFile pf = load_problem(path);
    if (!pf.transformation) {
      err << "error: " << pf.source << ": verify needs a [transformation] section\n";
      return static_cast<int>(kExitInputError);
    }
    const Settings s = resolve(pf, g);
    const PointTransformation& t = *pf.transformation;
    if (pf.kind == ProblemKind::Scalar) {
      ConditionReport r;
      try {
        const ScalarCoefficients ind = induced_scalar_coefficients({t.phi, t.psi1});
        const std::pair<const char*, Expr> diffs[3] = {
            {"a", ind.a - pf.scalar.a}, {"b", ind.b - pf.scalar.b}, {"c", ind.c - pf.scalar.c}};
        for (const auto& [name, e] : diffs)
          r.identities.push_back(check_identity(name, "coefficient match", e, pf.domain, s.zt));
        r.verdict = combine(r.identities);
      } catch (const DegenerateTransformation& e) {
        r.verdict = Verdict::NotLinearizable;
        r.note = e.what();
      }
      const VerificationStatus v = r.verdict == Verdict::Linearizable     ? VerificationStatus::Verified
                                   : r.verdict == Verdict::NotLinearizable ? VerificationStatus::Failed
                                                                           : VerificationStatus::Indeterminate;
      if (g.json) {
        json j = envelope("verify", pf, s);
        j["coefficient_match"] = to_json(r.identities);
        if (!r.note.empty()) j["note"] = r.note;
        j["verdict"] = to_string(v);
        emit(out, j);
      } else {
        out << "verify " << pf.source << " (scalar)\ncoefficient match:\n";
        print_identities(out, r.identities);
        if (!r.note.empty()) out << "note: " << r.note << '\n';
        out << "verdict: " << to_string(v) << '\n';
      }
      return exit_for(v);
    }
    const VerificationReport r = verify_transformation(pf.system, t, pf.domain, s.zt, pf.initial, s.sim);
    if (g.json) {
      json j = envelope("verify", pf, s);
      j.update(to_json(r));
      emit(out, j);
    } else {
      out << "verify " << pf.source << '\n';
      print_verification(out, r, s.sim.straightness_tol);
    }
    return exit_for(r.verdict);
  });
}

int run_simulate(const std::string& path, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ProblemFile pf = load_problem(path);
    if (pf.kind != ProblemKind::System || !pf.transformation || pf.initial.empty()) {
      err << "error: " << pf.source << ": simulate needs a system problem with [transformation] and [initial]\n";
      return static_cast<int>(kExitInputError);
    }
    const Settings s = resolve(pf, g);
    std::vector<StraightnessCheck> results;
    bool ok = true;
    for (const auto& init : pf.initial) {
      results.push_back(simulate_one(pf.system, *pf.transformation, init, s.sim.x_end.value_or(init.x + 1.0),
                                     s.sim.step));
      const auto& r = results.back();
      if (!r.value || !(*r.value < s.sim.straightness_tol)) ok = false;
    }
    if (g.json) {
      json j = envelope("simulate", pf, s);
      j["x_end"] = s.sim.x_end ? json(*s.sim.x_end) : json(nullptr);
      j["runs"] = json::array();
      for (const auto& r : results) j["runs"].push_back(to_json(r));
      j["verdict"] = ok ? "Straight" : "NotStraight";
      emit(out, j);
    } else {
      out << "simulate " << pf.source << " (RK4, step " << number_text(s.sim.step) << ")\n";
      print_straightness(out, results, s.sim.straightness_tol);
      out << "verdict: " << (ok ? "Straight" : "NotStraight") << '\n';
    }
    return static_cast<int>(ok ? kExitOk : kExitNegative);
  });
}

int run_derive_conditions(const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto& ds = derive_conditions();
    if (g.json) {
      json j;
      j["command"] = "derive-conditions";
      j["provenance"] = {{"version", CLIN_VERSION}};
      j["conditions"] = json::array();
      for (const auto& d : ds) j["conditions"].push_back(to_json(d));
      emit(out, j);
    } else {
      out << "Compatibility conditions from the complex split of the scalar criteria\n"
          << "(a1..c2 are the real/imaginary parts; subscripts denote partial derivatives)\n\n";
      print_derivation(out, ds);
    }
    return static_cast<int>(kExitOk);
  });
}

}  // namespace clin::cli
