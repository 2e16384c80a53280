#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "clin/conditions.hpp"
#include "clin/system_lin.hpp"
#include "clin/system_types.hpp"
#include "clin/zero_test.hpp"

namespace clin {

/// (x, y, z, y', z').
struct State {
  double x = 0, y = 0, z = 0, yp = 0, zp = 0;
};

struct Trajectory {
  std::vector<State> samples;
  double step = 0.0;
  std::string integrator = "rk4";
  /// Set when a coefficient could not be evaluated or the state blew up;
  /// `samples` then ends at the last good state.
  bool aborted = false;
  std::string message;
};

/// (t, u, v) = (phi(x), psi1, psi2) at one trajectory sample.
struct TransformedSample {
  double t = 0, u = 0, v = 0;
};

struct PushForward {
  std::vector<TransformedSample> samples;
  /// Samples where the transformation could not be evaluated.
  std::size_t dropped = 0;
  std::vector<std::string> warnings;
};

enum class VerificationStatus { Verified, Failed, Indeterminate };

const char* to_string(VerificationStatus s);

struct StraightnessCheck {
  State initial;
  std::optional<double> value;
  std::string message;
};

struct VerificationReport {
  /// psi1,y - psi2,z and psi1,z + psi2,y.
  std::vector<IdentityCheck> cr_first_order;
  /// psi1,yy - psi2,yz, psi1,yy + psi1,zz, psi2,zz - psi1,yz, psi2,zz + psi2,yy.
  std::vector<IdentityCheck> cr_second_order;
  bool jacobian_ok = false;
  std::string jacobian_note;
  /// Induced minus given coefficient, a1 through c2.
  std::vector<IdentityCheck> coefficient_match;
  /// One entry per initial condition passed to verify_transformation.
  std::vector<StraightnessCheck> numeric;
  /// Largest entry of `numeric`; empty when no initial conditions were given.
  std::optional<double> numeric_straightness;
  VerificationStatus verdict = VerificationStatus::Indeterminate;
};

struct SimulationOptions {
  double step = 1e-3;
  double straightness_tol = 1e-5;
  /// Integration end; the upper x bound of the domain when empty.
  std::optional<double> x_end;
};

/// Checks that `t` maps the system `s` onto u'' = 0, v'' = 0: CR equations
/// and their second-order consequences, a nonvanishing Jacobian on `dom`
/// samples, and coefficient matching. With initial conditions it also
/// integrates, pushes forward and measures straightness.
VerificationReport verify_transformation(const SystemCoefficients& s, const PointTransformation& t, const Domain& dom,
                                         const ZeroTestOptions& options = {},
                                         const std::vector<State>& initial = {},
                                         const SimulationOptions& sim = {});

/// Classical fixed-step RK4 on the first-order form of the canonical system
/// from init.x to x_end. The step count is round((x_end - x0)/step), so the
/// last sample lands on x_end and the actual step may differ slightly from
/// `step`. Throws std::invalid_argument unless step > 0 and x_end > init.x.
Trajectory integrate(const SystemCoefficients& s, const State& init, double x_end, double step);

PushForward push_forward(const PointTransformation& t, const Trajectory& tr);

/// Max over u and v of the largest deviation from the least-squares affine
/// fit against t, divided by 1 + max |value|. Throws std::invalid_argument
/// for fewer than 3 samples or a degenerate t span.
double straightness(const std::vector<TransformedSample>& samples);

/// integrate + push_forward + straightness for one initial condition.
StraightnessCheck simulate_one(const SystemCoefficients& s, const PointTransformation& t, const State& init,
                               double x_end, double step);

}  // namespace clin
