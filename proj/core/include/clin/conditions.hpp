#pragma once

#include <string>
#include <vector>

#include "clin/expr.hpp"
#include "clin/zero_test.hpp"

namespace clin {

enum class Verdict { Linearizable, NotLinearizable, Indeterminate };

const char* to_string(Verdict v);

/// One identity that must vanish, with its zero-test outcome. `tag` groups
/// identities ("cauchy-riemann", "compatibility", "scalar criterion").
struct IdentityCheck {
  std::string name;
  std::string tag;
  Expr expr;
  ZeroVerdict verdict;
};

struct ConditionReport {
  std::vector<IdentityCheck> identities;
  Verdict verdict = Verdict::Indeterminate;
  /// Free-form remark, e.g. which printed condition variant was used.
  std::string note;
};

/// Zero-tests `e` on `dom`; the stored expression is simplify(e).
IdentityCheck check_identity(std::string name, std::string tag, const Expr& e, const Domain& dom,
                             const ZeroTestOptions& options);

/// NotLinearizable if any identity is violated, else Indeterminate if any
/// check was inconclusive, else Linearizable.
Verdict combine(const std::vector<IdentityCheck>& identities);

}  // namespace clin
