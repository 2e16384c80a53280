#include "clin/conditions.hpp"

#include "clin/simplify.hpp"

namespace clin {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Linearizable: return "Linearizable";
    case Verdict::NotLinearizable: return "NotLinearizable";
    case Verdict::Indeterminate: return "Indeterminate";
  }
  return "?";
}

IdentityCheck check_identity(std::string name, std::string tag, const Expr& e, const Domain& dom,
                             const ZeroTestOptions& options) {
  Expr simplified = simplify(e);
  ZeroVerdict verdict = is_zero(e, simplified, dom, options);
  return {std::move(name), std::move(tag), std::move(simplified), std::move(verdict)};
}

Verdict combine(const std::vector<IdentityCheck>& identities) {
  bool inconclusive = false;
  for (const auto& id : identities) {
    if (id.verdict.status == ZeroStatus::Violated) return Verdict::NotLinearizable;
    if (id.verdict.status == ZeroStatus::Indeterminate) inconclusive = true;
  }
  return inconclusive ? Verdict::Indeterminate : Verdict::Linearizable;
}

}  // namespace clin
