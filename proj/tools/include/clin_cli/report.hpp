#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "clin/conditions.hpp"
#include "clin/system_lin.hpp"
#include "clin/transform_lab.hpp"
#include "json.hpp"

namespace clin::cli {

using nlohmann::json;

json to_json(const ZeroVerdict& v);
json to_json(const IdentityCheck& id);
json to_json(const std::vector<IdentityCheck>& ids);
json to_json(const ConditionReport& r);
json to_json(const StraightnessCheck& s);
json to_json(const VerificationReport& r);
json to_json(const ConditionDerivation& d);

/// Shortest round-trip text for a double; "inf"/"nan" spelled out.
std::string number_text(double v);

void print_identities(std::ostream& out, const std::vector<IdentityCheck>& ids);
void print_condition_report(std::ostream& out, const ConditionReport& r);
void print_straightness(std::ostream& out, const std::vector<StraightnessCheck>& checks, double tol);
void print_verification(std::ostream& out, const VerificationReport& r, double straightness_tol);
void print_derivation(std::ostream& out, const std::vector<ConditionDerivation>& ds);

}  // namespace clin::cli
