#include "clin_cli/report.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>

namespace clin::cli {

std::string number_text(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

json to_json(const ZeroVerdict& v) {
  json j;
  j["status"] = to_string(v.status);
  j["max_abs_residual"] = v.max_abs_residual;
  j["max_rel_residual"] = v.max_rel_residual;
  j["samples_used"] = v.samples_used;
  if (!v.note.empty()) j["note"] = v.note;
  if (v.witness) {
    json w;
    for (const auto& [name, value] : v.witness->point) w["point"][name] = value;
    w["value"] = v.witness->value;
    w["relative"] = v.witness->relative;
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

json to_json(const IdentityCheck& id) {
  json j = to_json(id.verdict);
  j["name"] = id.name;
  j["tag"] = id.tag;
  j["expression"] = format(id.expr);
  return j;
}

json to_json(const std::vector<IdentityCheck>& ids) {
  json j = json::array();
  for (const auto& id : ids) j.push_back(to_json(id));
  return j;
}

json to_json(const ConditionReport& r) {
  json j;
  j["verdict"] = to_string(r.verdict);
  j["identities"] = to_json(r.identities);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

json to_json(const StraightnessCheck& s) {
  json j;
  j["initial"] = {s.initial.x, s.initial.y, s.initial.z, s.initial.yp, s.initial.zp};
  j["straightness"] = s.value ? json(*s.value) : json(nullptr);
  if (!s.message.empty()) j["message"] = s.message;
  return j;
}

json to_json(const VerificationReport& r) {
  json j;
  j["verdict"] = to_string(r.verdict);
  j["cr_first_order"] = to_json(r.cr_first_order);
  j["cr_second_order"] = to_json(r.cr_second_order);
  j["jacobian_ok"] = r.jacobian_ok;
  j["jacobian_note"] = r.jacobian_note;
  j["coefficient_match"] = to_json(r.coefficient_match);
  j["numeric"] = json::array();
  for (const auto& n : r.numeric) j["numeric"].push_back(to_json(n));
  j["numeric_straightness"] = r.numeric_straightness ? json(*r.numeric_straightness) : json(nullptr);
  return j;
}

json to_json(const ConditionDerivation& d) {
  json j;
  j["name"] = d.name;
  j["oracle_source"] = d.oracle_source;
  j["oracle"] = format(d.oracle);
  j["variants"] = json::array();
  for (const auto& v : d.variants)
    j["variants"].push_back({{"label", v.label}, {"formula", v.formula}, {"matches", v.matches}, {"sign", v.sign}});
  if (d.selected < d.variants.size()) j["selected"] = d.variants[d.selected].label;
  else j["selected"] = nullptr;
  return j;
}

namespace {

void print_witness(std::ostream& out, const Witness& w) {
  out << "      witness:";
  for (const auto& [name, value] : w.point) out << ' ' << name << '=' << number_text(value);
  out << " value=" << number_text(w.value) << '\n';
}

}  // namespace

void print_identities(std::ostream& out, const std::vector<IdentityCheck>& ids) {
  for (const auto& id : ids) {
    out << "  " << std::left << std::setw(18) << id.tag << ' ' << std::setw(22) << id.name << ' ' << std::setw(16)
        << to_string(id.verdict.status) << " max rel " << number_text(id.verdict.max_rel_residual) << '\n';
    if (id.verdict.witness) print_witness(out, *id.verdict.witness);
    if (!id.verdict.note.empty()) out << "      note: " << id.verdict.note << '\n';
  }
}

void print_condition_report(std::ostream& out, const ConditionReport& r) {
  print_identities(out, r.identities);
  if (!r.note.empty()) out << "note: " << r.note << '\n';
  out << "verdict: " << to_string(r.verdict) << '\n';
}

void print_straightness(std::ostream& out, const std::vector<StraightnessCheck>& checks, double tol) {
  for (const auto& s : checks) {
    out << "  init (" << number_text(s.initial.x) << ", " << number_text(s.initial.y) << ", "
        << number_text(s.initial.z) << ", " << number_text(s.initial.yp) << ", " << number_text(s.initial.zp)
        << "): ";
    if (s.value) out << "straightness " << number_text(*s.value) << (*s.value < tol ? " ok" : " EXCEEDS tolerance");
    else out << "failed";
    if (!s.message.empty()) out << " (" << s.message << ')';
    out << '\n';
  }
}

void print_verification(std::ostream& out, const VerificationReport& r, double straightness_tol) {
  out << "CR equations:\n";
  print_identities(out, r.cr_first_order);
  print_identities(out, r.cr_second_order);
  out << "Jacobian: " << (r.jacobian_ok ? "ok" : "FAILED") << " (" << r.jacobian_note << ")\n";
  out << "coefficient match:\n";
  print_identities(out, r.coefficient_match);
  if (!r.numeric.empty()) {
    out << "numeric straightness (tolerance " << number_text(straightness_tol) << "):\n";
    print_straightness(out, r.numeric, straightness_tol);
  }
  out << "verdict: " << to_string(r.verdict) << '\n';
}

void print_derivation(std::ostream& out, const std::vector<ConditionDerivation>& ds) {
  for (const auto& d : ds) {
    out << d.name << " (from " << d.oracle_source << ")\n";
    out << "  oracle, CR-reduced: " << format(d.oracle) << " = 0\n";
    for (std::size_t i = 0; i < d.variants.size(); ++i) {
      const auto& v = d.variants[i];
      out << "  " << (i == d.selected ? "* " : "  ") << v.label << ": " << v.formula << " = 0\n";
      out << "      " << (v.matches ? "matches the oracle" : "does NOT match the oracle");
      if (v.matches) out << (v.sign > 0 ? " (same sign)" : " (opposite sign)");
      out << '\n';
    }
  }
}

}  // namespace clin::cli
