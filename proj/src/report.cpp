#include "isotree/report.h"

namespace isotree {

nlohmann::json complex_json(cd z) { return {{"re", z.real()}, {"im", z.imag()}}; }

Check& Report::relative(const std::string& name, cd lhs, cd rhs, double tol, std::string note) {
  const double err = relative_error(lhs, rhs);
  checks.push_back({name, lhs, rhs, err, tol, true, err <= tol, std::move(note)});
  return checks.back();
}

Check& Report::absolute(const std::string& name, cd lhs, cd rhs, double tol, std::string note) {
  const double err = std::abs(lhs - rhs);
  checks.push_back({name, lhs, rhs, err, tol, false, err <= tol, std::move(note)});
  return checks.back();
}

Check& Report::boolean(const std::string& name, bool ok, std::string note) {
  checks.push_back({name, ok ? 1.0 : 0.0, 1.0, ok ? 0.0 : 1.0, 0.0, false, ok, std::move(note)});
  return checks.back();
}

void Report::append(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

bool Report::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::vector<std::string> Report::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.pass) out.push_back(c.name);
  return out;
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["subject"] = subject;
  j["pass"] = all_pass();
  j["phase_constant"] = complex_json(phase_constant);
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    j["checks"].push_back({{"name", c.name},
                           {"lhs", complex_json(c.lhs)},
                           {"rhs", complex_json(c.rhs)},
                           {"rel_err", c.err},
                           {"mode", c.relative ? "relative" : "absolute"},
                           {"tolerance", c.tol},
                           {"pass", c.pass},
                           {"note", c.note}});
  }
  j["failures"] = failures();
  j["notes"] = notes;
  return j;
}

}  // namespace isotree
