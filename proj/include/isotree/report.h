#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "isotree/complex_matrix.h"

namespace isotree {

struct Check {
  std::string name;
  cd lhs = 0, rhs = 0;
  double err = 0;
  double tol = 0;
  bool relative = true;
  bool pass = false;
  std::string note;
};

struct Report {
  std::string subject;
  std::vector<Check> checks;
  cd phase_constant = 1.0;
  std::vector<std::string> notes;

  // Relative error with denominator max(|lhs|, |rhs|, 1e-300).
  Check& relative(const std::string& name, cd lhs, cd rhs, double tol, std::string note = {});
  Check& absolute(const std::string& name, cd lhs, cd rhs, double tol, std::string note = {});
  // A true/false property recorded as lhs = 1 or 0 against rhs = 1.
  Check& boolean(const std::string& name, bool ok, std::string note = {});
  void append(const Report& other);
  bool all_pass() const;
  std::vector<std::string> failures() const;
  nlohmann::json to_json() const;
};

nlohmann::json complex_json(cd z);

}  // namespace isotree
