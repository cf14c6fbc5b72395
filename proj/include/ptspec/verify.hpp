#pragma once

#include <string>
#include <vector>

namespace ptspec {

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;    // worst-case figure for the check
  double threshold = 0.0;
  std::string detail;
};

// The ten library-level verification checks behind `ptspec verify`, in a fixed
// order, each with its tolerance pinned here.
std::vector<CheckResult> run_verification();

}  // namespace ptspec
