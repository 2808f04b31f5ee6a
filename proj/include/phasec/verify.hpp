#pragma once

#include <string>
#include <vector>

namespace phasec {

enum class VerifyLevel { fast, full };

struct SuiteResult {
  std::string name;
  bool passed = false;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

// Oracle suites. fast: N=3 kernel identities, coherent closed forms at j=2,
// one-axis-twisting closed forms, three routes at j=2. full adds the N=21 routes
// and the LMG reference values for fidelity and entropies.
std::vector<SuiteResult> run_verify(VerifyLevel level);

// suite,status,max_deviation,tolerance,detail
std::string render_verify(const std::vector<SuiteResult>& results);

}  // namespace phasec
