#pragma once

#include <string>
#include <vector>

namespace pairwave {

struct ValidationCheck {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct ValidationOptions {
  unsigned threads = 1;
  bool include_sampling = true;
  unsigned long long seed = 1;
};

/// Cross-checks every closed form against its independent numerical route
/// (oracle-equivalence and invariant suite used by `pairwave validate`).
std::vector<ValidationCheck> run_validation_suite(const ValidationOptions& options = {});

}  // namespace pairwave
