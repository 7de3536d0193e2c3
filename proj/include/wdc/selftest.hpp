#pragma once

#include <string>
#include <vector>

namespace wdc {

struct SelftestCheck {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct SelftestOptions {
  // Flip one generator entry before the G H^T check (negative test hook).
  bool corrupt_generator = false;
};

// Exhaustive small-instance oracles: field axioms for every supported field of
// order <= 16, byte-field multiplication against carry-less reference, G H^T = 0
// and systematic encoding for the shipped codes, exhaustive minimum distances,
// and null-space verification.
std::vector<SelftestCheck> run_selftest(const SelftestOptions& options = {});

}  // namespace wdc
