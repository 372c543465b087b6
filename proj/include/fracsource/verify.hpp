#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fracsource {

enum class VerifyLevel { quick, full };

const char* to_string(VerifyLevel level);

struct InvariantResult {
  std::string name;
  bool passed = false;
  double observed = 0.0;   // worst value seen
  double threshold = 0.0;  // pass iff observed <= threshold
  std::string detail;
};

struct VerifyReport {
  VerifyLevel level = VerifyLevel::quick;
  std::uint64_t seed = 0;
  std::vector<InvariantResult> results;
  bool passed() const;
  void write(std::ostream& os) const;
};

// Seed for randomized checks: FRACSOURCE_SEED if set, otherwise a fixed default.
std::uint64_t verify_seed();

// Runs every named invariant; exceptions become failures, never propagate.
VerifyReport run_verify(VerifyLevel level, std::uint64_t seed = verify_seed());

}  // namespace fracsource
