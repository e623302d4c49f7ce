#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ratlas {

enum class IdentityKind { combi1, combi2_first, combi2_second, gtilde_h2 };

struct IdentitySuiteResult {
  IdentityKind kind;
  std::size_t instances = 0;
  std::size_t failures = 0;
  double max_relative_gap = 0.0;
  double tolerance = 0.0;

  bool passed() const noexcept { return failures == 0; }
};

const char* identity_name(IdentityKind kind) noexcept;

/// Seeded random instances of one identity. Partial-fraction identities use
/// |m| <= 8 nodes in the disk of radius 0.9 and tolerance 1e-10; the H2 suite
/// compares the closed form with a 5000-term Taylor expansion at tolerance 1e-6.
IdentitySuiteResult identity_suite(IdentityKind kind, std::size_t instances, std::uint64_t seed);

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

/// The seven end-to-end checks, each seeded from `seed`.
std::vector<CriterionResult> run_verification(std::uint64_t seed);

}  // namespace ratlas
