#pragma once

// The acceptance battery A1..A10, shared by the acceptance test binary and
// the `verify-paper` command.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "locclab/io.hpp"
#include "locclab/symmetry.hpp"
#include "locclab/tensor.hpp"

namespace locclab {

enum class Profile { Quick, Full };

struct CriterionResult {
  std::string id;      // "A1" .. "A10"
  std::string title;
  bool passed = false;
  std::string detail;  // one line
  io::Json measured;
  double seconds = 0.0;
};

struct VerificationOptions {
  Profile profile = Profile::Quick;
  std::uint64_t seed = 7;
  /// Directory holding the A10 fixtures. Empty: A10 regenerates them.
  std::filesystem::path fixture_dir;
  /// Called after each criterion finishes.
  std::function<void(const CriterionResult&)> on_result;
};

struct VerificationReport {
  std::string profile;
  std::vector<CriterionResult> criteria;
  bool all_passed() const;
  io::Json to_json() const;
};

/// Runs one criterion (1..10). Exceptions become a failed result.
CriterionResult run_criterion(int index, const VerificationOptions& opt);
/// Quick: A1..A6. Full: A1..A10.
VerificationReport verify_paper(const VerificationOptions& opt);

/// Independent count of diagonal solutions modulo global phase: depth-first
/// search with rows checked in a seeded random order, counting solutions
/// that are lexicographically minimal in their constant-shift orbit.
std::int64_t reenumerate_diagonal_solutions(const ExponentSystem& sys, std::uint64_t seed);

/// Tripartite d = 4 fixture for the bound comparison.
struct BoundFixture {
  QuditState psi;
  QuditState phi;
  LocalOperator h;
  double pmax_bound = 0.0;
  double eisert_bound = 0.0;
};
/// Random search over filters h (deterministic in seed) for a fixture where
/// the pmax bound beats the entropy bound (pmax_wins) or the reverse.
BoundFixture find_bound_fixture(bool pmax_wins, std::uint64_t seed);
io::Json bound_fixture_to_json(const BoundFixture& f, const std::string& description);
BoundFixture bound_fixture_from_json(const io::Json& j);

}  // namespace locclab
