#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qell/json_io.hpp"

namespace qell {

struct SuiteCocycle {
  std::string label;
  std::optional<Cochain3> alpha;  // nullopt: untwisted
};

struct SuiteSpace {
  std::string label;
  GSet gset;
};

struct SuiteHom {
  std::string label;
  GroupHom f;
  std::vector<SuiteCocycle> codomain_cocycles;  // 3-cocycles on f.codomain
};

struct VerifyCase {
  std::string name;
  GroupInput group;
  std::vector<SuiteCocycle> cocycles;
  std::vector<SuiteSpace> spaces;
};

struct VerifyScope {
  std::vector<VerifyCase> cases;
  /// Cases for SL2 image preservation (kept small: every basis generator
  /// is pushed through the full pipeline twice per matrix).
  std::vector<VerifyCase> sl2_cases;
  /// Extra tables checked by the characters target.
  std::vector<GroupInput> table_groups;
  std::uint64_t seed = 0;
  bool full_suite = false;
};

struct CheckResult {
  CheckResult() = default;
  explicit CheckResult(std::string n) : name(std::move(n)) {}

  std::string name;
  bool ok = true;
  long cases = 0;
  std::string witness;

  void fail(const std::string& why) {
    if (ok) witness = why;
    ok = false;
  }
};

GroupInput suite_group(const std::string& builtin_name);
/// Builtin groups of order <= 24 used for exhaustive checks.
std::vector<GroupInput> suite_groups();
/// zero, cyclic pullbacks, triple products (cyclic products only) and
/// `shifts` seeded coboundary shifts of the last nontrivial one.
std::vector<SuiteCocycle> suite_cocycles(const GroupInput& g, std::uint64_t seed, int shifts = 2);
/// identity, trivial, inclusions of cyclic subgroups, surjections onto Z/m.
std::vector<SuiteHom> suite_homs(const GroupInput& g, std::uint64_t seed);
/// pt, regular, two trivial points, and the right cosets of a cyclic subgroup.
std::vector<SuiteSpace> suite_spaces(const GroupPtr& g);
/// Right cosets H\G with G acting by right multiplication.
GSet coset_space(const GroupPtr& g, const std::vector<int>& subgroup);

VerifyScope default_scope(std::uint64_t seed);

std::vector<std::string> verify_targets();  // without "all"
/// One result per check group of the target; "all" runs every target.
std::vector<CheckResult> run_verify(const std::string& target, const VerifyScope& scope);

/// Random normalized 2-cochain on G with values in (1/den)Z/Z, as a
/// coboundary-shift JSON spec on top of `base`.
Json random_shift_spec(const Json& base, const GroupPtr& g, int den, std::mt19937_64& rng);

/// Random word in S, T, T^{-1}.
SL2Matrix random_sl2(std::mt19937_64& rng, int max_len = 6);
/// Random EllFunction with small cosets, exponents and cyclotomic coefficients.
EllFunction random_ell_function(std::mt19937_64& rng);

}  // namespace qell
