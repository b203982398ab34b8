#pragma once

// Cross-checks of the symbolic computation against the brute-force group
// model, plus invariant suites on computed filters.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "adjfilter/adjoint_engine.hpp"
#include "adjfilter/group_oracle.hpp"

namespace adjfilter {

enum class CheckStatus { Pass, Fail, Skip };

struct CheckOutcome {
  std::string check;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
};

struct VerifyInstance {
  Family family = Family::A;
  int rank = 0;
  Residue prime = 3;
};

struct InstanceReport {
  std::string label;  // "B3 p=3"
  std::vector<CheckOutcome> outcomes;
  bool failed() const;
};

std::vector<VerifyInstance> default_verify_instances();

// "(1,1,0)" or "-(1,1,0)" for a signed root id.
std::string describe_root(const RootSystem& sys, int signed_id);

// Structure constant table: |N_{a,b}| = v+1 and N_{a,b} = -N_{b,a}.
std::optional<std::string> structure_constant_failure(const RootSystem& sys);

// Chevalley commutator formula against the matrix group, all ordered pairs
// of distinct positive roots and t, u in {1, 2}.
std::optional<std::string> commutator_formula_failure(const GroupOracle& g);

// x_r(s) x_r(t) = x_r(s+t) for every positive root and all s, t.
std::optional<std::string> one_parameter_failure(const GroupOracle& g);

// Each x_r(1) preserves the bracket on random pairs.
std::optional<std::string> automorphism_failure(const GroupOracle& g, int samples, std::uint64_t seed);

// f(m) and f(n) commute into f(m+n) over term starts and canonical indices.
std::optional<std::string> filter_axiom_failure(SubgroupCalculus& calc, const FilterChain& f);

// Alternation and Jacobi for the graded bracket on random homogeneous
// triples.
std::optional<std::string> lie_ring_failure(SubgroupCalculus& calc, const FilterChain& f, int samples,
                                            std::uint64_t seed);

// Shortcut evaluation against unrestricted path products for n_1 <= max_first
// and tail coordinates <= max_tail, on every refinement round.
std::optional<std::string> generated_filter_failure(SubgroupCalculus& calc, const AlphaSeries& a,
                                                    int max_first, int max_tail);

// Brute-force enumeration is attempted only when p^N <= cap and the element
// store fits in this many bytes.
inline constexpr std::size_t kOracleMemoryBudget = std::size_t{256} << 20;
bool oracle_feasible(const RootSystem& sys, Residue p, std::size_t cap);

// Full check list for one instance. A system may be passed in directly so
// that a corrupted table can be exercised.
InstanceReport verify_system(const RootSystem& sys, Residue p, std::size_t cap);
InstanceReport verify_instance(const VerifyInstance& inst, std::size_t cap);

// Prints one line per check; returns 0 if nothing failed, 1 otherwise.
int print_reports(const std::vector<InstanceReport>& reports, std::ostream& os);

}  // namespace adjfilter
