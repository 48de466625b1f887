#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "obci/morphisms.hpp"
#include "obci/structure.hpp"
#include "obci/substructures.hpp"

namespace obci {

/// Every machine-checkable proposition and theorem about OBCI-algebras,
/// their substructures, O-homomorphisms, kernels and direct products.
enum class ClaimId {
  kIdentities,
  kOrdFilterIsFilter,
  kMonotone,
  kKernelAlt,
  kClosedKernel,
  kKernelClosedConverse,
  kSubalgPreimage,
  kSubalgImage,
  kOrdSubalgPreimage,
  kOrdSubalgImageCone,
  kOrdSubalgImageReflect,
  kKernelFilter,
  kKernelOrdFilter,
  kFilterPreimage,
  kFilterImage,
  kOrdFilterPreimage,
  kOrdFilterImageReflect,
  kOrdFilterImageKerCone,
  kFilterBijection,
  kOrdFilterBijection,
  kPairmapOhom,
  kProductKernel,
  kProductKernelProjection,
  kKsets,
};

const std::vector<ClaimId>& all_claims();
std::string claim_id(ClaimId c);
std::optional<ClaimId> parse_claim(std::string_view id);
/// One-line statement of the claim.
std::string claim_statement(ClaimId c);

/// One concrete instantiation of a claim. Which fields are used depends on
/// the claim: algebra claims use `x` (and `subset`), map claims use `x`, `y`,
/// `map` (and `subset`, over X or Y), product claims also use `x2`, `y2`,
/// `map2`.
struct Instance {
  StructurePtr x;
  StructurePtr y;
  std::vector<Elem> map;
  StructurePtr x2;
  StructurePtr y2;
  std::vector<Elem> map2;
  std::optional<Subset> subset;
  /// The subset lives on Y rather than X (preimage claims).
  bool subset_in_target = false;
};

enum class Verdict { kSkipped, kHolds, kFails };

struct InstanceResult {
  Verdict verdict = Verdict::kSkipped;
  std::string witness;  // why the conclusion fails
};

/// Evaluates the claim's hypotheses and conclusion on one instance.
InstanceResult check_instance(ClaimId c, const Instance& inst);

struct Counterexample {
  Instance instance;
  std::string witness;

  /// Human-readable description of the instance and witness.
  std::string describe() const;
};

struct SweepReport {
  ClaimId claim;
  std::uint64_t instances_checked = 0;
  std::uint64_t hypothesis_skipped = 0;
  std::vector<Counterexample> counterexamples;
  /// Total failing instances (counterexamples keeps at most the cap).
  std::uint64_t failures = 0;

  bool verified() const { return failures == 0; }
};

struct SweepScope {
  /// Carrier sizes to enumerate (all algebras of each size).
  std::vector<std::size_t> sizes;
  /// Add the validated fixture algebras to the universe.
  bool fixtures = false;
  bool up_to_iso = false;
  unsigned jobs = 1;
  std::uint64_t map_budget = 10'000'000;
  std::size_t counterexample_cap = 16;
};

/// The algebras a scope quantifies over: enumerated sizes, then fixtures.
std::vector<StructurePtr> scope_universe(const SweepScope& scope);

/// Instantiates the claim over every algebra, mapping and subset in scope.
SweepReport verify_claim(ClaimId c, const SweepScope& scope);

/// All claims, sharing one universe and map table.
std::vector<SweepReport> verify_all(const SweepScope& scope);

/// "CLAIM <id> VERIFIED|FALSIFIED checked=<n> skipped=<n> counterexamples=<n>"
std::string format_sweep_line(const SweepReport& r);

/// Filter-lattice correspondence for a single map: F |-> f(F) between
/// F in {(ordered) filters of X containing ker f [and in the cone]} and
/// G in {(ordered) filters of Y}, with G |-> f^-1(G) as the inverse.
struct BijectionReport {
  std::vector<Subset> sources;  // the family on X
  std::vector<Subset> targets;  // the family on Y
  std::vector<Subset> images;   // f(F) for each F in sources
  bool bijective = false;
  std::vector<std::string> failures;
};

BijectionReport filter_bijection(const Mapping& f, bool ordered);

/// Built-in separating queries: "hom-not-omap", "omap-not-hom"; any claim id
/// searches that claim's counterexamples.
struct SearchResult {
  bool found = false;
  std::string description;
  std::optional<Mapping> map;
};

/// Searches the named fixture maps, then every map between fixture algebras.
SearchResult search_fixtures(std::string_view query);
/// Searches maps between all validated algebras of the given sizes.
SearchResult search_sizes(std::string_view query, const SweepScope& scope);

bool is_known_query(std::string_view query);

}  // namespace obci
