#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "obci/structure.hpp"

namespace obci {

enum class SubstructureKind {
  kSubalgebra,
  kOrderedSubalgebra,
  kFilter,
  kOrderedFilter,
  kClosedFilter,
  kClosedOrderedFilter,
};

std::string kind_id(SubstructureKind k);
std::optional<SubstructureKind> parse_kind(std::string_view id);

// Predicates take a RawStructure so that structures failing the axioms can
// still be probed. Witness order is lexicographic in (x, y).

/// x, y in s  =>  x -> y in s. The empty set passes.
CheckReport is_subalgebra(const RawStructure& a, const Subset& s, const CheckOptions& opts = {});

/// x, y in s, e <= x, e <= y  =>  x -> y in s.
CheckReport is_ordered_subalgebra(const RawStructure& a, const Subset& s,
                                  const CheckOptions& opts = {});

/// e in s (clause "unit") and x -> y in s, x in s  =>  y in s (clause "mp").
CheckReport is_filter(const RawStructure& a, const Subset& s, const CheckOptions& opts = {});

/// e in s (clause "unit") and x in s, e <= x -> y  =>  y in s (clause "od").
CheckReport is_ordered_filter(const RawStructure& a, const Subset& s,
                              const CheckOptions& opts = {});

/// Every member of s lies in the cone {z : e <= z}.
CheckReport satisfies_cone_condition(const RawStructure& a, const Subset& s,
                                     const CheckOptions& opts = {});

enum class FilterKind { kFilter, kOrderedFilter };

/// Closedness of a filter (resp. ordered filter): it must also be a
/// subalgebra (resp. ordered subalgebra). Throws PreconditionError when s is
/// not a filter of the requested kind.
CheckReport is_closed(const RawStructure& a, const Subset& s, FilterKind kind,
                      const CheckOptions& opts = {});

/// Holds-only evaluation of a kind's predicate (no witnesses).
bool satisfies(const RawStructure& a, const Subset& s, SubstructureKind kind);

/// Full predicate report for a kind; closed kinds report the conjunction.
CheckReport check_kind(const RawStructure& a, const Subset& s, SubstructureKind kind,
                       const CheckOptions& opts = {});

inline constexpr std::size_t kDefaultSubsetBudget = 16;

/// All subsets satisfying the kind's predicate in increasing bitmask order.
/// Throws BudgetError when the carrier exceeds `max_carrier`.
std::vector<Subset> enumerate_substructures(const RawStructure& a, SubstructureKind kind,
                                            std::size_t max_carrier = kDefaultSubsetBudget);

}  // namespace obci
