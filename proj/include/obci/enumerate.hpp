#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "obci/structure.hpp"

namespace obci {

struct EnumOptions {
  /// Keep one representative per isomorphism class: the algebra whose
  /// encoding is lexicographically minimal under unit-fixing relabelings.
  bool up_to_iso = false;
  std::size_t max_size = 4;
  /// Search nodes visited before giving up with BudgetError.
  std::uint64_t node_budget = 4'000'000'000ULL;
  unsigned jobs = 1;
};

/// Every OBCI-algebra on {0, ..., n-1} with unit 0, in order of cone mask,
/// then lexicographic operation table. Algebras are named "obci<n>-<k>".
/// Unit row fixed to the identity (e -> x = x) and the relation generated
/// from the cone, so only tables and cones are searched.
std::vector<ValidatedAlgebra> enumerate_obci(std::size_t n, const EnumOptions& opts = {});

/// Encoding compared by the isomorphism reduction: the flat operation table
/// followed by the cone membership bits.
std::vector<Elem> structure_encoding(const RawStructure& s);

/// Minimal encoding over all relabelings fixing the unit.
std::vector<Elem> canonical_encoding(const RawStructure& s);

/// True when `s` equals its own canonical representative.
bool is_canonical(const RawStructure& s);

bool isomorphic(const RawStructure& a, const RawStructure& b);

}  // namespace obci
