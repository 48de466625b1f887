#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "obci/subset.hpp"

namespace obci {

/// A candidate finite structure (carrier, binary operation, unit, relation).
/// Nothing about the axioms is assumed; only totality of the table and
/// validity of indices are enforced at construction. Immutable afterwards.
class RawStructure {
 public:
  /// `op` is row-major: op[i * n + j] is the index of i -> j.
  /// `order` is row-major: order[i * n + j] != 0 iff i <= j.
  static RawStructure create(std::string name, std::vector<std::string> labels,
                             std::vector<Elem> op, Elem unit, std::vector<std::uint8_t> order);

  /// Same carrier with default labels "0", "1", ...
  static RawStructure from_tables(std::string name, std::size_t n, std::vector<Elem> op,
                                  Elem unit, std::vector<std::uint8_t> order);

  const std::string& name() const { return name_; }
  std::size_t size() const { return n_; }
  Elem unit() const { return unit_; }

  Elem op(Elem x, Elem y) const { return op_[x * n_ + y]; }
  bool leq(Elem x, Elem y) const { return (order_rows_[x] >> y) & 1U; }
  /// Row x of the relation as a bitmask: bit y set iff x <= y.
  std::uint64_t order_row(Elem x) const { return order_rows_[x]; }

  /// The set {z : e <= z} under the stored relation.
  Subset cone() const { return {n_, order_rows_[unit_]}; }
  bool in_cone(Elem z) const { return leq(unit_, z); }

  std::span<const Elem> op_table() const { return op_; }
  std::vector<std::uint8_t> order_matrix() const;

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Elem x) const { return labels_[x]; }
  std::optional<Elem> index_of(std::string_view label) const;

  Subset full_set() const { return Subset::full(n_); }
  Subset empty_set() const { return Subset::empty(n_); }

  /// Structural equality: tables, unit, relation and labels; the name is ignored.
  bool same_structure(const RawStructure& other) const;

  RawStructure renamed(std::string name) const;

 private:
  RawStructure() = default;

  std::string name_;
  std::size_t n_ = 0;
  std::vector<std::string> labels_;
  std::vector<Elem> op_;
  Elem unit_ = 0;
  std::vector<std::uint64_t> order_rows_;
};

using StructurePtr = std::shared_ptr<const RawStructure>;

/// One violated instance of a law. `clause` names the sub-condition when a
/// law has several (e.g. "unit" vs "mp" for filters); it is empty otherwise.
struct Witness {
  std::string clause;
  std::vector<Elem> elems;

  friend bool operator==(const Witness&, const Witness&) = default;
};

/// Verdict for one law. `violations` counts every failing instance; only the
/// first `witness_cap` of them are retained in `witnesses`.
struct CheckReport {
  CheckReport() = default;
  explicit CheckReport(std::string law_id) : law(std::move(law_id)) {}

  std::string law;
  bool holds = true;
  std::vector<Witness> witnesses;
  std::size_t violations = 0;

  void add(std::size_t cap, std::vector<Elem> elems, std::string clause = {});
};

inline constexpr std::size_t kExhaustive = std::numeric_limits<std::size_t>::max();
inline constexpr std::size_t kDefaultWitnessCap = 32;

struct CheckOptions {
  std::size_t witness_cap = kDefaultWitnessCap;
};

enum class Axiom { kObci1 = 1, kObci2, kObci3, kObci4, kObci5, kObci6 };

inline constexpr std::array<Axiom, 6> kAllAxioms = {Axiom::kObci1, Axiom::kObci2, Axiom::kObci3,
                                                    Axiom::kObci4, Axiom::kObci5, Axiom::kObci6};

std::string axiom_id(Axiom a);
std::optional<Axiom> parse_axiom(std::string_view id);

/// Evaluates one axiom over every tuple. Witness tuples are in lexicographic
/// (x, y, z) order.
CheckReport check_axiom(const RawStructure& s, Axiom axiom, const CheckOptions& opts = {});

class ValidatedAlgebra;
namespace detail {
ValidatedAlgebra certify(StructurePtr s);
}  // namespace detail

/// A RawStructure certified against all six axioms. Only `validate` makes one.
class ValidatedAlgebra {
 public:
  const RawStructure& structure() const { return *structure_; }
  const StructurePtr& shared() const { return structure_; }
  const Subset& cone() const { return cone_; }
  std::size_t size() const { return structure_->size(); }

 private:
  friend ValidatedAlgebra detail::certify(StructurePtr s);
  ValidatedAlgebra(StructurePtr s, Subset cone) : structure_(std::move(s)), cone_(cone) {}

  StructurePtr structure_;
  Subset cone_;
};

struct ValidationResult {
  std::optional<ValidatedAlgebra> algebra;
  /// With `all_reports` every axiom report, in axiom order. Otherwise only
  /// the reports up to and including the first failing axiom.
  std::vector<CheckReport> reports;

  bool ok() const { return algebra.has_value(); }
  /// First failing report; requires !ok().
  const CheckReport& failure() const;
};

ValidationResult validate(StructurePtr s, const CheckOptions& opts = {}, bool all_reports = false);
ValidationResult validate(const RawStructure& s, const CheckOptions& opts = {},
                          bool all_reports = false);

/// Identities every OBCI-algebra satisfies: a1, a2, a3, a4, b4, b5.
inline constexpr std::array<std::string_view, 6> kDerivedIdentities = {"a1", "a2", "a3",
                                                                       "a4", "b4", "b5"};

CheckReport check_derived_identity(const RawStructure& s, std::string_view id,
                                   const CheckOptions& opts = {});

/// All six identities in one report (law "P-identities"); the witness clause
/// names the identity.
CheckReport check_derived_identities(const ValidatedAlgebra& a, const CheckOptions& opts = {});
CheckReport check_derived_identities(const RawStructure& s, const CheckOptions& opts = {});

/// The unique relation with x <= y iff op(x, y) lies in `cone`.
std::vector<std::uint8_t> order_from_cone(std::span<const Elem> op, std::size_t n, Elem unit,
                                          const Subset& cone);

/// Reflexive-transitive closure of a relation, row-major n x n.
std::vector<std::uint8_t> reflexive_transitive_closure(std::span<const std::uint8_t> order,
                                                       std::size_t n);

/// Partial-order diagnostics of the stored relation (laws "reflexive",
/// "antisymmetric", "transitive").
std::vector<CheckReport> check_partial_order(const RawStructure& s, const CheckOptions& opts = {});

}  // namespace obci
