#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "obci/structure.hpp"

namespace obci {

/// A total function between two carriers. table[x] is the image of x.
class Mapping {
 public:
  Mapping(StructurePtr source, StructurePtr target, std::vector<Elem> table,
          std::string name = {});

  static Mapping identity(StructurePtr x, std::string name = {});
  /// x |-> value for every x; `constant_to_unit` uses the target's unit.
  static Mapping constant(StructurePtr x, StructurePtr y, Elem value, std::string name = {});
  static Mapping constant_to_unit(StructurePtr x, StructurePtr y, std::string name = {});

  const RawStructure& source() const { return *source_; }
  const RawStructure& target() const { return *target_; }
  const StructurePtr& source_ptr() const { return source_; }
  const StructurePtr& target_ptr() const { return target_; }
  const std::vector<Elem>& table() const { return table_; }
  const std::string& name() const { return name_; }

  Elem operator()(Elem x) const { return table_[x]; }

  bool is_surjective() const;
  /// e_Y = f(e_X)
  bool preserves_unit() const;

 private:
  StructurePtr source_;
  StructurePtr target_;
  std::vector<Elem> table_;
  std::string name_;
};

struct MorphismClass {
  bool is_hom = false;
  bool is_omap = false;
  CheckReport hom;   // law "homomorphism", witnesses (x, y)
  CheckReport omap;  // law "O-map", witnesses (x, y)

  bool is_ohom() const { return is_hom && is_omap; }
};

/// Evaluates f(x -> y) = f(x) -> f(y) and the O-map law over all pairs.
MorphismClass classify(const Mapping& m, const CheckOptions& opts = {});

bool is_homomorphism(const Mapping& m);
bool is_omap(const Mapping& m);
bool is_ohomomorphism(const Mapping& m);

/// The three order consequences for an O-homomorphism: clauses "unit-loop"
/// (e_Y <= f(e_X) -> f(e_X)), "unit-pos" (e_Y <= f(e_X)) and "monotone"
/// (x <= y => f(x) <= f(y)). Throws PreconditionError unless m is an
/// O-homomorphism.
CheckReport monotonicity_report(const Mapping& m, const CheckOptions& opts = {});

/// {x : e_Y <= f(x)} under the target's stored relation. Any mapping.
Subset kernel(const Mapping& m);

/// {y : exists x, e_Y <= f(x) and e_Y <= f(x) -> f(y)}, computed directly.
Subset kernel_alt(const Mapping& m);

/// f(e_X) <= f(x)  =>  x -> e_X in ker(f). Witnesses (x). Throws
/// PreconditionError unless m is an O-homomorphism.
CheckReport check_closed_kernel_condition(const Mapping& m, const CheckOptions& opts = {});

/// Same condition without the O-homomorphism precondition, for probing.
CheckReport closed_kernel_condition_raw(const Mapping& m, const CheckOptions& opts = {});

/// e_Y <= f(x)  =>  e_X <= x. Witnesses are kernel members outside the
/// source cone.
CheckReport check_reflection_condition(const Mapping& m, const CheckOptions& opts = {});

Subset image(const Mapping& m, const Subset& s);
Subset preimage(const Mapping& m, const Subset& t);

enum class MapClass { kAll, kHom, kOMap, kOHom };

std::string map_class_id(MapClass c);

struct MapEnumOptions {
  MapClass map_class = MapClass::kAll;
  bool surjective_only = false;
  bool unit_preserving_only = false;
  std::uint64_t budget = 10'000'000;
};

/// Calls `visit` for each mapping X -> Y of the requested class, in
/// lexicographic table order. `visit` returns false to stop early. Throws
/// BudgetError when |Y|^|X| exceeds the budget.
void for_each_map(const StructurePtr& x, const StructurePtr& y, const MapEnumOptions& opts,
                  const std::function<bool(const Mapping&)>& visit);

std::vector<Mapping> enumerate_maps(const StructurePtr& x, const StructurePtr& y,
                                    const MapEnumOptions& opts = {});

/// |Y|^|X|, saturating at UINT64_MAX.
std::uint64_t map_count(std::size_t source_size, std::size_t target_size);

}  // namespace obci
