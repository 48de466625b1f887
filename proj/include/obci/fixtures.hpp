#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "obci/morphisms.hpp"
#include "obci/structure.hpp"

namespace obci::fixtures {

/// A Cayley table and relation list transcribed as printed, together with
/// what the source text asserts about it.
struct AlgebraFixture {
  std::string_view name;
  std::string_view text;  // algebra file format
  bool asserted_obci;
};

struct MapFixture {
  std::string_view name;
  std::string_view text;  // map file format
  std::optional<bool> asserted_hom;
  std::optional<bool> asserted_omap;
  /// Kernel as printed, comma-separated labels.
  std::optional<std::string_view> asserted_kernel;
};

/// A printed verdict on one subset of a fixture algebra.
struct SubsetFixture {
  std::string_view algebra;
  std::string_view subset;  // comma-separated labels
  std::string_view kind;    // substructure kind id
  bool asserted_holds;
};

const std::vector<AlgebraFixture>& algebras();
const std::vector<MapFixture>& maps();
const std::vector<SubsetFixture>& subsets();

/// Parsed fixture algebra; nullptr when the name is unknown.
StructurePtr algebra(std::string_view name);
/// Parsed fixture map, resolving its algebras from the library. Throws
/// PreconditionError for an unknown name.
Mapping map(std::string_view name);

std::optional<AlgebraFixture> find_algebra(std::string_view name);
std::optional<MapFixture> find_map(std::string_view name);

/// One divergence between a printed assertion and the computed verdict.
struct Finding {
  std::string subject;
  std::string asserted;
  std::string computed;
  std::string witness;

  std::string line() const;
};

/// Findings for one algebra fixture (empty when assertions agree).
std::vector<Finding> audit_algebra(const AlgebraFixture& f);
std::vector<Finding> audit_map(const MapFixture& f);
std::vector<Finding> audit_subset(const SubsetFixture& f);
/// Every fixture, in library order.
std::vector<Finding> audit_all();

}  // namespace obci::fixtures
