#pragma once

#include <string>
#include <string_view>

#include "obci/fixtures.hpp"
#include "obci/io.hpp"
#include "obci/structure.hpp"

namespace testing {

inline obci::StructurePtr alg(std::string_view name) {
  obci::StructurePtr s = obci::fixtures::algebra(name);
  if (!s) throw obci::PreconditionError("missing fixture " + std::string(name));
  return s;
}

/// Subset from comma-separated labels.
inline obci::Subset set(const obci::RawStructure& s, std::string_view labels) {
  return obci::parse_set(s, labels);
}

inline obci::Elem el(const obci::RawStructure& s, std::string_view label) {
  auto i = s.index_of(label);
  if (!i) throw obci::PreconditionError("no element " + std::string(label));
  return *i;
}

inline std::string show(const obci::RawStructure& s, const obci::Subset& x) {
  return obci::format_set(s, x);
}

}  // namespace testing
