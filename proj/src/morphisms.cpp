#include "obci/morphisms.hpp"

#include <limits>
#include <utility>

namespace obci {

Mapping::Mapping(StructurePtr source, StructurePtr target, std::vector<Elem> table,
                 std::string name)
    : source_(std::move(source)),
      target_(std::move(target)),
      table_(std::move(table)),
      name_(std::move(name)) {
  if (!source_ || !target_) throw StructureError("mapping needs a source and a target");
  if (table_.size() != source_->size()) {
    throw StructureError("mapping " + name_ + " has " + std::to_string(table_.size()) +
                         " entries; source " + source_->name() + " has " +
                         std::to_string(source_->size()) + " elements");
  }
  for (std::size_t x = 0; x < table_.size(); ++x) {
    if (table_[x] >= target_->size()) {
      throw StructureError("mapping " + name_ + " sends " + source_->label(static_cast<Elem>(x)) +
                           " outside " + target_->name());
    }
  }
}

Mapping Mapping::identity(StructurePtr x, std::string name) {
  std::vector<Elem> t(x->size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<Elem>(i);
  auto target = x;
  return {std::move(x), std::move(target), std::move(t), std::move(name)};
}

Mapping Mapping::constant(StructurePtr x, StructurePtr y, Elem value, std::string name) {
  std::vector<Elem> t(x->size(), value);
  return {std::move(x), std::move(y), std::move(t), std::move(name)};
}

Mapping Mapping::constant_to_unit(StructurePtr x, StructurePtr y, std::string name) {
  const Elem u = y->unit();
  return constant(std::move(x), std::move(y), u, std::move(name));
}

bool Mapping::is_surjective() const {
  std::uint64_t hit = 0;
  for (Elem v : table_) hit |= std::uint64_t{1} << v;
  return hit == Subset::full_mask(target_->size());
}

bool Mapping::preserves_unit() const { return table_[source_->unit()] == target_->unit(); }

MorphismClass classify(const Mapping& m, const CheckOptions& opts) {
  const RawStructure& x = m.source();
  const RawStructure& y = m.target();
  const auto n = static_cast<Elem>(x.size());
  MorphismClass c;
  c.hom.law = "homomorphism";
  c.omap.law = "O-map";
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      const Elem fa = m(a), fb = m(b);
      if (m(x.op(a, b)) != y.op(fa, fb)) c.hom.add(opts.witness_cap, {a, b});
      if (x.in_cone(x.op(a, b)) && !y.in_cone(y.op(fa, fb))) c.omap.add(opts.witness_cap, {a, b});
    }
  }
  c.is_hom = c.hom.holds;
  c.is_omap = c.omap.holds;
  return c;
}

bool is_homomorphism(const Mapping& m) {
  const RawStructure& x = m.source();
  const RawStructure& y = m.target();
  const auto n = static_cast<Elem>(x.size());
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (m(x.op(a, b)) != y.op(m(a), m(b))) return false;
  return true;
}

bool is_omap(const Mapping& m) {
  const RawStructure& x = m.source();
  const RawStructure& y = m.target();
  const auto n = static_cast<Elem>(x.size());
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (x.in_cone(x.op(a, b)) && !y.in_cone(y.op(m(a), m(b)))) return false;
  return true;
}

bool is_ohomomorphism(const Mapping& m) { return is_homomorphism(m) && is_omap(m); }

CheckReport monotonicity_report(const Mapping& m, const CheckOptions& opts) {
  if (!is_ohomomorphism(m)) {
    throw PreconditionError("monotonicity report requires an O-homomorphism");
  }
  const RawStructure& x = m.source();
  const RawStructure& y = m.target();
  CheckReport r{"P-monotone"};
  const Elem fe = m(x.unit());
  if (!y.in_cone(y.op(fe, fe))) r.add(opts.witness_cap, {x.unit()}, "unit-loop");
  if (!y.in_cone(fe)) r.add(opts.witness_cap, {x.unit()}, "unit-pos");
  const auto n = static_cast<Elem>(x.size());
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (x.leq(a, b) && !y.leq(m(a), m(b))) r.add(opts.witness_cap, {a, b}, "monotone");
  return r;
}

Subset kernel(const Mapping& m) {
  const RawStructure& y = m.target();
  Subset k = m.source().empty_set();
  for (std::size_t a = 0; a < m.table().size(); ++a)
    if (y.in_cone(m(static_cast<Elem>(a)))) k.insert(a);
  return k;
}

Subset kernel_alt(const Mapping& m) {
  const RawStructure& y = m.target();
  const auto n = static_cast<Elem>(m.source().size());
  Subset k = m.source().empty_set();
  for (Elem b = 0; b < n; ++b) {
    for (Elem a = 0; a < n; ++a) {
      if (y.in_cone(m(a)) && y.in_cone(y.op(m(a), m(b)))) {
        k.insert(b);
        break;
      }
    }
  }
  return k;
}

CheckReport closed_kernel_condition_raw(const Mapping& m, const CheckOptions& opts) {
  const RawStructure& x = m.source();
  const RawStructure& y = m.target();
  const Subset ker = kernel(m);
  const Elem fe = m(x.unit());
  CheckReport r{"closed-kernel-condition"};
  const auto n = static_cast<Elem>(x.size());
  for (Elem a = 0; a < n; ++a)
    if (y.leq(fe, m(a)) && !ker.contains(x.op(a, x.unit()))) r.add(opts.witness_cap, {a});
  return r;
}

CheckReport check_closed_kernel_condition(const Mapping& m, const CheckOptions& opts) {
  if (!is_ohomomorphism(m)) {
    throw PreconditionError("closed-kernel condition requires an O-homomorphism");
  }
  return closed_kernel_condition_raw(m, opts);
}

CheckReport check_reflection_condition(const Mapping& m, const CheckOptions& opts) {
  const RawStructure& x = m.source();
  const RawStructure& y = m.target();
  CheckReport r{"reflection-condition"};
  const auto n = static_cast<Elem>(x.size());
  for (Elem a = 0; a < n; ++a)
    if (y.in_cone(m(a)) && !x.in_cone(a)) r.add(opts.witness_cap, {a});
  return r;
}

Subset image(const Mapping& m, const Subset& s) {
  if (s.universe_size() != m.source().size()) {
    throw StructureError("image: subset is not over the source carrier");
  }
  Subset out = m.target().empty_set();
  for (Elem a : s.members()) out.insert(m(a));
  return out;
}

Subset preimage(const Mapping& m, const Subset& t) {
  if (t.universe_size() != m.target().size()) {
    throw StructureError("preimage: subset is not over the target carrier");
  }
  Subset out = m.source().empty_set();
  for (std::size_t a = 0; a < m.table().size(); ++a)
    if (t.contains(m(static_cast<Elem>(a)))) out.insert(a);
  return out;
}

std::string map_class_id(MapClass c) {
  switch (c) {
    case MapClass::kAll:
      return "all";
    case MapClass::kHom:
      return "hom";
    case MapClass::kOMap:
      return "omap";
    case MapClass::kOHom:
      return "ohom";
  }
  return "unknown";
}

std::uint64_t map_count(std::size_t source_size, std::size_t target_size) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < source_size; ++i) {
    if (total > std::numeric_limits<std::uint64_t>::max() / target_size) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= target_size;
  }
  return total;
}

void for_each_map(const StructurePtr& x, const StructurePtr& y, const MapEnumOptions& opts,
                  const std::function<bool(const Mapping&)>& visit) {
  const std::size_t n = x->size();
  const std::size_t k = y->size();
  const std::uint64_t total = map_count(n, k);
  if (total > opts.budget) {
    throw BudgetError("enumerating maps " + x->name() + " -> " + y->name() + " needs " +
                      std::to_string(total) + " candidates; budget is " +
                      std::to_string(opts.budget));
  }
  std::vector<Elem> table(n, 0);
  for (std::uint64_t i = 0; i < total; ++i) {
    Mapping m(x, y, table);
    bool keep = true;
    if (opts.unit_preserving_only && !m.preserves_unit()) keep = false;
    if (keep && opts.surjective_only && !m.is_surjective()) keep = false;
    if (keep) {
      switch (opts.map_class) {
        case MapClass::kAll:
          break;
        case MapClass::kHom:
          keep = is_homomorphism(m);
          break;
        case MapClass::kOMap:
          keep = is_omap(m);
          break;
        case MapClass::kOHom:
          keep = is_ohomomorphism(m);
          break;
      }
    }
    if (keep && !visit(m)) return;
    // Odometer with the last entry varying fastest gives lexicographic order.
    for (std::size_t pos = n; pos-- > 0;) {
      if (++table[pos] < k) break;
      table[pos] = 0;
    }
  }
}

std::vector<Mapping> enumerate_maps(const StructurePtr& x, const StructurePtr& y,
                                    const MapEnumOptions& opts) {
  std::vector<Mapping> out;
  for_each_map(x, y, opts, [&](const Mapping& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

}  // namespace obci
