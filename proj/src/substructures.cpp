#include "obci/substructures.hpp"

#include <array>
#include <utility>

namespace obci {

namespace {

constexpr std::array<std::pair<SubstructureKind, std::string_view>, 6> kKindNames = {{
    {SubstructureKind::kSubalgebra, "subalgebra"},
    {SubstructureKind::kOrderedSubalgebra, "ordered-subalgebra"},
    {SubstructureKind::kFilter, "filter"},
    {SubstructureKind::kOrderedFilter, "ordered-filter"},
    {SubstructureKind::kClosedFilter, "closed-filter"},
    {SubstructureKind::kClosedOrderedFilter, "closed-ordered-filter"},
}};

void require_universe(const RawStructure& a, const Subset& s) {
  if (s.universe_size() != a.size()) {
    throw StructureError("subset over a carrier of size " + std::to_string(s.universe_size()) +
                         " used with " + a.name() + " of size " + std::to_string(a.size()));
  }
}

// Bit-parallel fast paths used by enumeration and sweeps.
// Every x -> y with x, y drawn from `from` must land in `s`.
bool closed_into(const RawStructure& a, std::uint64_t from, std::uint64_t s) {
  for (std::uint64_t bx = from; bx; bx &= bx - 1) {
    const auto x = static_cast<Elem>(std::countr_zero(bx));
    for (std::uint64_t by = from; by; by &= by - 1) {
      const auto y = static_cast<Elem>(std::countr_zero(by));
      if (!((s >> a.op(x, y)) & 1U)) return false;
    }
  }
  return true;
}

bool fast_subalgebra(const RawStructure& a, std::uint64_t s) { return closed_into(a, s, s); }

bool fast_ordered_subalgebra(const RawStructure& a, std::uint64_t s) {
  return closed_into(a, s & a.order_row(a.unit()), s);
}

bool fast_filter(const RawStructure& a, std::uint64_t s) {
  if (!((s >> a.unit()) & 1U)) return false;
  const auto n = static_cast<Elem>(a.size());
  for (std::uint64_t bx = s; bx; bx &= bx - 1) {
    const auto x = static_cast<Elem>(std::countr_zero(bx));
    for (Elem y = 0; y < n; ++y) {
      if (((s >> a.op(x, y)) & 1U) && !((s >> y) & 1U)) return false;
    }
  }
  return true;
}

bool fast_ordered_filter(const RawStructure& a, std::uint64_t s) {
  if (!((s >> a.unit()) & 1U)) return false;
  const auto n = static_cast<Elem>(a.size());
  for (std::uint64_t bx = s; bx; bx &= bx - 1) {
    const auto x = static_cast<Elem>(std::countr_zero(bx));
    for (Elem y = 0; y < n; ++y) {
      if (a.in_cone(a.op(x, y)) && !((s >> y) & 1U)) return false;
    }
  }
  return true;
}

}  // namespace

std::string kind_id(SubstructureKind k) {
  for (const auto& [kind, name] : kKindNames) {
    if (kind == k) return std::string(name);
  }
  return "unknown";
}

std::optional<SubstructureKind> parse_kind(std::string_view id) {
  for (const auto& [kind, name] : kKindNames) {
    if (name == id) return kind;
  }
  return std::nullopt;
}

CheckReport is_subalgebra(const RawStructure& a, const Subset& s, const CheckOptions& opts) {
  require_universe(a, s);
  CheckReport r{"subalgebra"};
  for (Elem x : s.members())
    for (Elem y : s.members())
      if (!s.contains(a.op(x, y))) r.add(opts.witness_cap, {x, y});
  return r;
}

CheckReport is_ordered_subalgebra(const RawStructure& a, const Subset& s,
                                  const CheckOptions& opts) {
  require_universe(a, s);
  CheckReport r{"ordered-subalgebra"};
  for (Elem x : s.members()) {
    if (!a.in_cone(x)) continue;
    for (Elem y : s.members()) {
      if (a.in_cone(y) && !s.contains(a.op(x, y))) r.add(opts.witness_cap, {x, y});
    }
  }
  return r;
}

CheckReport is_filter(const RawStructure& a, const Subset& s, const CheckOptions& opts) {
  require_universe(a, s);
  CheckReport r{"filter"};
  if (!s.contains(a.unit())) r.add(opts.witness_cap, {a.unit()}, "unit");
  const auto n = static_cast<Elem>(a.size());
  for (Elem x : s.members())
    for (Elem y = 0; y < n; ++y)
      if (s.contains(a.op(x, y)) && !s.contains(y)) r.add(opts.witness_cap, {x, y}, "mp");
  return r;
}

CheckReport is_ordered_filter(const RawStructure& a, const Subset& s, const CheckOptions& opts) {
  require_universe(a, s);
  CheckReport r{"ordered-filter"};
  if (!s.contains(a.unit())) r.add(opts.witness_cap, {a.unit()}, "unit");
  const auto n = static_cast<Elem>(a.size());
  for (Elem x : s.members())
    for (Elem y = 0; y < n; ++y)
      if (a.in_cone(a.op(x, y)) && !s.contains(y)) r.add(opts.witness_cap, {x, y}, "od");
  return r;
}

CheckReport satisfies_cone_condition(const RawStructure& a, const Subset& s,
                                     const CheckOptions& opts) {
  require_universe(a, s);
  CheckReport r{"cone-condition"};
  for (Elem x : s.members())
    if (!a.in_cone(x)) r.add(opts.witness_cap, {x});
  return r;
}

CheckReport is_closed(const RawStructure& a, const Subset& s, FilterKind kind,
                      const CheckOptions& opts) {
  const bool ordered = kind == FilterKind::kOrderedFilter;
  CheckReport base = ordered ? is_ordered_filter(a, s, opts) : is_filter(a, s, opts);
  if (!base.holds) {
    std::string msg = "not " + std::string(ordered ? "an ordered filter" : "a filter") + ":";
    for (const auto& w : base.witnesses) {
      msg += " " + w.clause + "(";
      for (std::size_t i = 0; i < w.elems.size(); ++i) {
        msg += (i ? "," : "") + a.label(w.elems[i]);
      }
      msg += ")";
    }
    throw PreconditionError(msg);
  }
  CheckReport sub = ordered ? is_ordered_subalgebra(a, s, opts) : is_subalgebra(a, s, opts);
  sub.law = ordered ? "closed-ordered-filter" : "closed-filter";
  return sub;
}

bool satisfies(const RawStructure& a, const Subset& s, SubstructureKind kind) {
  require_universe(a, s);
  const std::uint64_t b = s.bits();
  switch (kind) {
    case SubstructureKind::kSubalgebra:
      return fast_subalgebra(a, b);
    case SubstructureKind::kOrderedSubalgebra:
      return fast_ordered_subalgebra(a, b);
    case SubstructureKind::kFilter:
      return fast_filter(a, b);
    case SubstructureKind::kOrderedFilter:
      return fast_ordered_filter(a, b);
    case SubstructureKind::kClosedFilter:
      return fast_filter(a, b) && fast_subalgebra(a, b);
    case SubstructureKind::kClosedOrderedFilter:
      return fast_ordered_filter(a, b) && fast_ordered_subalgebra(a, b);
  }
  return false;
}

CheckReport check_kind(const RawStructure& a, const Subset& s, SubstructureKind kind,
                       const CheckOptions& opts) {
  switch (kind) {
    case SubstructureKind::kSubalgebra:
      return is_subalgebra(a, s, opts);
    case SubstructureKind::kOrderedSubalgebra:
      return is_ordered_subalgebra(a, s, opts);
    case SubstructureKind::kFilter:
      return is_filter(a, s, opts);
    case SubstructureKind::kOrderedFilter:
      return is_ordered_filter(a, s, opts);
    case SubstructureKind::kClosedFilter:
    case SubstructureKind::kClosedOrderedFilter: {
      const bool ordered = kind == SubstructureKind::kClosedOrderedFilter;
      CheckReport f = ordered ? is_ordered_filter(a, s, opts) : is_filter(a, s, opts);
      CheckReport g = ordered ? is_ordered_subalgebra(a, s, opts) : is_subalgebra(a, s, opts);
      CheckReport r{kind_id(kind)};
      for (auto* part : {&f, &g}) {
        for (auto& w : part->witnesses) {
          r.add(opts.witness_cap, w.elems, w.clause.empty() ? part->law : w.clause);
        }
      }
      return r;
    }
  }
  return {};
}

std::vector<Subset> enumerate_substructures(const RawStructure& a, SubstructureKind kind,
                                            std::size_t max_carrier) {
  const std::size_t n = a.size();
  if (n > max_carrier || n >= 63) {
    throw BudgetError("subset enumeration over " + std::to_string(n) +
                      " elements exceeds the budget of " + std::to_string(max_carrier));
  }
  std::vector<Subset> out;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t b = 0; b < count; ++b) {
    Subset s(n, b);
    if (satisfies(a, s, kind)) out.push_back(s);
  }
  return out;
}

}  // namespace obci
