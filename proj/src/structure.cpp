#include "obci/structure.hpp"

#include <algorithm>
#include <unordered_set>
#include <utility>

namespace obci {

namespace {

std::string entry_name(std::size_t n, std::size_t flat) {
  return "[" + std::to_string(flat / n) + "][" + std::to_string(flat % n) + "]";
}

}  // namespace

RawStructure RawStructure::create(std::string name, std::vector<std::string> labels,
                                  std::vector<Elem> op, Elem unit,
                                  std::vector<std::uint8_t> order) {
  const std::size_t n = labels.size();
  if (n == 0) throw StructureError(name + ": empty carrier");
  if (n > kMaxCarrier) {
    throw StructureError(name + ": carrier of size " + std::to_string(n) + " exceeds " +
                         std::to_string(kMaxCarrier));
  }
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    if (l.empty()) throw StructureError(name + ": empty label");
    if (!seen.insert(l).second) throw StructureError(name + ": duplicate label '" + l + "'");
  }
  if (op.size() != n * n) {
    throw StructureError(name + ": operation table has " + std::to_string(op.size()) +
                         " entries, expected " + std::to_string(n * n));
  }
  for (std::size_t k = 0; k < op.size(); ++k) {
    if (op[k] >= n) {
      throw StructureError(name + ": operation entry " + entry_name(n, k) + " = " +
                           std::to_string(op[k]) + " is not a carrier index");
    }
  }
  if (unit >= n) throw StructureError(name + ": unit index out of range");
  if (order.size() != n * n) {
    throw StructureError(name + ": order matrix has " + std::to_string(order.size()) +
                         " entries, expected " + std::to_string(n * n));
  }

  RawStructure s;
  s.name_ = std::move(name);
  s.n_ = n;
  s.labels_ = std::move(labels);
  s.op_ = std::move(op);
  s.unit_ = unit;
  s.order_rows_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (order[i * n + j] != 0) s.order_rows_[i] |= std::uint64_t{1} << j;
    }
  }
  return s;
}

RawStructure RawStructure::from_tables(std::string name, std::size_t n, std::vector<Elem> op,
                                       Elem unit, std::vector<std::uint8_t> order) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return create(std::move(name), std::move(labels), std::move(op), unit, std::move(order));
}

std::vector<std::uint8_t> RawStructure::order_matrix() const {
  std::vector<std::uint8_t> m(n_ * n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) m[i * n_ + j] = (order_rows_[i] >> j) & 1U;
  }
  return m;
}

std::optional<Elem> RawStructure::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < n_; ++i) {
    if (labels_[i] == label) return static_cast<Elem>(i);
  }
  return std::nullopt;
}

bool RawStructure::same_structure(const RawStructure& o) const {
  return n_ == o.n_ && unit_ == o.unit_ && op_ == o.op_ && order_rows_ == o.order_rows_ &&
         labels_ == o.labels_;
}

RawStructure RawStructure::renamed(std::string name) const {
  RawStructure copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

void CheckReport::add(std::size_t cap, std::vector<Elem> elems, std::string clause) {
  holds = false;
  ++violations;
  if (witnesses.size() < cap) witnesses.push_back({std::move(clause), std::move(elems)});
}

std::string axiom_id(Axiom a) { return "OBCI-" + std::to_string(static_cast<int>(a)); }

std::optional<Axiom> parse_axiom(std::string_view id) {
  for (Axiom a : kAllAxioms) {
    if (axiom_id(a) == id) return a;
  }
  return std::nullopt;
}

CheckReport check_axiom(const RawStructure& s, Axiom axiom, const CheckOptions& opts) {
  CheckReport r{axiom_id(axiom)};
  const auto n = static_cast<Elem>(s.size());
  const std::size_t cap = opts.witness_cap;
  auto pos = [&](Elem t) { return s.in_cone(t); };

  switch (axiom) {
    case Axiom::kObci1:
      for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
          for (Elem z = 0; z < n; ++z)
            if (!pos(s.op(s.op(x, y), s.op(s.op(y, z), s.op(x, z))))) r.add(cap, {x, y, z});
      break;
    case Axiom::kObci2:
      for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
          if (!pos(s.op(x, s.op(s.op(x, y), y)))) r.add(cap, {x, y});
      break;
    case Axiom::kObci3:
      for (Elem x = 0; x < n; ++x)
        if (!pos(s.op(x, x))) r.add(cap, {x});
      break;
    case Axiom::kObci4:
      for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
          if (x != y && pos(s.op(x, y)) && pos(s.op(y, x))) r.add(cap, {x, y});
      break;
    case Axiom::kObci5:
      for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
          if (s.leq(x, y) != pos(s.op(x, y))) r.add(cap, {x, y});
      break;
    case Axiom::kObci6:
      for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
          if (pos(x) && s.leq(x, y) && !pos(y)) r.add(cap, {x, y});
      break;
  }
  return r;
}

namespace detail {

ValidatedAlgebra certify(StructurePtr s) {
  const Subset cone = s->cone();
  return ValidatedAlgebra(std::move(s), cone);
}

}  // namespace detail

const CheckReport& ValidationResult::failure() const {
  for (const auto& r : reports) {
    if (!r.holds) return r;
  }
  throw PreconditionError("validation succeeded; there is no failing report");
}

ValidationResult validate(StructurePtr s, const CheckOptions& opts, bool all_reports) {
  ValidationResult result;
  bool ok = true;
  for (Axiom a : kAllAxioms) {
    result.reports.push_back(check_axiom(*s, a, opts));
    if (!result.reports.back().holds) {
      ok = false;
      if (!all_reports) break;
    }
  }
  if (ok) {
    // A consequence of the axioms; a failure here means a checker bug.
    for (auto& r : check_partial_order(*s, opts)) {
      if (!r.holds) {
        result.reports.push_back(std::move(r));
        return result;
      }
    }
    result.algebra = detail::certify(std::move(s));
  }
  return result;
}

ValidationResult validate(const RawStructure& s, const CheckOptions& opts, bool all_reports) {
  return validate(std::make_shared<const RawStructure>(s), opts, all_reports);
}

CheckReport check_derived_identity(const RawStructure& s, std::string_view id,
                                   const CheckOptions& opts) {
  CheckReport r{std::string(id)};
  const auto n = static_cast<Elem>(s.size());
  const Elem e = s.unit();
  const std::size_t cap = opts.witness_cap;
  auto pos = [&](Elem t) { return s.in_cone(t); };
  auto op = [&](Elem a, Elem b) { return s.op(a, b); };

  if (id == "a1") {
    for (Elem x = 0; x < n; ++x)
      if (op(e, x) != x) r.add(cap, {x});
    return r;
  }
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      for (Elem z = 0; z < n; ++z) {
        bool ok = true;
        if (id == "a2") {
          ok = op(z, op(y, x)) == op(y, op(z, x));
        } else if (id == "a3") {
          ok = !pos(op(x, y)) || pos(op(op(y, z), op(x, z)));
        } else if (id == "a4") {
          ok = !(pos(op(x, y)) && pos(op(y, z))) || pos(op(x, z));
        } else if (id == "b4") {
          ok = pos(op(op(y, z), op(op(x, y), op(x, z))));
        } else if (id == "b5") {
          ok = !pos(op(x, y)) || pos(op(op(z, x), op(z, y)));
        } else {
          throw PreconditionError("unknown identity '" + std::string(id) + "'");
        }
        if (!ok) r.add(cap, {x, y, z});
      }
    }
  }
  return r;
}

CheckReport check_derived_identities(const RawStructure& s, const CheckOptions& opts) {
  CheckReport all{"P-identities"};
  for (auto id : kDerivedIdentities) {
    CheckReport r = check_derived_identity(s, id, opts);
    for (auto& w : r.witnesses) all.add(opts.witness_cap, std::move(w.elems), std::string(id));
    // Count violations beyond the cap too.
    if (r.violations > r.witnesses.size()) {
      all.violations += r.violations - r.witnesses.size();
      all.holds = false;
    }
  }
  return all;
}

CheckReport check_derived_identities(const ValidatedAlgebra& a, const CheckOptions& opts) {
  return check_derived_identities(a.structure(), opts);
}

std::vector<std::uint8_t> order_from_cone(std::span<const Elem> op, std::size_t n, Elem unit,
                                          const Subset& cone) {
  if (op.size() != n * n) throw StructureError("operation table size mismatch");
  if (unit >= n) throw StructureError("unit index out of range");
  if (cone.universe_size() != n) throw StructureError("cone universe mismatch");
  std::vector<std::uint8_t> order(n * n, 0);
  for (std::size_t k = 0; k < n * n; ++k) order[k] = cone.contains(op[k]) ? 1 : 0;
  return order;
}

std::vector<std::uint8_t> reflexive_transitive_closure(std::span<const std::uint8_t> order,
                                                       std::size_t n) {
  if (order.size() != n * n) throw StructureError("order matrix size mismatch");
  std::vector<std::uint8_t> c(order.begin(), order.end());
  for (std::size_t i = 0; i < n; ++i) c[i * n + i] = 1;
  // Warshall
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (c[i * n + k] != 0)
        for (std::size_t j = 0; j < n; ++j)
          if (c[k * n + j] != 0) c[i * n + j] = 1;
  return c;
}

std::vector<CheckReport> check_partial_order(const RawStructure& s, const CheckOptions& opts) {
  const auto n = static_cast<Elem>(s.size());
  const std::size_t cap = opts.witness_cap;
  CheckReport refl{"reflexive"}, anti{"antisymmetric"}, trans{"transitive"};
  for (Elem x = 0; x < n; ++x) {
    if (!s.leq(x, x)) refl.add(cap, {x});
    for (Elem y = 0; y < n; ++y) {
      if (x != y && s.leq(x, y) && s.leq(y, x)) anti.add(cap, {x, y});
      for (Elem z = 0; z < n; ++z) {
        if (s.leq(x, y) && s.leq(y, z) && !s.leq(x, z)) trans.add(cap, {x, y, z});
      }
    }
  }
  return {refl, anti, trans};
}

}  // namespace obci
