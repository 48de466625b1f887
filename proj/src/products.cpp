#include "obci/products.hpp"

#include <string>
#include <vector>

namespace obci {

ProductAlgebra make_product(const StructurePtr& x1, const StructurePtr& x2) {
  const std::size_t n1 = x1->size(), n2 = x2->size();
  const std::size_t n = n1 * n2;
  if (n > kMaxCarrier) {
    throw BudgetError("product of sizes " + std::to_string(n1) + " and " + std::to_string(n2) +
                      " exceeds the carrier limit " + std::to_string(kMaxCarrier));
  }
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t a = 0; a < n1; ++a)
    for (std::size_t b = 0; b < n2; ++b)
      labels.push_back("(" + x1->label(static_cast<Elem>(a)) + "," +
                       x2->label(static_cast<Elem>(b)) + ")");

  std::vector<Elem> op(n * n);
  std::vector<std::uint8_t> order(n * n);
  for (std::size_t p = 0; p < n; ++p) {
    const auto a1 = static_cast<Elem>(p / n2), a2 = static_cast<Elem>(p % n2);
    for (std::size_t q = 0; q < n; ++q) {
      const auto b1 = static_cast<Elem>(q / n2), b2 = static_cast<Elem>(q % n2);
      op[p * n + q] = static_cast<Elem>(x1->op(a1, b1) * n2 + x2->op(a2, b2));
      order[p * n + q] = (x1->leq(a1, b1) && x2->leq(a2, b2)) ? 1 : 0;
    }
  }
  const auto unit = static_cast<Elem>(x1->unit() * n2 + x2->unit());
  auto combined = std::make_shared<const RawStructure>(RawStructure::create(
      x1->name() + "x" + x2->name(), std::move(labels), std::move(op), unit, std::move(order)));
  return {x1, x2, std::move(combined)};
}

ProductResult direct_product(const StructurePtr& x1, const StructurePtr& x2,
                             std::size_t max_size) {
  if (x1->size() * x2->size() > max_size) {
    throw BudgetError("product size " + std::to_string(x1->size() * x2->size()) +
                      " exceeds the budget " + std::to_string(max_size));
  }
  ProductAlgebra p = make_product(x1, x2);
  ValidationResult v = validate(p.combined, {}, true);
  return {std::move(p), std::move(v)};
}

CheckReport check_componentwise(const ProductAlgebra& p, const CheckOptions& opts) {
  CheckReport r{"componentwise"};
  const RawStructure& c = *p.combined;
  const auto n = static_cast<Elem>(c.size());
  if (c.unit() != p.encode(p.left->unit(), p.right->unit())) r.add(opts.witness_cap, {}, "unit");
  for (Elem u = 0; u < n; ++u) {
    const auto [a1, a2] = p.decode(u);
    for (Elem v = 0; v < n; ++v) {
      const auto [b1, b2] = p.decode(v);
      if (c.op(u, v) != p.encode(p.left->op(a1, b1), p.right->op(a2, b2))) {
        r.add(opts.witness_cap, {u, v}, "op");
      }
      if (c.leq(u, v) != (p.left->leq(a1, b1) && p.right->leq(a2, b2))) {
        r.add(opts.witness_cap, {u, v}, "order");
      }
    }
  }
  return r;
}

namespace {

bool factors_match(const StructurePtr& a, const StructurePtr& b) {
  return a == b || (a->same_structure(*b) && a->name() == b->name());
}

}  // namespace

Mapping pair_map(const ProductAlgebra& source, const ProductAlgebra& target, const Mapping& f1,
                 const Mapping& f2) {
  if (!factors_match(source.left, f1.source_ptr()) ||
      !factors_match(source.right, f2.source_ptr()) ||
      !factors_match(target.left, f1.target_ptr()) ||
      !factors_match(target.right, f2.target_ptr())) {
    throw StructureError("pair map: product factors do not match the component maps");
  }
  const std::size_t n = source.combined->size();
  std::vector<Elem> table(n);
  for (std::size_t p = 0; p < n; ++p) {
    const auto [a1, a2] = source.decode(static_cast<Elem>(p));
    table[p] = target.encode(f1(a1), f2(a2));
  }
  std::string name = f1.name().empty() && f2.name().empty()
                         ? std::string{}
                         : "(" + f1.name() + "," + f2.name() + ")";
  return {source.combined, target.combined, std::move(table), std::move(name)};
}

Mapping pair_map(const Mapping& f1, const Mapping& f2) {
  const ProductAlgebra src = make_product(f1.source_ptr(), f2.source_ptr());
  const ProductAlgebra dst = make_product(f1.target_ptr(), f2.target_ptr());
  return pair_map(src, dst, f1, f2);
}

Subset cartesian(const Subset& a, const Subset& b) {
  const std::size_t n2 = b.universe_size();
  Subset out = Subset::empty(a.universe_size() * n2);
  for (Elem x1 : a.members())
    for (Elem x2 : b.members()) out.insert(x1 * n2 + x2);
  return out;
}

ProductKernel direct_product_kernel(const Mapping& f1, const Mapping& f2,
                                    const CheckOptions& opts) {
  const Subset k1 = kernel(f1), k2 = kernel(f2);
  ProductKernel out{cartesian(k1, k2), CheckReport{"product-kernel"}};
  const ProductAlgebra dst = make_product(f1.target_ptr(), f2.target_ptr());
  const RawStructure& y = *dst.combined;
  const auto n1 = static_cast<Elem>(f1.source().size());
  const auto n2 = static_cast<Elem>(f2.source().size());
  for (Elem x1 = 0; x1 < n1; ++x1) {
    for (Elem x2 = 0; x2 < n2; ++x2) {
      const bool in_rect = k1.contains(x1) && k2.contains(x2);
      const bool above_unit = y.leq(y.unit(), dst.encode(f1(x1), f2(x2)));
      if (in_rect != above_unit) out.equivalence.add(opts.witness_cap, {x1, x2});
    }
  }
  return out;
}

std::pair<Subset, Subset> projection_kernels(const Subset& k, std::size_t left_size,
                                             std::size_t right_size) {
  if (k.universe_size() != left_size * right_size) {
    throw StructureError("projection: set is not over a " + std::to_string(left_size) + "x" +
                         std::to_string(right_size) + " product");
  }
  Subset left = Subset::empty(left_size), right = Subset::empty(right_size);
  for (Elem p : k.members()) {
    left.insert(p / right_size);
    right.insert(p % right_size);
  }
  if (cartesian(left, right) != k) {
    throw ShapeError("projection: set is not a Cartesian product of its projections");
  }
  return {left, right};
}

KSets k_upper_sets(const Subset& k1, const Subset& k2, const Mapping& f1, const Mapping& f2) {
  if (k1.universe_size() != f1.source().size() || k2.universe_size() != f2.source().size()) {
    throw StructureError("K-sets: subsets are not over the maps' sources");
  }
  const std::size_t n1 = k1.universe_size(), n2 = k2.universe_size();
  KSets out{Subset::empty(n1 * n2), Subset::empty(n1 * n2)};
  for (std::size_t x1 = 0; x1 < n1; ++x1) {
    for (std::size_t x2 = 0; x2 < n2; ++x2) {
      const auto a = static_cast<Elem>(x1), b = static_cast<Elem>(x2);
      if (k1.contains(a) && f2.target().in_cone(f2(b))) out.by_second_unit.insert(x1 * n2 + x2);
      if (f1.target().in_cone(f1(a)) && k2.contains(b)) out.by_first_unit.insert(x1 * n2 + x2);
    }
  }
  out.equal = out.by_second_unit == out.by_first_unit;
  return out;
}

}  // namespace obci
