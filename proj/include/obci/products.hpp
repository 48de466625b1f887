#pragma once

#include <cstddef>
#include <utility>

#include "obci/morphisms.hpp"
#include "obci/structure.hpp"

namespace obci {

/// Raised by projection_kernels on a set that is not a Cartesian product.
class ShapeError : public StructureError {
 public:
  using StructureError::StructureError;
};

/// Componentwise structure on X1 x X2. Pairs are encoded row-major:
/// index(x1, x2) = x1 * |X2| + x2, labelled "(l1,l2)".
struct ProductAlgebra {
  StructurePtr left;
  StructurePtr right;
  StructurePtr combined;

  std::size_t right_size() const { return right->size(); }
  Elem encode(Elem x1, Elem x2) const {
    return static_cast<Elem>(x1 * right->size() + x2);
  }
  std::pair<Elem, Elem> decode(Elem p) const {
    return {static_cast<Elem>(p / right->size()), static_cast<Elem>(p % right->size())};
  }
};

/// Builds the combined structure only (no validation).
ProductAlgebra make_product(const StructurePtr& x1, const StructurePtr& x2);

struct ProductResult {
  ProductAlgebra product;
  /// The combined structure checked against all six axioms.
  ValidationResult validation;
};

/// Builds and eagerly validates X1 x X2. Throws BudgetError when
/// |X1| * |X2| exceeds `max_size`.
ProductResult direct_product(const StructurePtr& x1, const StructurePtr& x2,
                             std::size_t max_size = kMaxCarrier);

/// Rederives every product entry from the factor tables; law
/// "componentwise", witnesses ((x1,x2) as encoded pairs p, q).
CheckReport check_componentwise(const ProductAlgebra& p, const CheckOptions& opts = {});

/// (x1, x2) |-> (f1(x1), f2(x2)) between prebuilt products. Throws
/// StructureError when the products' factors are not the maps' sources and
/// targets.
Mapping pair_map(const ProductAlgebra& source, const ProductAlgebra& target, const Mapping& f1,
                 const Mapping& f2);

/// Convenience overload building both products.
Mapping pair_map(const Mapping& f1, const Mapping& f2);

/// A x B over the product carrier of sizes |A| and |B|.
Subset cartesian(const Subset& a, const Subset& b);

struct ProductKernel {
  Subset set;  // ker(f1) x ker(f2)
  /// Pointwise check of (x1,x2) in ker(f1) x ker(f2) <=> e_Y << f(x1,x2),
  /// law "product-kernel", witnesses (x1, x2).
  CheckReport equivalence;
};

ProductKernel direct_product_kernel(const Mapping& f1, const Mapping& f2,
                                    const CheckOptions& opts = {});

/// Left and right projections of a rectangular set over X1 x X2. Throws
/// ShapeError unless k equals the product of its projections.
std::pair<Subset, Subset> projection_kernels(const Subset& k, std::size_t left_size,
                                             std::size_t right_size);

struct KSets {
  Subset by_second_unit;  // {(x1,x2) : x1 in K1, e_{Y2} <= f2(x2)}
  Subset by_first_unit;   // {(x1,x2) : e_{Y1} <= f1(x1), x2 in K2}
  bool equal = false;
};

KSets k_upper_sets(const Subset& k1, const Subset& k2, const Mapping& f1, const Mapping& f2);

}  // namespace obci
