#include <doctest.h>

#include "obci/enumerate.hpp"
#include "obci/morphisms.hpp"
#include "obci/products.hpp"
#include "support.hpp"

using namespace obci;
using testing::alg;
using testing::el;
using testing::set;

TEST_CASE("direct product of the fixture pair") {
  const auto x = alg("eqe161-x");
  const auto y = alg("eqe161-y");
  const ProductResult r = direct_product(x, y);
  const RawStructure& p = *r.product.combined;
  CHECK(p.size() == 6);
  CHECK(p.unit() == r.product.encode(x->unit(), y->unit()));
  CHECK(p.label(r.product.encode(el(*x, "y"), el(*y, "a"))) == "(y,a)");
  CHECK(r.validation.ok());
  CHECK(check_componentwise(r.product).holds);
}

TEST_CASE("product with the one-element algebra copies the other factor") {
  const auto t = alg("trivial");
  const auto a = alg("eqvo2h-x");
  const ProductAlgebra p = make_product(t, a);
  const RawStructure& c = *p.combined;
  REQUIRE(c.size() == a->size());
  for (Elem i = 0; i < a->size(); ++i) {
    for (Elem j = 0; j < a->size(); ++j) {
      CHECK(c.op(i, j) == a->op(i, j));
      CHECK(c.leq(i, j) == a->leq(i, j));
    }
  }
}

TEST_CASE("product size budget") {
  CHECK_THROWS_AS(direct_product(alg("eqvo2h-x"), alg("eqvo2h-y"), 15), BudgetError);
}

TEST_CASE("pair maps") {
  const auto x = alg("eqe161-x");
  SUBCASE("identity with an O-homomorphism") {
    const Mapping pm = pair_map(Mapping::identity(x), fixtures::map("eqe161"));
    CHECK(is_ohomomorphism(pm));
  }
  SUBCASE("a non-homomorphic factor breaks the operation law at ((d,e),(e,e))") {
    const Mapping f1 = fixtures::map("eqvo2h");
    const Mapping f2 = fixtures::map("eqe161");
    const ProductAlgebra px = make_product(f1.source_ptr(), f2.source_ptr());
    const ProductAlgebra py = make_product(f1.target_ptr(), f2.target_ptr());
    const Mapping pm = pair_map(px, py, f1, f2);
    const MorphismClass c = classify(pm, {kExhaustive});
    REQUIRE_FALSE(c.is_hom);
    const Elem p = px.encode(el(f1.source(), "d"), el(f2.source(), "e"));
    const Elem q = px.encode(el(f1.source(), "e"), el(f2.source(), "e"));
    const RawStructure& cy = *py.combined;
    CHECK(cy.label(pm(px.combined->op(p, q))) == "(1/3,e)");
    CHECK(cy.label(cy.op(pm(p), pm(q))) == "(2/3,e)");
  }
  SUBCASE("the printed Knof self-map breaks the order law") {
    const Mapping pm = pair_map(fixtures::map("knof-self"), fixtures::map("eqe161"));
    CHECK_FALSE(classify(pm).is_omap);
  }
  SUBCASE("mismatched factors are rejected") {
    const Mapping f = fixtures::map("eqe161");
    const ProductAlgebra wrong = make_product(x, x);
    CHECK_THROWS_AS(pair_map(wrong, wrong, f, f), StructureError);
  }
}

TEST_CASE("direct product kernel") {
  const Mapping f1 = fixtures::map("eqvo2h");
  const Mapping f2 = fixtures::map("eqe161");
  const ProductKernel k = direct_product_kernel(f1, f2);
  CHECK(k.set == cartesian(set(f1.source(), "1,e"), set(f2.source(), "e,x")));
  CHECK(k.equivalence.holds);
  CHECK(k.set == kernel(pair_map(f1, f2)));

  const auto x = alg("eqe161-x");
  const Mapping c = Mapping::constant_to_unit(x, x);
  CHECK(direct_product_kernel(c, c).set == Subset::full(9));

  const Mapping ks = fixtures::map("knof-self");
  CHECK(direct_product_kernel(ks, f2).set == cartesian(kernel(ks), kernel(f2)));
}

TEST_CASE("projection kernels") {
  const auto a = alg("eqvo2h-x");
  const auto x = alg("eqe161-x");
  const Subset k1 = set(*a, "1,e");
  const Subset k2 = set(*x, "e");
  CHECK(projection_kernels(cartesian(k1, k2), 4, 3) == std::pair{k1, k2});
  CHECK(projection_kernels(Subset::full(12), 4, 3) ==
        std::pair{Subset::full(4), Subset::full(3)});
  CHECK(projection_kernels(Subset::of(12, {0}), 4, 3) ==
        std::pair{Subset::of(4, {0}), Subset::of(3, {0})});
  CHECK_THROWS_AS(projection_kernels(Subset::of(12, {0, 4}), 4, 3), ShapeError);
}

TEST_CASE("K-sets") {
  const Mapping f1 = fixtures::map("eqvo2h");
  const Mapping f2 = fixtures::map("eqe161");
  const KSets k = k_upper_sets(kernel(f1), kernel(f2), f1, f2);
  CHECK(k.equal);
  CHECK(k.by_first_unit == cartesian(kernel(f1), kernel(f2)));
  const KSets empty = k_upper_sets(f1.source().empty_set(), f2.source().empty_set(), f1, f2);
  CHECK(empty.equal);
  CHECK(empty.by_first_unit.is_empty());
}

TEST_CASE("property: product laws over size-2 O-homomorphisms") {
  std::vector<StructurePtr> algs;
  for (std::size_t n = 1; n <= 2; ++n) {
    for (const auto& a : enumerate_obci(n)) algs.push_back(a.shared());
  }
  std::vector<Mapping> ohoms;
  for (const auto& x : algs) {
    for (const auto& y : algs) {
      for (auto& m : enumerate_maps(x, y, {MapClass::kOHom})) ohoms.push_back(m);
    }
  }
  for (const Mapping& f1 : ohoms) {
    for (const Mapping& f2 : ohoms) {
      const ProductAlgebra px = make_product(f1.source_ptr(), f2.source_ptr());
      const ProductAlgebra py = make_product(f1.target_ptr(), f2.target_ptr());
      CHECK(check_componentwise(px).holds);
      const Mapping pm = pair_map(px, py, f1, f2);
      CHECK(is_ohomomorphism(pm));
      const ProductKernel k = direct_product_kernel(f1, f2);
      CHECK(kernel(pm) == k.set);
      CHECK(projection_kernels(k.set, f1.source().size(), f2.source().size()) ==
            std::pair{kernel(f1), kernel(f2)});
      CHECK(k_upper_sets(kernel(f1), kernel(f2), f1, f2).equal);
    }
  }
}
