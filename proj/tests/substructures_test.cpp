#include <doctest.h>

#include "obci/enumerate.hpp"
#include "obci/substructures.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace obci;
using testing::alg;
using testing::el;
using testing::set;

namespace {

constexpr SubstructureKind kAllKinds[] = {
    SubstructureKind::kSubalgebra,   SubstructureKind::kOrderedSubalgebra,
    SubstructureKind::kFilter,       SubstructureKind::kOrderedFilter,
    SubstructureKind::kClosedFilter, SubstructureKind::kClosedOrderedFilter,
};

bool oracle_kind(const oracle::Alg& a, oracle::Set s, SubstructureKind k) {
  switch (k) {
    case SubstructureKind::kSubalgebra:
      return oracle::subalgebra(a, s);
    case SubstructureKind::kOrderedSubalgebra:
      return oracle::ordered_subalgebra(a, s);
    case SubstructureKind::kFilter:
      return oracle::filter(a, s);
    case SubstructureKind::kOrderedFilter:
      return oracle::ordered_filter(a, s);
    case SubstructureKind::kClosedFilter:
      return oracle::filter(a, s) && oracle::subalgebra(a, s);
    case SubstructureKind::kClosedOrderedFilter:
      return oracle::ordered_filter(a, s) && oracle::ordered_subalgebra(a, s);
  }
  return false;
}

std::vector<StructurePtr> probe_structures() {
  std::vector<StructurePtr> out;
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const auto& a : enumerate_obci(n)) out.push_back(a.shared());
  }
  for (const auto& f : fixtures::algebras()) out.push_back(fixtures::algebra(f.name));
  return out;
}

}  // namespace

TEST_CASE("subalgebra") {
  const auto k = alg("knof");
  const auto x = alg("eqe161-x");
  const CheckReport r = is_subalgebra(*k, set(*k, "1,1/2"), {kExhaustive});
  REQUIRE_FALSE(r.holds);
  CHECK(r.witnesses.front().elems == std::vector<Elem>{el(*k, "1"), el(*k, "1/2")});
  CHECK(is_subalgebra(*x, x->full_set()).holds);
  CHECK(is_subalgebra(*x, set(*x, "e")).holds);
  CHECK(is_subalgebra(*x, x->empty_set()).holds);
}

TEST_CASE("ordered subalgebra") {
  const auto k = alg("knof");
  const auto x = alg("eqe161-x");
  // Only 1/2 lies in the stored cone {1/2, 0}, and 1/2 -> 1/2 = 1/2.
  CHECK(is_ordered_subalgebra(*k, set(*k, "1,1/2"), {kExhaustive}).holds);
  const CheckReport r = is_ordered_subalgebra(*x, set(*x, "x,y"), {kExhaustive});
  CHECK(r.holds);
  const auto a = alg("eqvo2h-x");
  const CheckReport s = is_ordered_subalgebra(*a, set(*a, "1,e"), {kExhaustive});
  REQUIRE_FALSE(s.holds);
  CHECK(s.witnesses.front().elems == std::vector<Elem>{el(*a, "1"), el(*a, "e")});
  for (const auto& w : s.witnesses) {
    CHECK(a->in_cone(w.elems[0]));
    CHECK(a->in_cone(w.elems[1]));
  }
  CHECK(is_ordered_subalgebra(*k, k->full_set()).holds);
  CHECK(is_ordered_subalgebra(*x, set(*x, "e,y")).holds);
}

TEST_CASE("filter") {
  const auto x = alg("eqe161-x");
  CHECK(is_filter(*x, set(*x, "e")).holds);
  CHECK(is_filter(*x, set(*x, "e,x")).holds);
  const CheckReport r = is_filter(*x, set(*x, "x,y"));
  REQUIRE_FALSE(r.holds);
  CHECK(r.witnesses.front().clause == "unit");
  CHECK_FALSE(is_filter(*x, x->empty_set()).holds);
}

TEST_CASE("ordered filter") {
  const auto x = alg("eqe161-x");
  CHECK(is_ordered_filter(*x, set(*x, "e,y")).holds);
  CHECK(is_ordered_filter(*x, x->full_set()).holds);
  const CheckReport r = is_ordered_filter(*x, set(*x, "x"));
  REQUIRE_FALSE(r.holds);
  CHECK(r.witnesses.front().clause == "unit");
}

TEST_CASE("cone condition") {
  const auto x = alg("eqe161-x");
  const auto y = alg("eqvo2h-y");
  CHECK(satisfies_cone_condition(*x, set(*x, "e")).holds);
  const CheckReport r = satisfies_cone_condition(*x, set(*x, "e,x"));
  REQUIRE_FALSE(r.holds);
  CHECK(r.witnesses.front().elems == std::vector<Elem>{el(*x, "x")});
  CHECK(satisfies_cone_condition(*y, set(*y, "2/3,1")).holds);
}

TEST_CASE("closedness") {
  const auto x = alg("eqe161-x");
  CHECK(is_closed(*x, set(*x, "e"), FilterKind::kFilter).holds);
  CHECK(is_closed(*x, x->full_set(), FilterKind::kFilter).holds);
  CHECK(is_closed(*x, set(*x, "e,x"), FilterKind::kFilter).holds);
  CHECK_THROWS_AS(is_closed(*x, set(*x, "x"), FilterKind::kFilter), PreconditionError);
  CHECK_THROWS_AS(is_closed(*x, set(*x, "x"), FilterKind::kOrderedFilter), PreconditionError);
}

TEST_CASE("enumerate_substructures") {
  const auto x = alg("eqe161-x");
  const std::vector<Subset> ordered = {set(*x, "e"), set(*x, "e,x"), set(*x, "e,y"),
                                       x->full_set()};
  CHECK(enumerate_substructures(*x, SubstructureKind::kOrderedFilter) == ordered);
  CHECK(enumerate_substructures(*alg("trivial"), SubstructureKind::kFilter) ==
        std::vector<Subset>{Subset::full(1)});
  std::vector<Subset> filters;
  for (std::uint64_t b = 0; b < 8; ++b) {
    if (oracle::filter(oracle::from(*x), b)) filters.emplace_back(3, b);
  }
  CHECK(enumerate_substructures(*x, SubstructureKind::kFilter) == filters);
}

TEST_CASE("enumeration budget") {
  std::vector<Elem> op(17 * 17, 0);
  std::vector<std::uint8_t> rel(17 * 17, 1);
  const RawStructure big = RawStructure::from_tables("big", 17, op, 0, rel);
  CHECK_THROWS_AS(enumerate_substructures(big, SubstructureKind::kFilter), BudgetError);
}

TEST_CASE("kind ids round-trip") {
  for (auto k : kAllKinds) CHECK(parse_kind(kind_id(k)) == k);
  CHECK_FALSE(parse_kind("ideal").has_value());
}

TEST_CASE("universe mismatch is an error") {
  const auto x = alg("eqe161-x");
  CHECK_THROWS_AS(is_filter(*x, Subset::full(2)), StructureError);
}

TEST_CASE("property: predicates agree with the oracle on every subset") {
  for (const StructurePtr& s : probe_structures()) {
    CAPTURE(s->name());
    const oracle::Alg o = oracle::from(*s);
    for (SubstructureKind k : kAllKinds) {
      CAPTURE(kind_id(k));
      std::vector<Subset> expected;
      for (std::uint64_t b = 0; b < (std::uint64_t{1} << s->size()); ++b) {
        const Subset sub(s->size(), b);
        const bool want = oracle_kind(o, b, k);
        const CheckReport r = check_kind(*s, sub, k, {kExhaustive});
        CHECK(r.holds == want);
        CHECK(satisfies(*s, sub, k) == want);
        CHECK(r.holds == r.witnesses.empty());
        if (want) expected.push_back(sub);
      }
      CHECK(enumerate_substructures(*s, k) == expected);
    }
    for (auto k : {SubstructureKind::kSubalgebra, SubstructureKind::kFilter,
                   SubstructureKind::kOrderedFilter}) {
      CHECK(satisfies(*s, s->full_set(), k));
    }
  }
}

TEST_CASE("property: ordered filters inside the cone are filters") {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const auto& a : enumerate_obci(n)) {
      const RawStructure& s = a.structure();
      for (const Subset& f : enumerate_substructures(s, SubstructureKind::kOrderedFilter)) {
        if (satisfies_cone_condition(s, f).holds) CHECK(is_filter(s, f).holds);
      }
    }
  }
}

TEST_CASE("printed subset verdicts are audited") {
  const auto& fx = fixtures::subsets();
  REQUIRE(fx.size() == 2);
  CHECK(fixtures::audit_subset(fx[0]).empty());
  const auto f = fixtures::audit_subset(fx[1]);
  REQUIRE(f.size() == 1);
  CHECK(f[0].line() ==
        "FINDING: knof {1, 1/2} as ordered-subalgebra: asserted fails; computed holds; "
        "witness (1/2,1/2)->1/2");
}
