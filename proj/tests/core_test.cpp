#include <doctest.h>

#include "obci/enumerate.hpp"
#include "obci/structure.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace obci;
using testing::alg;
using testing::el;
using testing::set;

namespace {

std::vector<ValidatedAlgebra> small_universe() {
  std::vector<ValidatedAlgebra> out;
  for (std::size_t n = 1; n <= 3; ++n) {
    for (auto& a : enumerate_obci(n)) out.push_back(a);
  }
  return out;
}

bool violates(const RawStructure& s, Axiom ax, const std::vector<Elem>& w) {
  const auto e = s.unit();
  auto f = [&](Elem a, Elem b) { return s.op(a, b); };
  switch (ax) {
    case Axiom::kObci1:
      return !s.leq(e, f(f(w[0], w[1]), f(f(w[1], w[2]), f(w[0], w[2]))));
    case Axiom::kObci2:
      return !s.leq(e, f(w[0], f(f(w[0], w[1]), w[1])));
    case Axiom::kObci3:
      return !s.leq(e, f(w[0], w[0]));
    case Axiom::kObci4:
      return s.leq(e, f(w[0], w[1])) && s.leq(e, f(w[1], w[0])) && w[0] != w[1];
    case Axiom::kObci5:
      return s.leq(w[0], w[1]) != s.leq(e, f(w[0], w[1]));
    case Axiom::kObci6:
      return s.leq(e, w[0]) && s.leq(w[0], w[1]) && !s.leq(e, w[1]);
  }
  return false;
}

}  // namespace

TEST_CASE("construction rejects malformed tables") {
  CHECK_THROWS_AS(RawStructure::from_tables("bad", 2, {0, 1, 2, 0}, 0, {1, 0, 0, 1}),
                  StructureError);
  CHECK_THROWS_AS(RawStructure::from_tables("bad", 2, {0, 1, 1}, 0, {1, 0, 0, 1}),
                  StructureError);
  CHECK_THROWS_AS(RawStructure::from_tables("bad", 2, {0, 1, 1, 0}, 2, {1, 0, 0, 1}),
                  StructureError);
  CHECK_THROWS_AS(RawStructure::create("bad", {"a", "a"}, {0, 1, 1, 0}, 0, {1, 0, 0, 1}),
                  StructureError);
}

TEST_CASE("OBCI-3 holds on the three-element fixture") {
  const auto x = alg("eqe161-x");
  const CheckReport r = check_axiom(*x, Axiom::kObci3);
  CHECK(r.holds);
  CHECK(r.witnesses.empty());
  CHECK(r.law == "OBCI-3");
}

TEST_CASE("Knof table fails OBCI-5 at (0, 1/2)") {
  const auto k = alg("knof");
  const CheckReport r = check_axiom(*k, Axiom::kObci5, {kExhaustive});
  REQUIRE_FALSE(r.holds);
  const Witness w{"", {el(*k, "0"), el(*k, "1/2")}};
  CHECK(std::find(r.witnesses.begin(), r.witnesses.end(), w) != r.witnesses.end());
  CHECK(r.violations == r.witnesses.size());
}

TEST_CASE("one-element structure satisfies everything") {
  const auto t = alg("trivial");
  for (Axiom a : kAllAxioms) CHECK(check_axiom(*t, a).holds);
  const ValidationResult v = validate(t);
  REQUIRE(v.ok());
  CHECK(v.algebra->cone() == Subset::full(1));
  CHECK(check_derived_identities(*v.algebra).holds);
}

TEST_CASE("validate") {
  SUBCASE("three-element fixture is certified with cone {e}") {
    const auto x = alg("eqe161-x");
    const ValidationResult v = validate(x);
    REQUIRE(v.ok());
    CHECK(v.algebra->cone() == set(*x, "e"));
  }
  SUBCASE("Knof is rejected, first failing axiom named") {
    const ValidationResult v = validate(alg("knof"));
    REQUIRE_FALSE(v.ok());
    CHECK(v.failure().law == "OBCI-1");
    const ValidationResult all = validate(alg("knof"), {}, true);
    REQUIRE(all.reports.size() == 6);
    CHECK_FALSE(all.reports[4].holds);
    CHECK(all.reports[4].law == "OBCI-5");
  }
  SUBCASE("witness cap bounds the list but not the count") {
    const CheckReport r = check_axiom(*alg("knof"), Axiom::kObci5, {1});
    CHECK(r.witnesses.size() == 1);
    CHECK(r.violations > 1);
  }
}

TEST_CASE("derived identities hold on the fixtures") {
  for (const char* name : {"eqe161-x", "eqe161-y", "trivial"}) {
    CAPTURE(name);
    const ValidationResult v = validate(alg(name));
    REQUIRE(v.ok());
    CHECK(check_derived_identities(*v.algebra).holds);
  }
}

TEST_CASE("order_from_cone") {
  SUBCASE("fixture relation is cone-generated") {
    const auto x = alg("eqe161-x");
    const auto rel = order_from_cone(x->op_table(), x->size(), x->unit(), set(*x, "e"));
    CHECK(rel == x->order_matrix());
  }
  SUBCASE("full cone gives the total relation") {
    const auto x = alg("eqvo2h-x");
    const auto rel = order_from_cone(x->op_table(), x->size(), x->unit(), x->full_set());
    CHECK(std::all_of(rel.begin(), rel.end(), [](auto b) { return b != 0; }));
  }
  SUBCASE("Knof cone yields (1/2, 0) but not (0, 1/2)") {
    const auto k = alg("knof");
    const auto rel = order_from_cone(k->op_table(), k->size(), k->unit(), set(*k, "1/2,0"));
    const auto h = el(*k, "1/2");
    const auto z = el(*k, "0");
    CHECK(rel[h * 3 + z] == 1);
    CHECK(rel[z * 3 + h] == 0);
  }
}

TEST_CASE("reflexive_transitive_closure repairs the printed four-element relation") {
  const auto y = alg("eqvo2h-y");
  const auto po = check_partial_order(*y);
  CHECK_FALSE(po[2].holds);
  const auto closed = reflexive_transitive_closure(y->order_matrix(), y->size());
  const auto fixed = RawStructure::create("closed", y->labels(),
                                          {y->op_table().begin(), y->op_table().end()},
                                          y->unit(), closed);
  for (const auto& r : check_partial_order(fixed)) CHECK(r.holds);
}

TEST_CASE("property: validated algebras up to size 3") {
  const auto universe = small_universe();
  REQUIRE(universe.size() == 13);
  for (const ValidatedAlgebra& a : universe) {
    const RawStructure& s = a.structure();
    CAPTURE(s.name());
    CHECK(order_from_cone(s.op_table(), s.size(), s.unit(), a.cone()) == s.order_matrix());
    CHECK(check_derived_identities(a).holds);
    const ValidationResult again = validate(s);
    REQUIRE(again.ok());
    CHECK(again.algebra->cone() == a.cone());
    for (const auto& r : check_partial_order(s)) CHECK(r.holds);
    CHECK(oracle::is_obci(oracle::from(s)));
  }
}

TEST_CASE("property: axiom witnesses re-fail and agree with the oracle") {
  // Every structure on two elements with unit 0, sound or not.
  for (std::uint32_t code = 0; code < (1U << 8); ++code) {
    std::vector<Elem> op(4);
    std::vector<std::uint8_t> rel(4);
    for (int i = 0; i < 4; ++i) {
      op[i] = (code >> i) & 1U;
      rel[i] = (code >> (4 + i)) & 1U;
    }
    const RawStructure s = RawStructure::from_tables("s", 2, op, 0, rel);
    const oracle::Alg o = oracle::from(s);
    const bool expected[] = {oracle::axiom1(o), oracle::axiom2(o), oracle::axiom3(o),
                             oracle::axiom4(o), oracle::axiom5(o), oracle::axiom6(o)};
    for (Axiom ax : kAllAxioms) {
      const CheckReport r = check_axiom(s, ax, {kExhaustive});
      CHECK(r.holds == expected[static_cast<int>(ax) - 1]);
      CHECK(r.holds == r.witnesses.empty());
      for (const Witness& w : r.witnesses) CHECK(violates(s, ax, w.elems));
    }
    CHECK(validate(s).ok() == oracle::is_obci(o));
  }
}

TEST_CASE("axiom ids round-trip") {
  for (Axiom a : kAllAxioms) CHECK(parse_axiom(axiom_id(a)) == a);
  CHECK_FALSE(parse_axiom("OBCI-7").has_value());
}
