#include "obci/fixtures.hpp"

#include <map>
#include <mutex>

#include "obci/io.hpp"
#include "obci/substructures.hpp"

namespace obci::fixtures {

namespace {

constexpr std::string_view kTrivial = R"(algebra trivial
elements e
unit e
op
e
order
e<=e
)";

constexpr std::string_view kEqe161X = R"(algebra eqe161-x
elements e x y
unit e
op
e x y
e e y
y y e
order
e<=e x<=x y<=y x<=e
)";

constexpr std::string_view kEqe161Y = R"(algebra eqe161-y
elements e a
unit e
op
e a
a e
order
e<=e a<=a
)";

constexpr std::string_view kKnof = R"(algebra knof
elements 1 1/2 0
unit 1/2
op
1 0 0
1 1/2 0
1 1 1
order
1<=1 1/2<=1/2 0<=0 1/2<=0 0<=1/2
)";

// "d" stands for the partial-derivative symbol used in the printed table.
constexpr std::string_view kEqvo2hX = R"(algebra eqvo2h-x
elements 1 e d 0
unit e
op
1 0 0 0
1 e d 0
1 d e 0
1 1 1 1
order
0<=0 e<=e d<=d 1<=1 0<=e 0<=d e<=1 d<=1
)";

constexpr std::string_view kEqvo2hY = R"(algebra eqvo2h-y
elements 1 2/3 1/3 0
unit 2/3
op
1 0 0 0
1 2/3 1/3 0
1 2/3 2/3 0
1 1 1 1
order
1<=1 2/3<=2/3 1/3<=1/3 0<=0 2/3<=1 1/3<=2/3 0<=1/3
)";

constexpr std::string_view kMapEqe161 = R"(map eqe161 : eqe161-x -> eqe161-y
e -> e
x -> e
y -> a
)";

constexpr std::string_view kMapEqe161Id = R"(map eqe161-id : eqe161-x -> eqe161-x
e -> e
x -> x
y -> y
)";

constexpr std::string_view kMapKnofSelf = R"(map knof-self : knof -> knof
1 -> 0
1/2 -> 1/2
0 -> 1
)";

constexpr std::string_view kMapKnofId = R"(map knof-id : knof -> knof
1 -> 1
1/2 -> 1/2
0 -> 0
)";

constexpr std::string_view kMapEqvo2h = R"(map eqvo2h : eqvo2h-x -> eqvo2h-y
1 -> 1
e -> 2/3
d -> 1/3
0 -> 0
)";

std::string describe_witness(const RawStructure& s, const Witness& w) {
  return (w.clause.empty() ? std::string{} : w.clause + " ") + format_tuple(s, w.elems);
}

}  // namespace

const std::vector<AlgebraFixture>& algebras() {
  static const std::vector<AlgebraFixture> all = {
      {"trivial", kTrivial, true},     {"eqe161-x", kEqe161X, true},
      {"eqe161-y", kEqe161Y, true},    {"knof", kKnof, true},
      {"eqvo2h-x", kEqvo2hX, true},    {"eqvo2h-y", kEqvo2hY, true},
  };
  return all;
}

const std::vector<MapFixture>& maps() {
  static const std::vector<MapFixture> all = {
      {"eqe161", kMapEqe161, true, true, "e"},
      {"eqe161-id", kMapEqe161Id, true, true, "e"},
      {"knof-self", kMapKnofSelf, true, false, std::nullopt},
      {"knof-id", kMapKnofId, true, true, "1,1/2"},
      {"eqvo2h", kMapEqvo2h, false, true, "1,e"},
  };
  return all;
}

const std::vector<SubsetFixture>& subsets() {
  static const std::vector<SubsetFixture> all = {
      {"knof", "1,1/2", "subalgebra", false},
      {"knof", "1,1/2", "ordered-subalgebra", false},
  };
  return all;
}

std::optional<AlgebraFixture> find_algebra(std::string_view name) {
  for (const auto& f : algebras())
    if (f.name == name) return f;
  return std::nullopt;
}

std::optional<MapFixture> find_map(std::string_view name) {
  for (const auto& f : maps())
    if (f.name == name) return f;
  return std::nullopt;
}

StructurePtr algebra(std::string_view name) {
  static std::mutex mu;
  static std::map<std::string, StructurePtr, std::less<>> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(name); it != cache.end()) return it->second;
  auto f = find_algebra(name);
  if (!f) return nullptr;
  auto s = std::make_shared<const RawStructure>(
      parse_algebra(f->text, "fixture:" + std::string(name)));
  cache.emplace(std::string(name), s);
  return s;
}

Mapping map(std::string_view name) {
  auto f = find_map(name);
  if (!f) throw PreconditionError("unknown map fixture '" + std::string(name) + "'");
  return parse_map(
      f->text, [](const std::string& n) { return algebra(n); },
      "fixture:" + std::string(name));
}

std::string Finding::line() const {
  return "FINDING: " + subject + ": asserted " + asserted + "; computed " + computed +
         "; witness " + witness;
}

namespace {

// Up to `cap` witnesses, space separated.
std::string witness_list(const RawStructure& s, const CheckReport& r, std::size_t cap = 8) {
  std::string out;
  for (std::size_t i = 0; i < r.witnesses.size() && i < cap; ++i) {
    if (i) out += ' ';
    out += describe_witness(s, r.witnesses[i]);
  }
  if (r.violations > cap) out += " ...";
  return out;
}

}  // namespace

std::vector<Finding> audit_algebra(const AlgebraFixture& f) {
  std::vector<Finding> out;
  StructurePtr s = algebra(f.name);
  const ValidationResult v = validate(s, {}, true);
  if (f.asserted_obci && !v.ok()) {
    for (const auto& r : v.reports) {
      if (r.holds) continue;
      out.push_back({std::string(f.name), "OBCI-algebra",
                     r.law + " fails (" + std::to_string(r.violations) +
                         (r.violations == 1 ? " violation)" : " violations)"),
                     witness_list(*s, r)});
    }
    for (const auto& r : check_partial_order(*s)) {
      if (r.holds) continue;
      out.push_back({std::string(f.name), "OBCI-algebra (relation is a partial order)",
                     "relation not " + r.law, witness_list(*s, r)});
    }
  }
  return out;
}

std::vector<Finding> audit_map(const MapFixture& f) {
  std::vector<Finding> out;
  const Mapping m = map(f.name);
  const MorphismClass c = classify(m);
  const std::string subject = "map " + std::string(f.name);
  if (f.asserted_hom && *f.asserted_hom != c.is_hom) {
    out.push_back({subject, *f.asserted_hom ? "homomorphism" : "not a homomorphism",
                   c.is_hom ? "homomorphism" : "not a homomorphism",
                   c.is_hom ? "none" : describe_witness(m.source(), c.hom.witnesses.front())});
  }
  if (f.asserted_omap && *f.asserted_omap != c.is_omap) {
    out.push_back({subject, *f.asserted_omap ? "O-map" : "not an O-map",
                   c.is_omap ? "O-map" : "not an O-map",
                   c.is_omap ? "none" : describe_witness(m.source(), c.omap.witnesses.front())});
  }
  if (f.asserted_kernel) {
    const Subset printed = parse_set(m.source(), *f.asserted_kernel);
    const Subset computed = kernel(m);
    if (printed != computed) {
      const Subset diff{computed.universe_size(), printed.bits() ^ computed.bits()};
      const Elem x = diff.members().front();
      const RawStructure& y = m.target();
      const std::string rel = y.in_cone(m(x)) ? " <= " : " !<= ";
      out.push_back({subject, "ker = " + format_set(m.source(), printed),
                     "ker = " + format_set(m.source(), computed),
                     m.source().label(x) + ": " + y.label(y.unit()) + rel + y.label(m(x)) +
                         " = f(" + m.source().label(x) + ")"});
    }
  }
  return out;
}

std::vector<Finding> audit_subset(const SubsetFixture& f) {
  StructurePtr s = algebra(f.algebra);
  const Subset set = parse_set(*s, f.subset);
  const auto kind = parse_kind(f.kind);
  if (!kind) throw PreconditionError("unknown substructure kind '" + std::string(f.kind) + "'");
  const CheckReport r = check_kind(*s, set, *kind, {kExhaustive});
  if (r.holds == f.asserted_holds) return {};
  const std::string subject =
      std::string(f.algebra) + " " + format_set(*s, set) + " as " + std::string(f.kind);
  auto verdict = [](bool holds) { return holds ? std::string("holds") : std::string("fails"); };
  std::string witness;
  if (!r.holds) {
    witness = witness_list(*s, r);
  } else {
    // Show every pair the definition actually constrains.
    const bool guarded = *kind == SubstructureKind::kOrderedSubalgebra;
    for (Elem x : set.members()) {
      for (Elem y : set.members()) {
        if (guarded && !(s->in_cone(x) && s->in_cone(y))) continue;
        if (!witness.empty()) witness += ' ';
        witness += format_tuple(*s, {x, y}) + "->" + s->label(s->op(x, y));
      }
    }
    if (witness.empty()) witness = "no constrained pairs";
  }
  return {{subject, verdict(f.asserted_holds), verdict(r.holds), witness}};
}

std::vector<Finding> audit_all() {
  std::vector<Finding> out;
  for (const auto& f : algebras()) {
    auto part = audit_algebra(f);
    out.insert(out.end(), part.begin(), part.end());
  }
  for (const auto& f : maps()) {
    auto part = audit_map(f);
    out.insert(out.end(), part.begin(), part.end());
  }
  for (const auto& f : subsets()) {
    auto part = audit_subset(f);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace obci::fixtures
