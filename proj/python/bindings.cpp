#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "obci/claims.hpp"
#include "obci/enumerate.hpp"
#include "obci/fixtures.hpp"
#include "obci/io.hpp"
#include "obci/morphisms.hpp"
#include "obci/products.hpp"
#include "obci/structure.hpp"
#include "obci/substructures.hpp"

namespace py = pybind11;
using namespace obci;

namespace {

// pybind11 holders cannot be pointers to const; nothing exposed mutates.
using Held = std::shared_ptr<RawStructure>;

Held held(const StructurePtr& p) { return std::const_pointer_cast<RawStructure>(p); }

std::vector<std::string> labels_of(const RawStructure& s, const Subset& set) {
  std::vector<std::string> out;
  for (Elem x : set.members()) out.push_back(s.label(x));
  return out;
}

Elem index(const RawStructure& s, const std::string& label) {
  auto i = s.index_of(label);
  if (!i) throw py::value_error("'" + label + "' is not an element of " + s.name());
  return *i;
}

Subset subset_of(const RawStructure& s, const std::vector<std::string>& labels) {
  Subset out = s.empty_set();
  for (const auto& l : labels) out.insert(index(s, l));
  return out;
}

py::dict report_dict(const RawStructure& s, const CheckReport& r) {
  py::list witnesses;
  for (const auto& w : r.witnesses) {
    py::list tuple;
    for (Elem e : w.elems) tuple.append(s.label(e));
    witnesses.append(py::make_tuple(w.clause, py::tuple(tuple)));
  }
  py::dict d;
  d["law"] = r.law;
  d["holds"] = r.holds;
  d["violations"] = r.violations;
  d["witnesses"] = witnesses;
  return d;
}

SubstructureKind kind_of(const std::string& k) {
  if (auto kind = parse_kind(k)) return *kind;
  throw py::value_error("unknown substructure kind '" + k + "'");
}

Held fixture_algebra(const std::string& name) {
  if (auto s = fixtures::algebra(name)) return held(s);
  throw py::key_error(name);
}

Mapping parse_map_text(const std::string& text, const std::vector<Held>& algebras) {
  return parse_map(text, [&](const std::string& name) -> StructurePtr {
    for (const auto& a : algebras) {
      if (a->name() == name) return a;
    }
    return fixtures::algebra(name);
  });
}

py::dict sweep_dict(const SweepReport& r) {
  py::list examples;
  for (const auto& c : r.counterexamples) examples.append(c.describe());
  py::dict d;
  d["claim"] = claim_id(r.claim);
  d["verified"] = r.verified();
  d["checked"] = r.instances_checked;
  d["skipped"] = r.hypothesis_skipped;
  d["failures"] = r.failures;
  d["counterexamples"] = examples;
  return d;
}

}  // namespace

PYBIND11_MODULE(_obci, m) {
  m.doc() = "Finite OBCI-algebras: axioms, substructures, O-homomorphisms, kernels, products";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<StructureError>(m, "StructureError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);

  py::class_<RawStructure, Held>(m, "Algebra")
      .def_static(
          "parse",
          [](const std::string& text) { return std::make_shared<RawStructure>(parse_algebra(text)); },
          py::arg("text"))
      .def_static("fixture", &fixture_algebra, py::arg("name"))
      .def_property_readonly("name", &RawStructure::name)
      .def_property_readonly("size", &RawStructure::size)
      .def_property_readonly("labels", &RawStructure::labels)
      .def_property_readonly("unit",
                             [](const RawStructure& s) { return s.label(s.unit()); })
      .def_property_readonly("cone",
                             [](const RawStructure& s) { return labels_of(s, s.cone()); })
      .def(
          "op",
          [](const RawStructure& s, const std::string& x, const std::string& y) {
            return s.label(s.op(index(s, x), index(s, y)));
          },
          py::arg("x"), py::arg("y"))
      .def(
          "leq",
          [](const RawStructure& s, const std::string& x, const std::string& y) {
            return s.leq(index(s, x), index(s, y));
          },
          py::arg("x"), py::arg("y"))
      .def("serialize", [](const RawStructure& s) { return serialize_algebra(s); })
      .def("axioms",
           [](const RawStructure& s) {
             py::list out;
             for (Axiom a : kAllAxioms) out.append(report_dict(s, check_axiom(s, a, {kExhaustive})));
             return out;
           })
      .def("is_obci", [](const RawStructure& s) { return validate(s).ok(); })
      .def(
          "check",
          [](const RawStructure& s, const std::vector<std::string>& set, const std::string& kind) {
            return report_dict(s, check_kind(s, subset_of(s, set), kind_of(kind), {kExhaustive}));
          },
          py::arg("subset"), py::arg("kind"))
      .def(
          "substructures",
          [](const RawStructure& s, const std::string& kind) {
            std::vector<std::vector<std::string>> out;
            for (const Subset& x : enumerate_substructures(s, kind_of(kind))) {
              out.push_back(labels_of(s, x));
            }
            return out;
          },
          py::arg("kind"))
      .def("__repr__", [](const RawStructure& s) {
        return "<Algebra " + s.name() + " of size " + std::to_string(s.size()) + ">";
      });

  py::class_<Mapping>(m, "Map")
      .def(py::init([](Held x, Held y, const std::vector<std::string>& images) {
             if (images.size() != x->size()) throw py::value_error("one image per source element");
             std::vector<Elem> table;
             for (const auto& l : images) table.push_back(index(*y, l));
             return Mapping(std::move(x), std::move(y), std::move(table));
           }),
           py::arg("source"), py::arg("target"), py::arg("images"))
      .def_static("parse", &parse_map_text, py::arg("text"),
                  py::arg("algebras") = std::vector<Held>{})
      .def_static(
          "fixture", [](const std::string& name) { return fixtures::map(name); }, py::arg("name"))
      .def_property_readonly("name", &Mapping::name)
      .def_property_readonly("source", [](const Mapping& f) { return held(f.source_ptr()); })
      .def_property_readonly("target", [](const Mapping& f) { return held(f.target_ptr()); })
      .def_property_readonly("images",
                             [](const Mapping& f) {
                               std::vector<std::string> out;
                               for (Elem v : f.table()) out.push_back(f.target().label(v));
                               return out;
                             })
      .def("classify",
           [](const Mapping& f) {
             const MorphismClass c = classify(f, {kExhaustive});
             py::dict d;
             d["homomorphism"] = report_dict(f.source(), c.hom);
             d["omap"] = report_dict(f.source(), c.omap);
             d["is_hom"] = c.is_hom;
             d["is_omap"] = c.is_omap;
             d["is_ohom"] = c.is_ohom();
             return d;
           })
      .def("kernel", [](const Mapping& f) { return labels_of(f.source(), kernel(f)); })
      .def("kernel_alt", [](const Mapping& f) { return labels_of(f.source(), kernel_alt(f)); })
      .def("serialize", [](const Mapping& f) { return serialize_map(f); });

  m.def(
      "product",
      [](const Held& a, const Held& b) {
        const ProductResult r = direct_product(a, b);
        return py::make_tuple(held(r.product.combined), r.validation.ok());
      },
      py::arg("a"), py::arg("b"), "Direct product and whether it is an OBCI-algebra.");

  m.def(
      "pair_map", [](const Mapping& f1, const Mapping& f2) { return pair_map(f1, f2); },
      py::arg("f1"), py::arg("f2"));

  m.def(
      "enumerate",
      [](std::size_t n, bool up_to_iso, unsigned jobs) {
        EnumOptions o;
        o.up_to_iso = up_to_iso;
        o.jobs = jobs;
        std::vector<Held> out;
        for (const auto& a : enumerate_obci(n, o)) out.push_back(held(a.shared()));
        return out;
      },
      py::arg("n"), py::arg("up_to_iso") = false, py::arg("jobs") = 1,
      "Every OBCI-algebra on n elements with unit 0.");

  m.def("claims", [] {
    std::vector<std::string> out;
    for (ClaimId c : all_claims()) out.push_back(claim_id(c));
    return out;
  });

  m.def(
      "verify",
      [](const std::string& claim, std::size_t size, bool fixtures, unsigned jobs) {
        SweepScope s;
        for (std::size_t k = 1; k <= size; ++k) s.sizes.push_back(k);
        s.fixtures = fixtures;
        s.jobs = jobs;
        py::list out;
        if (claim == "all") {
          for (const auto& r : verify_all(s)) out.append(sweep_dict(r));
        } else {
          auto c = parse_claim(claim);
          if (!c) throw py::value_error("unknown claim '" + claim + "'");
          out.append(sweep_dict(verify_claim(*c, s)));
        }
        return out;
      },
      py::arg("claim") = "all", py::arg("size") = 3, py::arg("fixtures") = false,
      py::arg("jobs") = 1);

  m.def("findings", [] {
    std::vector<std::string> out;
    for (const auto& f : fixtures::audit_all()) out.push_back(f.line());
    return out;
  });
}
