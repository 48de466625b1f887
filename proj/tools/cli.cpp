#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <optional>
#include <sstream>

#include "obci/claims.hpp"
#include "obci/enumerate.hpp"
#include "obci/fixtures.hpp"
#include "obci/io.hpp"
#include "obci/morphisms.hpp"
#include "obci/products.hpp"
#include "obci/structure.hpp"
#include "obci/substructures.hpp"

namespace obci::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Context {
  std::ostream& out;
  std::ostream& err;
  bool machine = false;
};

// Algebra references: "@name" is a built-in fixture; otherwise a file path,
// falling back to a fixture of that name when no such file exists.
StructurePtr load_algebra(const std::string& ref) {
  std::string name;
  if (!ref.empty() && ref.front() == '@') {
    name = ref.substr(1);
  } else if (std::filesystem::exists(ref)) {
    return std::make_shared<const RawStructure>(parse_algebra(read_file(ref), ref));
  } else {
    name = ref;
  }
  if (StructurePtr s = fixtures::algebra(name)) return s;
  throw UsageError("no algebra file or fixture named '" + ref + "'");
}

std::string load_map_text(const std::string& ref, std::string& source) {
  std::string name;
  if (!ref.empty() && ref.front() == '@') {
    name = ref.substr(1);
  } else if (std::filesystem::exists(ref)) {
    source = ref;
    return read_file(ref);
  } else {
    name = ref;
  }
  if (auto f = fixtures::find_map(name)) {
    source = "fixture:" + name;
    return std::string(f->text);
  }
  throw UsageError("no map file or fixture named '" + ref + "'");
}

/// Parses a map; explicit source/target algebras override the names in its
/// header, which otherwise resolve against the fixture library.
Mapping load_map(const std::string& ref, const std::string& src_ref, const std::string& dst_ref) {
  std::string source;
  const std::string text = load_map_text(ref, source);
  const MapHeader header = parse_map_header(text, source);
  StructurePtr src = src_ref.empty() ? nullptr : load_algebra(src_ref);
  StructurePtr dst = dst_ref.empty() ? nullptr : load_algebra(dst_ref);
  auto resolve = [&](const std::string& name) -> StructurePtr {
    if (name == header.source && src) return src;
    if (name == header.target && dst) return dst;
    return fixtures::algebra(name);
  };
  return parse_map(text, resolve, source);
}

std::string tuple(const RawStructure& s, const Witness& w) {
  return (w.clause.empty() ? "" : w.clause) + format_tuple(s, w.elems);
}

std::string witness_list(const RawStructure& s, const CheckReport& r, std::size_t limit) {
  std::string out;
  std::size_t k = 0;
  for (const auto& w : r.witnesses) {
    if (k++ == limit) {
      out += " ...";
      break;
    }
    out += " " + tuple(s, w);
  }
  return out;
}

void print_law(Context& ctx, const RawStructure& s, const CheckReport& r,
               std::size_t limit = kExhaustive) {
  if (ctx.machine) {
    ctx.out << "LAW " << r.law << (r.holds ? " HOLDS" : " FAIL");
    if (!r.holds) ctx.out << witness_list(s, r, kExhaustive);
    ctx.out << "\n";
    return;
  }
  if (r.holds) {
    ctx.out << r.law << ": holds\n";
    return;
  }
  ctx.out << r.law << ": FAILS (" << r.violations << " violation"
          << (r.violations == 1 ? "" : "s") << "):" << witness_list(s, r, limit) << "\n";
}

void print_findings(Context& ctx, const std::vector<fixtures::Finding>& findings) {
  for (const auto& f : findings) ctx.out << f.line() << "\n";
}

/// Audits the fixture whose table this structure reproduces, if any.
void algebra_findings(Context& ctx, const RawStructure& s) {
  for (const auto& f : fixtures::algebras()) {
    if (fixtures::algebra(f.name)->same_structure(s)) print_findings(ctx, fixtures::audit_algebra(f));
  }
}

void map_findings(Context& ctx, const Mapping& m) {
  for (const auto& f : fixtures::maps()) {
    const Mapping fm = fixtures::map(f.name);
    if (fm.table() == m.table() && fm.source().same_structure(m.source()) &&
        fm.target().same_structure(m.target())) {
      print_findings(ctx, fixtures::audit_map(f));
    }
  }
}

int cmd_validate(Context& ctx, const std::string& file, bool exhaustive) {
  const StructurePtr s = load_algebra(file);
  const CheckOptions opts{exhaustive ? kExhaustive : kDefaultWitnessCap};
  const ValidationResult v = validate(s, opts, true);
  std::size_t passed = 0;
  for (const auto& r : v.reports) {
    print_law(ctx, *s, r, exhaustive ? kExhaustive : 8);
    passed += r.holds;
  }
  if (exhaustive) {
    for (const auto& r : check_partial_order(*s, opts)) print_law(ctx, *s, r);
  }
  if (!ctx.machine) {
    ctx.out << s->name() << ": " << passed << "/" << v.reports.size() << " axioms hold\n";
  }
  algebra_findings(ctx, *s);
  return v.ok() ? kExitOk : kExitViolated;
}

SubstructureKind kind_arg(const std::string& k) {
  if (auto kind = parse_kind(k)) return *kind;
  throw UsageError("unknown kind '" + k +
                   "' (subalgebra, ordered-subalgebra, filter, ordered-filter, closed-filter, "
                   "closed-ordered-filter)");
}

int cmd_substructure(Context& ctx, const std::string& file, const std::string& set,
                     const std::string& kind) {
  const StructurePtr s = load_algebra(file);
  const SubstructureKind k = kind_arg(kind);
  Subset sub;
  try {
    sub = parse_set(*s, set);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
  const CheckReport r = check_kind(*s, sub, k, {kExhaustive});
  if (!ctx.machine) ctx.out << "S = " << format_set(*s, sub) << "\n";
  print_law(ctx, *s, r);
  return r.holds ? kExitOk : kExitViolated;
}

int cmd_enumerate_substructures(Context& ctx, const std::string& file, const std::string& kind) {
  const StructurePtr s = load_algebra(file);
  const SubstructureKind k = kind_arg(kind);
  const auto sets = enumerate_substructures(*s, k);
  if (ctx.machine) {
    for (const auto& x : sets) ctx.out << "SET " << format_set(*s, x) << "\n";
  } else {
    ctx.out << sets.size() << " " << kind_id(k) << (sets.size() == 1 ? "" : "s") << " of "
            << s->name() << ":\n";
    for (const auto& x : sets) ctx.out << "  " << format_set(*s, x) << "\n";
  }
  return kExitOk;
}

int cmd_classify(Context& ctx, const std::string& map, const std::string& src,
                 const std::string& dst) {
  const Mapping m = load_map(map, src, dst);
  const MorphismClass c = classify(m, {kExhaustive});
  print_law(ctx, m.source(), c.hom);
  print_law(ctx, m.source(), c.omap);
  if (!ctx.machine) {
    ctx.out << (m.name().empty() ? "map" : m.name()) << ": "
            << (c.is_ohom() ? "O-homomorphism"
                : c.is_hom  ? "homomorphism, not an O-map"
                : c.is_omap ? "O-map, not a homomorphism"
                            : "neither a homomorphism nor an O-map")
            << "\n";
    if (!c.is_hom) {
      const auto& w = c.hom.witnesses.front().elems;
      const RawStructure& x = m.source();
      const RawStructure& y = m.target();
      ctx.out << "  f(" << x.label(w[0]) << " -> " << x.label(w[1])
              << ") = " << y.label(m(x.op(w[0], w[1]))) << " but f(" << x.label(w[0])
              << ") -> f(" << x.label(w[1]) << ") = " << y.label(y.op(m(w[0]), m(w[1]))) << "\n";
    }
  }
  map_findings(ctx, m);
  return kExitOk;
}

int cmd_kernel(Context& ctx, const std::string& map, const std::string& src,
               const std::string& dst, bool alt) {
  const Mapping m = load_map(map, src, dst);
  const Subset k = kernel(m);
  if (ctx.machine) {
    ctx.out << "SET ker " << format_set(m.source(), k) << "\n";
  } else {
    ctx.out << "ker = " << format_set(m.source(), k) << "\n";
  }
  int code = kExitOk;
  if (alt) {
    const Subset a = kernel_alt(m);
    if (ctx.machine) {
      ctx.out << "SET ker-alt " << format_set(m.source(), a) << "\n";
      ctx.out << "LAW P-kernel-alt " << (a == k ? "HOLDS" : "FAIL") << "\n";
    } else {
      ctx.out << "ker* = " << format_set(m.source(), a) << (a == k ? " (equal)" : " (DIFFERS)")
              << "\n";
    }
    if (a != k) code = kExitViolated;
  }
  map_findings(ctx, m);
  return code;
}

int cmd_product(Context& ctx, const std::string& a, const std::string& b,
                const std::string& output) {
  const ProductResult p = direct_product(load_algebra(a), load_algebra(b));
  const RawStructure& s = *p.product.combined;
  std::size_t passed = 0;
  for (const auto& r : p.validation.reports) {
    passed += r.holds;
    if (ctx.machine || !r.holds) print_law(ctx, s, r, 8);
  }
  const std::string text = serialize_algebra(s);
  if (!output.empty()) {
    write_file(output, text);
  } else if (!ctx.machine) {
    ctx.out << text;
  }
  if (!ctx.machine) {
    ctx.out << s.name() << ": " << s.size() << " elements, " << passed << "/"
            << p.validation.reports.size() << " axioms hold\n";
  }
  return p.validation.ok() ? kExitOk : kExitViolated;
}

int cmd_pair_map(Context& ctx, const std::vector<std::string>& args) {
  if (args.size() != 2 && args.size() != 6) {
    throw UsageError("pair-map expects <map1> <map2> [<X1> <Y1> <X2> <Y2>]");
  }
  auto arg = [&](std::size_t i) { return args.size() == 6 ? args[i] : std::string{}; };
  const Mapping f1 = load_map(args[0], arg(2), arg(3));
  const Mapping f2 = load_map(args[1], arg(4), arg(5));
  const ProductAlgebra px = make_product(f1.source_ptr(), f2.source_ptr());
  const ProductAlgebra py = make_product(f1.target_ptr(), f2.target_ptr());
  const Mapping pm = pair_map(px, py, f1, f2);
  const RawStructure& x = *px.combined;
  const bool x_ok = validate(px.combined).ok();
  const bool y_ok = validate(py.combined).ok();
  const MorphismClass c = classify(pm, {kExhaustive});
  const ProductKernel pk = direct_product_kernel(f1, f2, {kExhaustive});
  const Subset k = kernel(pm);
  const KSets ks = k_upper_sets(kernel(f1), kernel(f2), f1, f2);

  if (!ctx.machine) {
    ctx.out << "source " << x.name() << (x_ok ? " is" : " is NOT") << " an OBCI-algebra\n";
    ctx.out << "target " << py.combined->name() << (y_ok ? " is" : " is NOT")
            << " an OBCI-algebra\n";
  }
  print_law(ctx, x, c.hom, 8);
  print_law(ctx, x, c.omap, 8);
  print_law(ctx, x, pk.equivalence, 8);
  if (ctx.machine) {
    ctx.out << "SET ker " << format_set(x, k) << "\n";
    ctx.out << "SET ker1xker2 " << format_set(x, pk.set) << "\n";
    ctx.out << "LAW k-sets-equal " << (ks.equal ? "HOLDS" : "FAIL") << "\n";
  } else {
    ctx.out << "ker(f1) = " << format_set(f1.source(), kernel(f1))
            << ", ker(f2) = " << format_set(f2.source(), kernel(f2)) << "\n";
    ctx.out << "ker(pair map) = " << format_set(x, k) << "\n";
    ctx.out << "ker(f1) x ker(f2) = " << format_set(x, pk.set)
            << (pk.set == k ? " (equal)" : " (DIFFERS)") << "\n";
    ctx.out << "K-sets " << (ks.equal ? "coincide" : "DIFFER") << ": "
            << format_set(x, ks.by_second_unit) << "\n";
  }
  map_findings(ctx, f1);
  map_findings(ctx, f2);
  const bool ok = c.is_ohom() && pk.equivalence.holds && pk.set == k && ks.equal;
  return ok ? kExitOk : kExitViolated;
}

int cmd_enumerate(Context& ctx, std::size_t n, bool iso, bool count_only, unsigned jobs) {
  EnumOptions opts;
  opts.up_to_iso = iso;
  opts.jobs = jobs;
  opts.max_size = std::max<std::size_t>(opts.max_size, n);
  const auto all = enumerate_obci(n, opts);
  if (ctx.machine) {
    ctx.out << "COUNT " << n << " " << all.size() << "\n";
  } else {
    ctx.out << all.size() << " OBCI-algebra" << (all.size() == 1 ? "" : "s") << " of size " << n
            << (iso ? " up to isomorphism" : " (labelled, unit 0)") << "\n";
  }
  if (!count_only) {
    for (const auto& a : all) ctx.out << "\n" << serialize_algebra(a.structure());
  }
  return kExitOk;
}

SweepScope scope_of(std::optional<std::size_t> size, bool fixtures, bool iso, unsigned jobs,
                    std::size_t default_size) {
  SweepScope s;
  s.fixtures = fixtures;
  s.up_to_iso = iso;
  s.jobs = jobs;
  const std::size_t n = size ? *size : (fixtures ? 0 : default_size);
  for (std::size_t k = 1; k <= n; ++k) s.sizes.push_back(k);
  return s;
}

int cmd_verify(Context& ctx, const std::string& which, const SweepScope& scope,
               std::size_t show) {
  std::vector<SweepReport> reports;
  if (which == "all") {
    reports = verify_all(scope);
  } else {
    auto c = parse_claim(which);
    if (!c) throw UsageError("unknown claim '" + which + "'");
    reports.push_back(verify_claim(*c, scope));
  }
  std::size_t falsified = 0;
  for (const auto& r : reports) {
    falsified += !r.verified();
    if (ctx.machine) {
      ctx.out << "LAW " << claim_id(r.claim) << (r.verified() ? " HOLDS" : " FAIL")
              << " checked=" << r.instances_checked << " skipped=" << r.hypothesis_skipped
              << " counterexamples=" << r.failures << "\n";
      for (const auto& cx : r.counterexamples) {
        ctx.out << "WITNESS " << claim_id(r.claim) << " " << cx.describe() << "\n";
      }
      continue;
    }
    ctx.out << format_sweep_line(r) << "\n";
    std::size_t k = 0;
    for (const auto& cx : r.counterexamples) {
      if (k++ == show) break;
      ctx.out << "  counterexample: " << cx.describe() << "\n";
    }
  }
  if (!ctx.machine) {
    ctx.out << reports.size() - falsified << "/" << reports.size() << " claims verified\n";
  }
  return falsified == 0 ? kExitOk : kExitViolated;
}

int cmd_search(Context& ctx, const std::string& query, std::optional<std::size_t> size,
               bool fixtures, unsigned jobs) {
  if (!is_known_query(query)) {
    throw UsageError("unknown query '" + query + "' (hom-not-omap, omap-not-hom, or a claim id)");
  }
  SearchResult r;
  if (size) {
    SweepScope s = scope_of(size, fixtures, false, jobs, 0);
    r = search_sizes(query, s);
  } else {
    r = search_fixtures(query);
  }
  if (ctx.machine) {
    ctx.out << "SEARCH " << query << (r.found ? " FOUND " : " NONE ") << r.description << "\n";
  } else {
    ctx.out << (r.found ? "found: " : "none: ") << r.description << "\n";
  }
  if (r.map) map_findings(ctx, *r.map);
  return r.found ? kExitOk : kExitViolated;
}

int cmd_fixtures(Context& ctx, const std::string& action, const std::string& name) {
  if (action == "list") {
    for (const auto& f : fixtures::algebras()) ctx.out << "algebra " << f.name << "\n";
    for (const auto& f : fixtures::maps()) {
      const MapHeader h = parse_map_header(f.text, std::string(f.name));
      ctx.out << "map " << f.name << " : " << h.source << " -> " << h.target << "\n";
    }
    return kExitOk;
  }
  if (action == "dump") {
    if (name.empty()) throw UsageError("fixtures dump needs a name");
    if (auto f = fixtures::find_algebra(name)) {
      ctx.out << f->text;
      return kExitOk;
    }
    if (auto f = fixtures::find_map(name)) {
      ctx.out << f->text;
      return kExitOk;
    }
    throw UsageError("no fixture named '" + name + "'");
  }
  if (action == "audit") {
    const auto findings = fixtures::audit_all();
    print_findings(ctx, findings);
    if (!ctx.machine) ctx.out << findings.size() << " findings\n";
    return kExitOk;
  }
  throw UsageError("fixtures expects list, dump <name> or audit");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Toolkit for finite OBCI-algebras, their O-homomorphisms, kernels and products",
               "obci"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"text", "machine"}));

  std::function<int(Context&)> action;
  auto bind = [&](CLI::App* sub, std::function<int(Context&)> fn) {
    sub->callback([&action, fn = std::move(fn)] { action = fn; });
  };

  std::string file, map, src, dst, set, kind, output, which, query, name;
  std::vector<std::string> list;
  std::optional<std::size_t> size;
  std::size_t n = 0;
  std::size_t show = 3;
  unsigned jobs = 1;
  bool flag_alt = false, flag_iso = false, flag_count = false, flag_fixtures = false;

  auto* validate_cmd = app.add_subcommand("validate", "Check the six axioms");
  validate_cmd->add_option("file", file, "Algebra file or @fixture")->required();
  bind(validate_cmd, [&](Context& c) { return cmd_validate(c, file, false); });

  auto* axioms_cmd =
      app.add_subcommand("axioms", "Every axiom with exhaustive witnesses, plus order laws");
  axioms_cmd->add_option("file", file, "Algebra file or @fixture")->required();
  bind(axioms_cmd, [&](Context& c) { return cmd_validate(c, file, true); });

  auto* sub_cmd = app.add_subcommand("substructure", "Test one subset against a kind");
  sub_cmd->add_option("file", file, "Algebra file or @fixture")->required();
  sub_cmd->add_option("--set", set, "Comma-separated labels")->required();
  sub_cmd->add_option("--kind", kind, "Substructure kind")->required();
  bind(sub_cmd, [&](Context& c) { return cmd_substructure(c, file, set, kind); });

  auto* enum_sub_cmd =
      app.add_subcommand("enumerate-substructures", "List every subset of a given kind");
  enum_sub_cmd->add_option("file", file, "Algebra file or @fixture")->required();
  enum_sub_cmd->add_option("--kind", kind, "Substructure kind")->required();
  bind(enum_sub_cmd, [&](Context& c) { return cmd_enumerate_substructures(c, file, kind); });

  auto* classify_cmd = app.add_subcommand("classify", "Homomorphism and O-map verdicts");
  classify_cmd->add_option("map", map, "Map file or @fixture")->required();
  classify_cmd->add_option("source", src, "Source algebra");
  classify_cmd->add_option("target", dst, "Target algebra");
  bind(classify_cmd, [&](Context& c) { return cmd_classify(c, map, src, dst); });

  auto* kernel_cmd = app.add_subcommand("kernel", "Kernel of a mapping");
  kernel_cmd->add_option("map", map, "Map file or @fixture")->required();
  kernel_cmd->add_option("source", src, "Source algebra");
  kernel_cmd->add_option("target", dst, "Target algebra");
  kernel_cmd->add_flag("--alt", flag_alt, "Also compute the existential form and compare");
  bind(kernel_cmd, [&](Context& c) { return cmd_kernel(c, map, src, dst, flag_alt); });

  auto* product_cmd = app.add_subcommand("product", "Direct product of two algebras");
  product_cmd->add_option("a", file, "First factor")->required();
  product_cmd->add_option("b", name, "Second factor")->required();
  product_cmd->add_option("-o,--output", output, "Write the product algebra file here");
  bind(product_cmd, [&](Context& c) { return cmd_product(c, file, name, output); });

  auto* pair_cmd = app.add_subcommand("pair-map", "Componentwise map between products");
  pair_cmd->add_option("args", list, "<map1> <map2> [<X1> <Y1> <X2> <Y2>]")->required();
  bind(pair_cmd, [&](Context& c) { return cmd_pair_map(c, list); });

  auto* enum_cmd = app.add_subcommand("enumerate", "All OBCI-algebras of a size, unit 0");
  enum_cmd->add_option("n", n, "Carrier size")->required()->check(CLI::Range(1, 8));
  enum_cmd->add_flag("--iso", flag_iso, "One representative per isomorphism class");
  enum_cmd->add_flag("--count-only", flag_count, "Print only the count");
  enum_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1, 256));
  bind(enum_cmd, [&](Context& c) { return cmd_enumerate(c, n, flag_iso, flag_count, jobs); });

  auto* verify_cmd = app.add_subcommand("verify", "Sweep a claim (or all) over a scope");
  verify_cmd->add_option("claim", which, "Claim id or 'all'")->required();
  verify_cmd->add_option("--size", size, "Largest carrier size (default 3)")
      ->check(CLI::Range(1, 8));
  verify_cmd->add_flag("--fixtures", flag_fixtures, "Include the validated fixture algebras");
  verify_cmd->add_flag("--iso", flag_iso, "Quantify over isomorphism representatives");
  verify_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1, 256));
  verify_cmd->add_option("--show", show, "Counterexamples printed per claim");
  bind(verify_cmd, [&](Context& c) {
    return cmd_verify(c, which, scope_of(size, flag_fixtures, flag_iso, jobs, 3), show);
  });

  auto* search_cmd = app.add_subcommand("search", "First instance of a separating query");
  search_cmd->add_option("query", query, "hom-not-omap, omap-not-hom or a claim id")->required();
  search_cmd->add_option("--size", size, "Search all algebras up to this size")
      ->check(CLI::Range(1, 8));
  search_cmd->add_flag("--fixtures", flag_fixtures, "Search the fixture library (default)");
  search_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1, 256));
  bind(search_cmd, [&](Context& c) { return cmd_search(c, query, size, flag_fixtures, jobs); });

  auto* fixtures_cmd = app.add_subcommand("fixtures", "Built-in fixture library");
  fixtures_cmd->add_option("action", which, "list, dump or audit")->required();
  fixtures_cmd->add_option("name", name, "Fixture name for dump");
  bind(fixtures_cmd, [&](Context& c) { return cmd_fixtures(c, which, name); });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  Context ctx{out, err, format == "machine"};
  try {
    return action(ctx);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const StructureError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const BudgetError& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}

}  // namespace obci::cli
