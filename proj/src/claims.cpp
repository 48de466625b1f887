#include "obci/claims.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <mutex>
#include <sstream>
#include <thread>
#include <utility>

#include "obci/enumerate.hpp"
#include "obci/fixtures.hpp"
#include "obci/io.hpp"
#include "obci/products.hpp"

namespace obci {

namespace {

struct ClaimInfo {
  ClaimId id;
  const char* name;
  const char* statement;
};

constexpr std::array<ClaimInfo, 24> kClaims = {{
    {ClaimId::kIdentities, "P-identities", "every OBCI-algebra satisfies a1, a2, a3, a4, b4, b5"},
    {ClaimId::kOrdFilterIsFilter, "P-ordfilter-is-filter",
     "an ordered filter inside the cone is a filter"},
    {ClaimId::kMonotone, "P-monotone",
     "an O-homomorphism sends e into the cone and preserves the order"},
    {ClaimId::kKernelAlt, "P-kernel-alt",
     "ker(f) = {y : exists x, e <= f(x), e <= f(x) -> f(y)} for every mapping"},
    {ClaimId::kClosedKernel, "P-closed-kernel",
     "a closed kernel, or an O-closed kernel inside the cone, satisfies "
     "f(e) <= f(x) => x -> e in ker(f)"},
    {ClaimId::kKernelClosedConverse, "T-kernel-closed-converse",
     "for a unit-preserving O-homomorphism, the kernel condition makes ker(f) closed and "
     "O-closed"},
    {ClaimId::kSubalgPreimage, "T-subalg-preimage",
     "the preimage of a subalgebra under an O-homomorphism is a subalgebra"},
    {ClaimId::kSubalgImage, "T-subalg-image",
     "the image of a subalgebra under a surjective O-homomorphism is a subalgebra"},
    {ClaimId::kOrdSubalgPreimage, "T-ordsubalg-preimage",
     "the preimage of an ordered subalgebra under an O-homomorphism is an ordered subalgebra"},
    {ClaimId::kOrdSubalgImageCone, "T-ordsubalg-image-cone",
     "the image of an ordered subalgebra inside the cone under a surjective O-homomorphism is "
     "an ordered subalgebra"},
    {ClaimId::kOrdSubalgImageReflect, "T-ordsubalg-image-reflect",
     "the image of an ordered subalgebra under a surjective cone-reflecting O-homomorphism is "
     "an ordered subalgebra"},
    {ClaimId::kKernelFilter, "T-kernel-filter", "the kernel of an O-homomorphism is a filter"},
    {ClaimId::kKernelOrdFilter, "T-kernel-ordfilter",
     "the kernel of an O-homomorphism is an ordered filter"},
    {ClaimId::kFilterPreimage, "T-filter-preimage",
     "the preimage of a filter under a unit-preserving O-homomorphism is a filter"},
    {ClaimId::kFilterImage, "T-filter-image",
     "the image of a filter under a unit-preserving surjective O-homomorphism is a filter"},
    {ClaimId::kOrdFilterPreimage, "T-ordfilter-preimage",
     "the preimage of an ordered filter under a unit-preserving O-homomorphism is an ordered "
     "filter"},
    {ClaimId::kOrdFilterImageReflect, "T-ordfilter-image-reflect",
     "the image of an ordered filter under a unit-preserving surjective cone-reflecting "
     "O-homomorphism is an ordered filter"},
    {ClaimId::kOrdFilterImageKerCone, "T-ordfilter-image-kercone",
     "the image of an ordered filter containing ker(f) and inside the cone under a "
     "unit-preserving surjective O-homomorphism is an ordered filter"},
    {ClaimId::kFilterBijection, "T-filter-bijection",
     "F |-> f(F) is a bijection from filters containing ker(f) onto filters of Y"},
    {ClaimId::kOrdFilterBijection, "T-ordfilter-bijection",
     "F |-> f(F) is a bijection from ordered filters containing ker(f) inside the cone onto "
     "ordered filters of Y"},
    {ClaimId::kPairmapOhom, "T-pairmap-ohom",
     "the pair map of two O-homomorphisms is an O-homomorphism"},
    {ClaimId::kProductKernel, "T-product-kernel",
     "ker of the pair map equals ker(f1) x ker(f2)"},
    {ClaimId::kProductKernelProjection, "T-product-kernel-projection",
     "the projections of the pair map's kernel are ker(f1) and ker(f2)"},
    {ClaimId::kKsets, "T-ksets",
     "both K-sets built from the component kernels contain the unit and coincide"},
}};

enum class Shape { kAlgebra, kAlgebraSubset, kMap, kMapSourceSubset, kMapTargetSubset, kProduct };

Shape shape_of(ClaimId c) {
  switch (c) {
    case ClaimId::kIdentities:
      return Shape::kAlgebra;
    case ClaimId::kOrdFilterIsFilter:
      return Shape::kAlgebraSubset;
    case ClaimId::kMonotone:
    case ClaimId::kKernelAlt:
    case ClaimId::kClosedKernel:
    case ClaimId::kKernelClosedConverse:
    case ClaimId::kKernelFilter:
    case ClaimId::kKernelOrdFilter:
    case ClaimId::kFilterBijection:
    case ClaimId::kOrdFilterBijection:
      return Shape::kMap;
    case ClaimId::kSubalgPreimage:
    case ClaimId::kOrdSubalgPreimage:
    case ClaimId::kFilterPreimage:
    case ClaimId::kOrdFilterPreimage:
      return Shape::kMapTargetSubset;
    case ClaimId::kSubalgImage:
    case ClaimId::kOrdSubalgImageCone:
    case ClaimId::kOrdSubalgImageReflect:
    case ClaimId::kFilterImage:
    case ClaimId::kOrdFilterImageReflect:
    case ClaimId::kOrdFilterImageKerCone:
      return Shape::kMapSourceSubset;
    case ClaimId::kPairmapOhom:
    case ClaimId::kProductKernel:
    case ClaimId::kProductKernelProjection:
    case ClaimId::kKsets:
      return Shape::kProduct;
  }
  return Shape::kAlgebra;
}

std::string show(const RawStructure& s, const Subset& set) { return format_set(s, set); }

std::string show_map(const Mapping& m) {
  std::string out = "[";
  for (std::size_t a = 0; a < m.table().size(); ++a) {
    const auto x = static_cast<Elem>(a);
    out += (a ? ", " : "") + m.source().label(x) + "->" + m.target().label(m(x));
  }
  return out + "]";
}

std::string first_witness(const RawStructure& s, const CheckReport& r) {
  if (r.holds || r.witnesses.empty()) return r.law;
  const Witness& w = r.witnesses.front();
  return r.law + (w.clause.empty() ? "" : " " + w.clause) + " at " + format_tuple(s, w.elems);
}

InstanceResult skip() { return {Verdict::kSkipped, {}}; }
InstanceResult holds() { return {Verdict::kHolds, {}}; }
InstanceResult fails(std::string w) { return {Verdict::kFails, std::move(w)}; }

/// Map-level facts computed once per mapping and shared by all claims.
struct MapFacts {
  bool hom = false;
  bool omap = false;
  bool surjective = false;
  bool unit_preserving = false;
  bool reflects = false;
  Subset ker;

  bool ohom() const { return hom && omap; }
};

MapFacts facts_of(const Mapping& m) {
  MapFacts f;
  f.hom = is_homomorphism(m);
  f.omap = is_omap(m);
  f.surjective = m.is_surjective();
  f.unit_preserving = m.preserves_unit();
  f.ker = kernel(m);
  f.reflects = f.ker.is_subset_of(m.source().cone());
  return f;
}

bool in_cone_set(const RawStructure& a, const Subset& s) { return s.is_subset_of(a.cone()); }

InstanceResult eval_algebra(ClaimId c, const RawStructure& x, const std::optional<Subset>& s) {
  switch (c) {
    case ClaimId::kIdentities: {
      const CheckReport r = check_derived_identities(x, {1});
      return r.holds ? holds() : fails(first_witness(x, r));
    }
    case ClaimId::kOrdFilterIsFilter: {
      if (!satisfies(x, *s, SubstructureKind::kOrderedFilter) || !in_cone_set(x, *s)) return skip();
      if (satisfies(x, *s, SubstructureKind::kFilter)) return holds();
      return fails(show(x, *s) + " is not a filter: " +
                   first_witness(x, is_filter(x, *s, {1})));
    }
    default:
      break;
  }
  throw PreconditionError("claim " + claim_id(c) + " is not an algebra claim");
}

std::string not_kind(const RawStructure& a, const Subset& s, SubstructureKind k,
                     const std::string& what) {
  return what + " = " + show(a, s) + " is not a " + kind_id(k) + " of " + a.name() + ": " +
         first_witness(a, check_kind(a, s, k, {1}));
}

/// Shared shape of the image/preimage theorems.
InstanceResult transfer(const Mapping& m, const Subset& s, SubstructureKind kind, bool forward) {
  const RawStructure& from = forward ? m.source() : m.target();
  const RawStructure& to = forward ? m.target() : m.source();
  if (!satisfies(from, s, kind)) return skip();
  const Subset t = forward ? image(m, s) : preimage(m, s);
  if (satisfies(to, t, kind)) return holds();
  return fails(not_kind(to, t, kind, forward ? "f(S)" : "f^-1(S)"));
}

InstanceResult eval_bijection(const Mapping& m, const MapFacts& f, bool ordered) {
  if (!f.ohom() || !f.unit_preserving || !f.surjective) return skip();
  const BijectionReport r = filter_bijection(m, ordered);
  return r.bijective ? holds() : fails(r.failures.front());
}

InstanceResult eval_map(ClaimId c, const Mapping& m, const MapFacts& f,
                        const std::optional<Subset>& s) {
  const RawStructure& x = m.source();
  switch (c) {
    case ClaimId::kKernelAlt: {
      const Subset alt = kernel_alt(m);
      if (alt == f.ker) return holds();
      return fails("ker = " + show(x, f.ker) + " but the alternative form gives " + show(x, alt));
    }
    case ClaimId::kMonotone: {
      if (!f.ohom()) return skip();
      const CheckReport r = monotonicity_report(m, {1});
      return r.holds ? holds() : fails(first_witness(x, r));
    }
    case ClaimId::kClosedKernel: {
      if (!f.ohom()) return skip();
      const bool closed = satisfies(x, f.ker, SubstructureKind::kClosedFilter);
      const bool oclosed = satisfies(x, f.ker, SubstructureKind::kClosedOrderedFilter) &&
                           in_cone_set(x, f.ker);
      if (!closed && !oclosed) return skip();
      const CheckReport r = closed_kernel_condition_raw(m, {1});
      if (r.holds) return holds();
      return fails(std::string(closed ? "closed" : "O-closed") + " kernel " + show(x, f.ker) +
                   " violates the condition at x = " + x.label(r.witnesses.front().elems[0]));
    }
    case ClaimId::kKernelClosedConverse: {
      if (!f.ohom() || !f.unit_preserving) return skip();
      if (!closed_kernel_condition_raw(m, {1}).holds) return skip();
      for (auto k : {SubstructureKind::kClosedFilter, SubstructureKind::kClosedOrderedFilter}) {
        if (!satisfies(x, f.ker, k)) return fails(not_kind(x, f.ker, k, "ker(f)"));
      }
      return holds();
    }
    case ClaimId::kKernelFilter:
    case ClaimId::kKernelOrdFilter: {
      if (!f.ohom()) return skip();
      const auto k = c == ClaimId::kKernelFilter ? SubstructureKind::kFilter
                                                 : SubstructureKind::kOrderedFilter;
      return satisfies(x, f.ker, k) ? holds() : fails(not_kind(x, f.ker, k, "ker(f)"));
    }
    case ClaimId::kFilterBijection:
      return eval_bijection(m, f, false);
    case ClaimId::kOrdFilterBijection:
      return eval_bijection(m, f, true);
    case ClaimId::kSubalgPreimage:
      if (!f.ohom()) return skip();
      return transfer(m, *s, SubstructureKind::kSubalgebra, false);
    case ClaimId::kOrdSubalgPreimage:
      if (!f.ohom()) return skip();
      return transfer(m, *s, SubstructureKind::kOrderedSubalgebra, false);
    case ClaimId::kFilterPreimage:
      if (!f.ohom() || !f.unit_preserving) return skip();
      return transfer(m, *s, SubstructureKind::kFilter, false);
    case ClaimId::kOrdFilterPreimage:
      if (!f.ohom() || !f.unit_preserving) return skip();
      return transfer(m, *s, SubstructureKind::kOrderedFilter, false);
    case ClaimId::kSubalgImage:
      if (!f.ohom() || !f.surjective) return skip();
      return transfer(m, *s, SubstructureKind::kSubalgebra, true);
    case ClaimId::kOrdSubalgImageCone:
      if (!f.ohom() || !f.surjective || !in_cone_set(x, *s)) return skip();
      return transfer(m, *s, SubstructureKind::kOrderedSubalgebra, true);
    case ClaimId::kOrdSubalgImageReflect:
      if (!f.ohom() || !f.surjective || !f.reflects) return skip();
      return transfer(m, *s, SubstructureKind::kOrderedSubalgebra, true);
    case ClaimId::kFilterImage:
      if (!f.ohom() || !f.unit_preserving || !f.surjective) return skip();
      return transfer(m, *s, SubstructureKind::kFilter, true);
    case ClaimId::kOrdFilterImageReflect:
      if (!f.ohom() || !f.unit_preserving || !f.surjective || !f.reflects) return skip();
      return transfer(m, *s, SubstructureKind::kOrderedFilter, true);
    case ClaimId::kOrdFilterImageKerCone:
      if (!f.ohom() || !f.unit_preserving || !f.surjective) return skip();
      if (!f.ker.is_subset_of(*s) || !in_cone_set(x, *s)) return skip();
      return transfer(m, *s, SubstructureKind::kOrderedFilter, true);
    default:
      break;
  }
  throw PreconditionError("claim " + claim_id(c) + " is not a mapping claim");
}

InstanceResult eval_product(ClaimId c, const Mapping& f1, const Mapping& f2,
                            const ProductAlgebra& px, const ProductAlgebra& py) {
  if (!is_ohomomorphism(f1) || !is_ohomomorphism(f2)) return skip();
  const Mapping pm = pair_map(px, py, f1, f2);
  const RawStructure& x = *px.combined;
  switch (c) {
    case ClaimId::kPairmapOhom: {
      const MorphismClass mc = classify(pm, {1});
      if (mc.is_ohom()) return holds();
      return fails(first_witness(x, mc.is_hom ? mc.omap : mc.hom));
    }
    case ClaimId::kProductKernel: {
      const ProductKernel pk = direct_product_kernel(f1, f2, {1});
      const Subset k = kernel(pm);
      if (!pk.equivalence.holds) return fails(first_witness(x, pk.equivalence));
      if (k == pk.set) return holds();
      return fails("ker(pair map) = " + show(x, k) + " but ker(f1) x ker(f2) = " +
                   show(x, pk.set));
    }
    case ClaimId::kProductKernelProjection: {
      const Subset k = kernel(pm);
      const Subset k1 = kernel(f1), k2 = kernel(f2);
      try {
        const auto [p1, p2] = projection_kernels(k, px.left->size(), px.right->size());
        if (p1 == k1 && p2 == k2) return holds();
        return fails("projections " + show(*px.left, p1) + ", " + show(*px.right, p2) +
                     " differ from ker(f1) = " + show(*px.left, k1) +
                     ", ker(f2) = " + show(*px.right, k2));
      } catch (const ShapeError& e) {
        return fails("ker(pair map) = " + show(x, k) + " is not rectangular");
      }
    }
    case ClaimId::kKsets: {
      const Subset k1 = kernel(f1), k2 = kernel(f2);
      const KSets ks = k_upper_sets(k1, k2, f1, f2);
      const Elem e = px.encode(px.left->unit(), px.right->unit());
      if (!ks.by_second_unit.contains(e) || !ks.by_first_unit.contains(e)) {
        return fails("unit " + x.label(e) + " missing from a K-set");
      }
      if (!ks.equal) {
        return fails("K-sets differ: " + show(x, ks.by_second_unit) + " vs " +
                     show(x, ks.by_first_unit));
      }
      const Subset k = kernel(pm);
      if (ks.by_second_unit != k) {
        return fails("K-set " + show(x, ks.by_second_unit) + " differs from ker(pair map) = " +
                     show(x, k));
      }
      return holds();
    }
    default:
      break;
  }
  throw PreconditionError("claim " + claim_id(c) + " is not a product claim");
}

std::optional<std::string> not_obci(const StructurePtr& s, const std::string& role) {
  if (!s) return role + " is missing";
  if (!validate(s).ok()) return role + " " + s->name() + " is not an OBCI-algebra";
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Sweep engine.

struct Partial {
  std::uint64_t checked = 0;
  std::uint64_t skipped = 0;
  std::uint64_t failures = 0;
  std::vector<Counterexample> found;
};

template <typename MakeInstance>
void tally(Partial& p, InstanceResult r, std::size_t cap, MakeInstance&& make) {
  switch (r.verdict) {
    case Verdict::kSkipped:
      ++p.skipped;
      return;
    case Verdict::kHolds:
      ++p.checked;
      return;
    case Verdict::kFails:
      ++p.checked;
      ++p.failures;
      if (p.found.size() < cap) p.found.push_back({make(), std::move(r.witness)});
      return;
  }
}

/// Runs `work(unit, partials)` for every unit on `jobs` threads; partials are
/// per claim, merged in unit order.
template <typename Work>
std::vector<Partial> run_units(std::size_t units, std::size_t claims, unsigned jobs, Work&& work) {
  std::vector<std::vector<Partial>> per_unit(units, std::vector<Partial>(claims));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t u; (u = next.fetch_add(1)) < units;) work(u, per_unit[u]);
  };
  const unsigned n = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(units)));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mu;
    for (unsigned t = 0; t < n; ++t) {
      pool.emplace_back([&] {
        try {
          worker();
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
          next.store(units);
        }
      });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }
  std::vector<Partial> merged(claims);
  for (auto& unit : per_unit) {
    for (std::size_t c = 0; c < claims; ++c) {
      merged[c].checked += unit[c].checked;
      merged[c].skipped += unit[c].skipped;
      merged[c].failures += unit[c].failures;
      for (auto& cx : unit[c].found) merged[c].found.push_back(std::move(cx));
    }
  }
  return merged;
}

struct OHom {
  std::size_t src;
  std::size_t dst;
  Mapping map;
};

class Sweeper {
 public:
  Sweeper(std::vector<StructurePtr> universe, const SweepScope& scope)
      : universe_(std::move(universe)), scope_(scope) {}

  std::vector<SweepReport> run(const std::vector<ClaimId>& claims) {
    std::vector<SweepReport> out;
    for (ClaimId c : claims) out.push_back({c, 0, 0, {}, 0});
    std::vector<std::size_t> alg, map, prod;
    for (std::size_t i = 0; i < claims.size(); ++i) {
      switch (shape_of(claims[i])) {
        case Shape::kAlgebra:
        case Shape::kAlgebraSubset:
          alg.push_back(i);
          break;
        case Shape::kProduct:
          prod.push_back(i);
          break;
        default:
          map.push_back(i);
      }
    }
    if (!alg.empty()) absorb(out, alg, sweep_algebras(pick(claims, alg)));
    if (!map.empty()) absorb(out, map, sweep_maps(pick(claims, map)));
    if (!prod.empty()) absorb(out, prod, sweep_products(pick(claims, prod)));
    return out;
  }

  /// First mapping in scan order satisfying `pred`.
  std::optional<Mapping> find_map(const std::function<bool(const Mapping&)>& pred) const {
    std::optional<Mapping> hit;
    for (const auto& x : universe_) {
      for (const auto& y : universe_) {
        for_each_map(x, y, {MapClass::kAll, false, false, scope_.map_budget},
                     [&](const Mapping& m) {
                       if (!pred(m)) return true;
                       hit = m;
                       return false;
                     });
        if (hit) return hit;
      }
    }
    return hit;
  }

 private:
  static std::vector<ClaimId> pick(const std::vector<ClaimId>& all,
                                   const std::vector<std::size_t>& idx) {
    std::vector<ClaimId> out;
    for (auto i : idx) out.push_back(all[i]);
    return out;
  }

  void absorb(std::vector<SweepReport>& out, const std::vector<std::size_t>& idx,
              std::vector<Partial> parts) const {
    for (std::size_t k = 0; k < idx.size(); ++k) {
      SweepReport& r = out[idx[k]];
      r.instances_checked = parts[k].checked;
      r.hypothesis_skipped = parts[k].skipped;
      r.failures = parts[k].failures;
      auto& found = parts[k].found;
      if (found.size() > scope_.counterexample_cap) found.resize(scope_.counterexample_cap);
      r.counterexamples = std::move(found);
    }
  }

  std::vector<Partial> sweep_algebras(const std::vector<ClaimId>& claims) const {
    const std::size_t cap = scope_.counterexample_cap;
    return run_units(universe_.size(), claims.size(), scope_.jobs,
                     [&](std::size_t u, std::vector<Partial>& parts) {
                       const StructurePtr& x = universe_[u];
                       for (std::size_t c = 0; c < claims.size(); ++c) {
                         if (shape_of(claims[c]) == Shape::kAlgebra) {
                           tally(parts[c], eval_algebra(claims[c], *x, std::nullopt), cap,
                                 [&] { return Instance{x, {}, {}, {}, {}, {}, {}}; });
                           continue;
                         }
                         for (std::uint64_t b = 0; b <= Subset::full_mask(x->size()); ++b) {
                           const Subset s{x->size(), b};
                           tally(parts[c], eval_algebra(claims[c], *x, s), cap,
                                 [&] { return Instance{x, {}, {}, {}, {}, {}, s}; });
                         }
                       }
                     });
  }

  std::vector<Partial> sweep_maps(const std::vector<ClaimId>& claims) const {
    const std::size_t cap = scope_.counterexample_cap;
    const std::size_t n = universe_.size();
    return run_units(n * n, claims.size(), scope_.jobs,
                     [&](std::size_t u, std::vector<Partial>& parts) {
                       const StructurePtr& x = universe_[u / n];
                       const StructurePtr& y = universe_[u % n];
                       for_each_map(x, y, {MapClass::kAll, false, false, scope_.map_budget},
                                    [&](const Mapping& m) {
                                      visit_map(claims, m, parts, cap);
                                      return true;
                                    });
                     });
  }

  static void visit_map(const std::vector<ClaimId>& claims, const Mapping& m,
                        std::vector<Partial>& parts, std::size_t cap) {
    const MapFacts f = facts_of(m);
    const auto& x = m.source_ptr();
    const auto& y = m.target_ptr();
    for (std::size_t c = 0; c < claims.size(); ++c) {
      const Shape shape = shape_of(claims[c]);
      if (shape == Shape::kMap) {
        tally(parts[c], eval_map(claims[c], m, f, std::nullopt), cap,
              [&] { return Instance{x, y, m.table(), {}, {}, {}, {}}; });
        continue;
      }
      const std::size_t k = shape == Shape::kMapSourceSubset ? x->size() : y->size();
      const std::uint64_t subsets = std::uint64_t{1} << k;
      if (!f.ohom()) {
        parts[c].skipped += subsets;
        continue;
      }
      for (std::uint64_t b = 0; b < subsets; ++b) {
        const Subset s{k, b};
        tally(parts[c], eval_map(claims[c], m, f, s), cap, [&] {
          return Instance{x, y, m.table(), {}, {}, {}, s, shape == Shape::kMapTargetSubset};
        });
      }
    }
  }

  std::vector<Partial> sweep_products(const std::vector<ClaimId>& claims) {
    const std::size_t cap = scope_.counterexample_cap;
    const std::size_t n = universe_.size();
    std::vector<OHom> homs;
    std::uint64_t non_ohom = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for_each_map(universe_[i], universe_[j], {MapClass::kAll, false, false, scope_.map_budget},
                     [&](const Mapping& m) {
                       if (is_ohomomorphism(m)) {
                         homs.push_back({i, j, m});
                       } else {
                         ++non_ohom;
                       }
                       return true;
                     });
      }
    }
    products_.assign(n * n, std::nullopt);
    product_once_ = std::vector<std::once_flag>(n * n);
    auto parts = run_units(homs.size(), claims.size(), scope_.jobs,
                           [&](std::size_t u, std::vector<Partial>& parts) {
                             const OHom& a = homs[u];
                             for (const OHom& b : homs) {
                               const CachedProduct& px = product(a.src, b.src);
                               const CachedProduct& py = product(a.dst, b.dst);
                               for (std::size_t c = 0; c < claims.size(); ++c) {
                                 if (!px.valid || !py.valid) {
                                   ++parts[c].skipped;
                                   continue;
                                 }
                                 tally(parts[c],
                                       eval_product(claims[c], a.map, b.map, px.algebra,
                                                    py.algebra),
                                       cap, [&] {
                                         return Instance{a.map.source_ptr(), a.map.target_ptr(),
                                                         a.map.table(),      b.map.source_ptr(),
                                                         b.map.target_ptr(), b.map.table(),
                                                         {}};
                                       });
                               }
                             }
                           });
    // Pairs with a component outside the O-homomorphisms are skipped by hypothesis.
    const std::uint64_t all_maps = non_ohom + homs.size();
    const std::uint64_t skipped_pairs = all_maps * all_maps - homs.size() * homs.size();
    for (auto& p : parts) p.skipped += skipped_pairs;
    return parts;
  }

  struct CachedProduct {
    ProductAlgebra algebra;
    bool valid = false;
  };

  const CachedProduct& product(std::size_t i, std::size_t j) {
    const std::size_t k = i * universe_.size() + j;
    std::call_once(product_once_[k], [&] {
      ProductAlgebra p = make_product(universe_[i], universe_[j]);
      const bool ok = validate(p.combined).ok();
      products_[k] = CachedProduct{std::move(p), ok};
    });
    return *products_[k];
  }

  std::vector<StructurePtr> universe_;
  SweepScope scope_;
  std::vector<std::optional<CachedProduct>> products_;
  std::vector<std::once_flag> product_once_;
};

enum class MapQuery { kHomNotOmap, kOmapNotHom };

std::optional<MapQuery> parse_map_query(std::string_view q) {
  if (q == "hom-not-omap") return MapQuery::kHomNotOmap;
  if (q == "omap-not-hom") return MapQuery::kOmapNotHom;
  return std::nullopt;
}

bool matches(MapQuery q, const Mapping& m) {
  const bool hom = is_homomorphism(m);
  const bool om = is_omap(m);
  return q == MapQuery::kHomNotOmap ? hom && !om : om && !hom;
}

std::string describe_map_hit(const Mapping& m) {
  const MorphismClass c = classify(m, {1});
  std::string out = "map " + (m.name().empty() ? std::string() : m.name() + " : ") +
                    m.source().name() + " -> " + m.target().name() + " " + show_map(m);
  out += c.is_hom ? "; homomorphism" : "; not a homomorphism, " + first_witness(m.source(), c.hom);
  out += c.is_omap ? "; O-map" : "; not an O-map, " + first_witness(m.source(), c.omap);
  return out;
}

SearchResult search_claim(ClaimId c, const SweepScope& scope) {
  SweepScope s = scope;
  s.counterexample_cap = 1;
  const SweepReport r = verify_claim(c, s);
  if (r.counterexamples.empty()) return {false, "no counterexample to " + claim_id(c), {}};
  const Counterexample& cx = r.counterexamples.front();
  std::optional<Mapping> m;
  if (cx.instance.x && cx.instance.y && !cx.instance.map.empty()) {
    m.emplace(cx.instance.x, cx.instance.y, cx.instance.map);
  }
  return {true, claim_id(c) + ": " + cx.describe(), std::move(m)};
}

}  // namespace

const std::vector<ClaimId>& all_claims() {
  static const std::vector<ClaimId> all = [] {
    std::vector<ClaimId> v;
    for (const auto& c : kClaims) v.push_back(c.id);
    return v;
  }();
  return all;
}

std::string claim_id(ClaimId c) { return kClaims[static_cast<std::size_t>(c)].name; }

std::string claim_statement(ClaimId c) { return kClaims[static_cast<std::size_t>(c)].statement; }

std::optional<ClaimId> parse_claim(std::string_view id) {
  for (const auto& c : kClaims)
    if (id == c.name) return c.id;
  return std::nullopt;
}

InstanceResult check_instance(ClaimId c, const Instance& inst) {
  const Shape shape = shape_of(c);
  const bool needs_subset = shape == Shape::kAlgebraSubset || shape == Shape::kMapSourceSubset ||
                            shape == Shape::kMapTargetSubset;
  if (needs_subset && !inst.subset) {
    throw PreconditionError("claim " + claim_id(c) + " needs a subset");
  }
  if (auto bad = not_obci(inst.x, "X")) return {Verdict::kSkipped, *bad};
  if (shape == Shape::kAlgebra || shape == Shape::kAlgebraSubset) {
    if (needs_subset) inst.x->full_set().same_universe(*inst.subset);
    return eval_algebra(c, *inst.x, inst.subset);
  }
  if (auto bad = not_obci(inst.y, "Y")) return {Verdict::kSkipped, *bad};
  const Mapping m(inst.x, inst.y, inst.map);
  if (shape != Shape::kProduct) {
    if (shape == Shape::kMapSourceSubset) inst.x->full_set().same_universe(*inst.subset);
    if (shape == Shape::kMapTargetSubset) inst.y->full_set().same_universe(*inst.subset);
    return eval_map(c, m, facts_of(m), inst.subset);
  }
  if (auto bad = not_obci(inst.x2, "X2")) return {Verdict::kSkipped, *bad};
  if (auto bad = not_obci(inst.y2, "Y2")) return {Verdict::kSkipped, *bad};
  const Mapping m2(inst.x2, inst.y2, inst.map2);
  const ProductAlgebra px = make_product(inst.x, inst.x2);
  const ProductAlgebra py = make_product(inst.y, inst.y2);
  if (!validate(px.combined).ok()) return {Verdict::kSkipped, "X1 x X2 is not an OBCI-algebra"};
  if (!validate(py.combined).ok()) return {Verdict::kSkipped, "Y1 x Y2 is not an OBCI-algebra"};
  return eval_product(c, m, m2, px, py);
}

std::string Counterexample::describe() const {
  const Instance& i = instance;
  std::ostringstream out;
  if (!i.y) {
    out << "X = " << i.x->name();
    if (i.subset) out << ", S = " << format_set(*i.x, *i.subset);
  } else if (!i.x2) {
    const Mapping m(i.x, i.y, i.map);
    out << "f : " << i.x->name() << " -> " << i.y->name() << " " << show_map(m);
    if (i.subset) {
      const RawStructure& host = i.subset_in_target ? *i.y : *i.x;
      out << ", S = " << format_set(host, *i.subset);
    }
  } else {
    const Mapping f1(i.x, i.y, i.map), f2(i.x2, i.y2, i.map2);
    out << "f1 : " << i.x->name() << " -> " << i.y->name() << " " << show_map(f1) << ", f2 : "
        << i.x2->name() << " -> " << i.y2->name() << " " << show_map(f2);
  }
  out << "; " << witness;
  return out.str();
}

std::vector<StructurePtr> scope_universe(const SweepScope& scope) {
  std::vector<StructurePtr> out;
  for (std::size_t n : scope.sizes) {
    EnumOptions opts;
    opts.up_to_iso = scope.up_to_iso;
    opts.jobs = scope.jobs;
    for (const auto& a : enumerate_obci(n, opts)) out.push_back(a.shared());
  }
  if (scope.fixtures) {
    for (const auto& f : fixtures::algebras()) {
      StructurePtr s = fixtures::algebra(f.name);
      if (validate(s).ok()) out.push_back(s);
    }
  }
  return out;
}

SweepReport verify_claim(ClaimId c, const SweepScope& scope) {
  return Sweeper(scope_universe(scope), scope).run({c}).front();
}

std::vector<SweepReport> verify_all(const SweepScope& scope) {
  return Sweeper(scope_universe(scope), scope).run(all_claims());
}

std::string format_sweep_line(const SweepReport& r) {
  return "CLAIM " + claim_id(r.claim) + (r.verified() ? " VERIFIED" : " FALSIFIED") +
         " checked=" + std::to_string(r.instances_checked) +
         " skipped=" + std::to_string(r.hypothesis_skipped) +
         " counterexamples=" + std::to_string(r.failures);
}

BijectionReport filter_bijection(const Mapping& f, bool ordered) {
  const RawStructure& x = f.source();
  const RawStructure& y = f.target();
  const auto kind = ordered ? SubstructureKind::kOrderedFilter : SubstructureKind::kFilter;
  const Subset ker = kernel(f);
  BijectionReport r;
  for (const Subset& s : enumerate_substructures(x, kind)) {
    if (!ker.is_subset_of(s)) continue;
    if (ordered && !in_cone_set(x, s)) continue;
    r.sources.push_back(s);
  }
  r.targets = enumerate_substructures(y, kind);
  const std::string family = ordered ? "ordered filters" : "filters";
  auto in = [](const std::vector<Subset>& fam, const Subset& s) {
    return std::find(fam.begin(), fam.end(), s) != fam.end();
  };
  for (const Subset& s : r.sources) {
    const Subset img = image(f, s);
    r.images.push_back(img);
    if (!in(r.targets, img)) {
      r.failures.push_back("f(" + format_set(x, s) + ") = " + format_set(y, img) +
                           " is not among the " + family + " of " + y.name());
    }
    const Subset back = preimage(f, img);
    if (back != s) {
      r.failures.push_back("f^-1(f(" + format_set(x, s) + ")) = " + format_set(x, back));
    }
  }
  for (const Subset& g : r.targets) {
    const Subset pre = preimage(f, g);
    if (!in(r.sources, pre)) {
      r.failures.push_back("f^-1(" + format_set(y, g) + ") = " + format_set(x, pre) +
                           " is outside the source family");
    }
    const Subset there = image(f, pre);
    if (there != g) {
      r.failures.push_back("f(f^-1(" + format_set(y, g) + ")) = " + format_set(y, there));
    }
  }
  if (r.sources.size() != r.targets.size()) {
    r.failures.push_back("family sizes differ: " + std::to_string(r.sources.size()) + " vs " +
                         std::to_string(r.targets.size()));
  }
  r.bijective = r.failures.empty();
  return r;
}

bool is_known_query(std::string_view query) {
  return parse_map_query(query).has_value() || parse_claim(query).has_value();
}

SearchResult search_fixtures(std::string_view query) {
  if (auto c = parse_claim(query)) {
    SweepScope s;
    s.fixtures = true;
    return search_claim(*c, s);
  }
  const auto q = parse_map_query(query);
  if (!q) throw PreconditionError("unknown query '" + std::string(query) + "'");
  for (const auto& mf : fixtures::maps()) {
    const Mapping m = fixtures::map(mf.name);
    if (matches(*q, m)) return {true, describe_map_hit(m), m};
  }
  std::vector<StructurePtr> algebras;
  for (const auto& af : fixtures::algebras()) algebras.push_back(fixtures::algebra(af.name));
  SweepScope s;
  Sweeper sweeper(algebras, s);
  if (auto m = sweeper.find_map([&](const Mapping& m) { return matches(*q, m); })) {
    return {true, describe_map_hit(*m), m};
  }
  return {false, "no fixture map or map between fixture algebras matches " + std::string(query),
          {}};
}

SearchResult search_sizes(std::string_view query, const SweepScope& scope) {
  if (auto c = parse_claim(query)) return search_claim(*c, scope);
  const auto q = parse_map_query(query);
  if (!q) throw PreconditionError("unknown query '" + std::string(query) + "'");
  Sweeper sweeper(scope_universe(scope), scope);
  if (auto m = sweeper.find_map([&](const Mapping& m) { return matches(*q, m); })) {
    return {true, describe_map_hit(*m), m};
  }
  return {false, "no map in scope matches " + std::string(query), {}};
}

}  // namespace obci
