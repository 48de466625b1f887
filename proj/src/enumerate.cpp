#include "obci/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

namespace obci {

namespace {

constexpr Elem kUnset = 0xFF;

// Partial assignment of an operation table with the unit (index 0) row fixed.
// `cone` is the candidate positive cone; the relation is x <= y iff
// op(x, y) is in the cone, so the order axiom holds by construction.
struct Search {
  std::size_t n;
  std::uint64_t cone;
  std::vector<Elem> t;

  bool pos(Elem v) const { return (cone >> v) & 1U; }
  Elem at(Elem a, Elem b) const { return t[a * n + b]; }

  // Rejects the partial table as soon as any axiom instance is decided false.
  bool consistent() const {
    const auto m = static_cast<Elem>(n);
    for (Elem x = 0; x < m; ++x) {
      const Elem xx = at(x, x);
      if (xx != kUnset && !pos(xx)) return false;  // OBCI-3
      for (Elem y = 0; y < m; ++y) {
        const Elem xy = at(x, y);
        if (xy == kUnset) continue;
        if (x != y && pos(xy)) {
          const Elem yx = at(y, x);
          if (yx != kUnset && pos(yx)) return false;  // OBCI-4
        }
        if (pos(x) && pos(xy) && !pos(y)) return false;  // OBCI-6
        const Elem b = at(xy, y);
        if (b != kUnset) {
          const Elem c = at(x, b);
          if (c != kUnset && !pos(c)) return false;  // OBCI-2
        }
        for (Elem z = 0; z < m; ++z) {  // OBCI-1
          const Elem yz = at(y, z), xz = at(x, z);
          if (yz == kUnset || xz == kUnset) continue;
          const Elem d = at(yz, xz);
          if (d == kUnset) continue;
          const Elem f = at(xy, d);
          if (f != kUnset && !pos(f)) return false;
        }
      }
    }
    return true;
  }
};

struct Task {
  std::uint64_t cone;
  Elem first_value;
};

struct Shared {
  std::atomic<std::uint64_t> nodes{0};
  std::uint64_t budget;
  std::atomic<bool> over_budget{false};
};

std::vector<Elem> permuted_encoding(const RawStructure& s, const std::vector<Elem>& perm) {
  const std::size_t n = s.size();
  std::vector<Elem> enc(2 * n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto a = static_cast<Elem>(i), b = static_cast<Elem>(j);
      enc[perm[i] * n + perm[j]] = perm[s.op(a, b)];
      enc[n * n + perm[i] * n + perm[j]] = s.leq(a, b) ? 1 : 0;
    }
  }
  return enc;
}

template <typename F>
void for_each_unit_fixing_perm(const RawStructure& s, F&& f) {
  const std::size_t n = s.size();
  // perm maps old index -> new index; the unit goes to 0.
  std::vector<Elem> others;
  for (std::size_t i = 0; i < n; ++i)
    if (i != s.unit()) others.push_back(static_cast<Elem>(i));
  std::vector<Elem> slots(others.size());
  std::iota(slots.begin(), slots.end(), Elem{1});
  std::vector<Elem> perm(n);
  perm[s.unit()] = 0;
  do {
    for (std::size_t k = 0; k < others.size(); ++k) perm[others[k]] = slots[k];
    if (!f(perm)) return;
  } while (std::next_permutation(slots.begin(), slots.end()));
}

void run_task(std::size_t n, const Task& task, Shared& shared,
              std::vector<std::vector<Elem>>& out) {
  Search s{n, task.cone, std::vector<Elem>(n * n, kUnset)};
  for (std::size_t j = 0; j < n; ++j) s.t[j] = static_cast<Elem>(j);
  const std::size_t first = n;  // first free cell: row 1, column 0
  s.t[first] = task.first_value;
  if (!s.consistent()) return;

  const std::size_t cells = n * n;
  std::size_t k = first + 1;
  if (k == cells) {
    out.push_back(s.t);
    return;
  }
  std::uint64_t local = 0;
  // Iterative backtracking over cells [first + 1, cells).
  while (k > first) {
    if (++local == 4096) {
      if (shared.nodes.fetch_add(local) + local > shared.budget) {
        shared.over_budget = true;
      }
      local = 0;
      if (shared.over_budget) return;
    }
    Elem& cell = s.t[k];
    cell = cell == kUnset ? 0 : static_cast<Elem>(cell + 1);
    if (cell >= n) {
      cell = kUnset;
      --k;
      continue;
    }
    if (!s.consistent()) continue;
    if (k + 1 == cells) {
      out.push_back(s.t);
    } else {
      ++k;
    }
  }
  if (shared.nodes.fetch_add(local) + local > shared.budget) shared.over_budget = true;
}

}  // namespace

std::vector<Elem> structure_encoding(const RawStructure& s) {
  std::vector<Elem> id(s.size());
  std::iota(id.begin(), id.end(), Elem{0});
  return permuted_encoding(s, id);
}

std::vector<Elem> canonical_encoding(const RawStructure& s) {
  std::vector<Elem> best;
  for_each_unit_fixing_perm(s, [&](const std::vector<Elem>& perm) {
    auto enc = permuted_encoding(s, perm);
    if (best.empty() || enc < best) best = std::move(enc);
    return true;
  });
  return best;
}

bool is_canonical(const RawStructure& s) {
  if (s.unit() != 0) return false;
  const auto own = structure_encoding(s);
  bool minimal = true;
  for_each_unit_fixing_perm(s, [&](const std::vector<Elem>& perm) {
    if (permuted_encoding(s, perm) < own) minimal = false;
    return minimal;
  });
  return minimal;
}

bool isomorphic(const RawStructure& a, const RawStructure& b) {
  return a.size() == b.size() && canonical_encoding(a) == canonical_encoding(b);
}

std::vector<ValidatedAlgebra> enumerate_obci(std::size_t n, const EnumOptions& opts) {
  if (n == 0) throw PreconditionError("carrier size must be positive");
  if (n > opts.max_size) {
    throw BudgetError("enumeration at size " + std::to_string(n) + " exceeds the size budget " +
                      std::to_string(opts.max_size));
  }
  if (n > 8) throw BudgetError("enumeration beyond size 8 is not supported");

  std::vector<std::vector<Elem>> tables;
  std::vector<std::uint64_t> table_cones;

  if (n == 1) {
    tables.push_back({0});
    table_cones.push_back(1);
  } else {
    std::vector<Task> tasks;
    for (std::uint64_t rest = 0; rest < (std::uint64_t{1} << (n - 1)); ++rest) {
      const std::uint64_t cone = (rest << 1) | 1U;
      for (std::size_t v = 0; v < n; ++v) tasks.push_back({cone, static_cast<Elem>(v)});
    }
    Shared shared;
    shared.budget = opts.node_budget;
    std::vector<std::vector<std::vector<Elem>>> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < tasks.size(); i = next++) {
        run_task(n, tasks[i], shared, results[i]);
      }
    };
    const unsigned jobs = std::max(1U, opts.jobs);
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    if (shared.over_budget) {
      std::size_t done = 0;
      for (const auto& r : results) done += r.size();
      throw BudgetError("enumeration at size " + std::to_string(n) + " stopped after " +
                        std::to_string(shared.nodes.load()) + " search nodes (budget " +
                        std::to_string(opts.node_budget) + "); " + std::to_string(done) +
                        " algebras found so far");
    }
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      for (auto& t : results[i]) {
        tables.push_back(std::move(t));
        table_cones.push_back(tasks[i].cone);
      }
    }
  }

  std::vector<ValidatedAlgebra> out;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    const Subset cone(n, table_cones[i]);
    auto order = order_from_cone(tables[i], n, 0, cone);
    auto s = RawStructure::from_tables("obci" + std::to_string(n), n, std::move(tables[i]), 0,
                                       std::move(order));
    if (opts.up_to_iso && !is_canonical(s)) continue;
    auto named = std::make_shared<const RawStructure>(
        s.renamed("obci" + std::to_string(n) + "-" + std::to_string(out.size())));
    ValidationResult v = validate(named);
    if (!v.ok()) {
      throw std::logic_error("enumerator produced a structure failing " + v.failure().law);
    }
    out.push_back(std::move(*v.algebra));
  }
  return out;
}

}  // namespace obci
