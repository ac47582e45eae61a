#include "spreadlab/domination.hpp"

#include <algorithm>
#include <bit>
#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include <boost/functional/hash.hpp>

#include "spreadlab/actions.hpp"

namespace spl {

namespace {

template <class F>
void for_each_bit(const Bits& b, F&& f) {
  for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) f(i);
}

std::size_t bits_hash(const Bits& b) {
  std::vector<std::uint64_t> blocks;
  boost::to_block_range(b, std::back_inserter(blocks));
  return boost::hash_range(blocks.begin(), blocks.end());
}

void run_striped(unsigned threads, std::size_t count, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += threads) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

// ---------------------------------------------------------------- table

GenTable GenTable::build(const PermGroup& G, const ClassIndex& CI, const DomOptions& opt) {
  if (G.order() > bigint(opt.element_cap))
    throw cap_exceeded("generation table: |G| = " + G.order().str() + " exceeds cap " +
                       std::to_string(opt.element_cap));
  GenTable T;
  T.G_ = G;
  T.CI_ = CI;
  T.elems_ = G.elements(opt.element_cap);
  const std::size_t N = T.elems_.size();
  T.id_rank_ = G.rank(Perm::identity(G.degree()));

  T.cls_.resize(N);
  if (CI.mode() == ClassMode::enumerate) {
    for (std::size_t r = 0; r < N; ++r) T.cls_[r] = CI.class_of_rank(r);
  } else {
    for (std::size_t r = 0; r < N; ++r) T.cls_[r] = static_cast<std::uint32_t>(CI.class_of(T.elems_[r]));
  }
  T.members_.assign(CI.classes().size(), {});
  for (std::size_t r = 0; r < N; ++r) T.members_[T.cls_[r]].push_back(r);

  // cyclic subgroup canonical generator = least rank among its generators
  const std::size_t unset = SIZE_MAX;
  std::vector<std::size_t> cyc(N, unset);
  std::vector<std::uint64_t> ord(N, 1);
  for (std::size_t r = 0; r < N; ++r) {
    if (cyc[r] != unset) continue;
    const Perm& x = T.elems_[r];
    const std::uint64_t o = element_order(x);
    std::vector<std::size_t> gens;
    for (std::uint64_t j = 1; j <= o; ++j)
      if (std::gcd(j, o) == 1) gens.push_back(j == 1 ? r : G.rank(x.pow(static_cast<long long>(j))));
    const std::size_t c = *std::min_element(gens.begin(), gens.end());
    for (auto g : gens) {
      cyc[g] = c;
      ord[g] = o;
    }
  }

  std::vector<std::size_t> breaker_of(N, unset);
  for (std::size_t r = 0; r < N; ++r)
    if (is_prime_u64(ord[r]) && cyc[r] == r) {
      breaker_of[r] = T.breakers_.size();
      T.breakers_.push_back(r);
    }
  for (std::size_t r = 0; r < N; ++r)
    if (is_prime_u64(ord[r])) breaker_of[r] = breaker_of[cyc[r]];

  // conjugation by each generator, on ranks
  const auto& gens = G.generators();
  std::vector<std::vector<std::uint32_t>> cm(gens.size(), std::vector<std::uint32_t>(N));
  for (std::size_t gi = 0; gi < gens.size(); ++gi)
    for (std::size_t r = 0; r < N; ++r)
      cm[gi][r] = static_cast<std::uint32_t>(G.rank(T.elems_[r].conj(gens[gi])));

  // orbits of the breaker subgroups under conjugation, BFS tree for transport
  const std::size_t B = T.breakers_.size();
  T.orbit_.assign(B, unset);
  std::vector<std::size_t> parent(B, unset), via(B, 0), order_bfs;
  for (std::size_t b0 = 0; b0 < B; ++b0) {
    if (T.orbit_[b0] != unset) continue;
    const std::size_t oid = T.orbit_reps_.size();
    T.orbit_reps_.push_back(b0);
    T.orbit_[b0] = oid;
    std::size_t head = order_bfs.size();
    order_bfs.push_back(b0);
    while (head < order_bfs.size()) {
      std::size_t b = order_bfs[head++];
      for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        std::size_t nb = breaker_of[cm[gi][T.breakers_[b]]];
        if (T.orbit_[nb] != unset) continue;
        T.orbit_[nb] = oid;
        parent[nb] = b;
        via[nb] = gi;
        order_bfs.push_back(nb);
      }
    }
  }

  // rows of the orbit representatives by generation tests, one per cyclic subgroup
  std::vector<std::size_t> canon;
  for (std::size_t r = 0; r < N; ++r)
    if (cyc[r] == r && r != T.id_rank_) canon.push_back(r);
  const std::uint64_t need = static_cast<std::uint64_t>(canon.size()) * T.orbit_reps_.size();
  if (need > opt.budget)
    throw budget_exceeded("generation table needs " + std::to_string(need) + " generation tests, budget " +
                          std::to_string(opt.budget));
  T.rows_.assign(B, Bits(N));
  for (std::size_t b0 : T.orbit_reps_) {
    const Perm& x = T.elems_[T.breakers_[b0]];
    std::vector<char> fails(N, 0);
    run_striped(opt.threads, canon.size(), [&](std::size_t i) {
      fails[canon[i]] = !generates_unchecked(G, x, T.elems_[canon[i]]);
    });
    Bits& row = T.rows_[b0];
    for (std::size_t r = 0; r < N; ++r)
      if (r == T.id_rank_ || fails[cyc[r]]) row.set(r);
    T.tests_ += canon.size();
  }
  // z in N(x) iff z^g in N(x^g)
  for (std::size_t b : order_bfs) {
    if (parent[b] == unset) continue;
    const auto& map = cm[via[b]];
    Bits& row = T.rows_[b];
    for_each_bit(T.rows_[parent[b]], [&](std::size_t r) { row.set(map[r]); });
  }
  return T;
}

NonGenMatrix nongen_matrix(const GenTable& T, const std::vector<std::size_t>& candidates) {
  NonGenMatrix M;
  M.candidates = candidates;
  for (std::size_t b = 0; b < T.num_breakers(); ++b) {
    M.breakers.push_back(b);
    Bits row(candidates.size());
    const Bits& full = T.nongen(b);
    for (std::size_t i = 0; i < candidates.size(); ++i)
      if (full.test(candidates[i])) row.set(i);
    M.rows.push_back(std::move(row));
  }
  return M;
}

// ---------------------------------------------------------------- cover search

namespace {

struct Reduced {
  std::size_t universe = 0;
  std::vector<Bits> sets;          // over the reduced universe
  std::vector<std::size_t> orig;   // reduced set -> original set
  std::vector<std::size_t> repl;   // original set -> reduced set dominating it, SIZE_MAX if none
  bool infeasible = false;
};

std::vector<Bits> columns(const std::vector<Bits>& sets, std::size_t universe) {
  std::vector<Bits> col(universe, Bits(sets.size()));
  for (std::size_t j = 0; j < sets.size(); ++j) for_each_bit(sets[j], [&](std::size_t e) { col[e].set(j); });
  return col;
}

// keep one copy of each distinct bitset, drop those strictly inside another;
// keep[i] is the surviving index covering item i
std::vector<std::size_t> reduce_family(const std::vector<Bits>& fam, bool supersets_win, std::size_t dom_limit) {
  const std::size_t m = fam.size();
  std::vector<std::size_t> keep(m, SIZE_MAX);
  std::unordered_map<std::size_t, std::vector<std::size_t>> by_hash;
  std::vector<std::size_t> uniq;
  for (std::size_t i = 0; i < m; ++i) {
    auto& bucket = by_hash[bits_hash(fam[i])];
    for (std::size_t u : bucket)
      if (fam[u] == fam[i]) {
        keep[i] = u;
        break;
      }
    if (keep[i] == SIZE_MAX) {
      keep[i] = i;
      bucket.push_back(i);
      uniq.push_back(i);
    }
  }
  if (uniq.size() > dom_limit) return keep;
  std::vector<std::size_t> cnt(m);
  for (std::size_t u : uniq) cnt[u] = fam[u].count();
  // supersets_win: a set inside a larger one is dropped (sets);
  // otherwise an item whose column contains a smaller column is dropped (elements)
  std::sort(uniq.begin(), uniq.end(), [&](std::size_t a, std::size_t b) {
    return supersets_win ? cnt[a] > cnt[b] : cnt[a] < cnt[b];
  });
  std::vector<std::size_t> kept;
  std::vector<std::size_t> target(m, SIZE_MAX);
  for (std::size_t u : uniq) {
    std::size_t dom = SIZE_MAX;
    for (std::size_t k : kept) {
      bool hit = supersets_win ? fam[u].is_subset_of(fam[k]) : fam[k].is_subset_of(fam[u]);
      if (hit) {
        dom = k;
        break;
      }
    }
    if (dom == SIZE_MAX) {
      kept.push_back(u);
      target[u] = u;
    } else {
      target[u] = dom;
    }
  }
  for (std::size_t i = 0; i < m; ++i) keep[i] = target[keep[i]];
  return keep;
}

Reduced reduce(const CoverProblem& P) {
  constexpr std::size_t kDomLimit = 6000;
  Reduced R;
  std::vector<Bits> sets = P.sets;
  std::vector<std::size_t> cur_orig(sets.size());
  std::iota(cur_orig.begin(), cur_orig.end(), 0);
  R.repl.resize(P.sets.size());
  std::iota(R.repl.begin(), R.repl.end(), 0);  // original -> index into cur sets
  std::size_t universe = P.universe;
  for (int round = 0; round < 3; ++round) {
    bool changed = false;
    // elements
    auto col = columns(sets, universe);
    for (const auto& c : col)
      if (c.none()) {
        R.infeasible = true;
        return R;
      }
    auto ek = reduce_family(col, false, kDomLimit);
    std::vector<std::size_t> keep_e;
    for (std::size_t e = 0; e < universe; ++e)
      if (ek[e] == e) keep_e.push_back(e);
    if (keep_e.size() != universe) changed = true;
    std::vector<Bits> nsets(sets.size(), Bits(keep_e.size()));
    for (std::size_t i = 0; i < keep_e.size(); ++i)
      for_each_bit(col[keep_e[i]], [&](std::size_t j) { nsets[j].set(i); });
    universe = keep_e.size();
    // sets
    auto sk = reduce_family(nsets, true, kDomLimit);
    std::vector<std::size_t> idx(nsets.size(), SIZE_MAX);
    std::vector<Bits> kept;
    std::vector<std::size_t> korig;
    for (std::size_t j = 0; j < nsets.size(); ++j)
      if (sk[j] == j && nsets[j].any()) {
        idx[j] = kept.size();
        kept.push_back(nsets[j]);
        korig.push_back(cur_orig[j]);
      }
    if (kept.size() != nsets.size()) changed = true;
    for (auto& r : R.repl) {
      if (r == SIZE_MAX) continue;
      std::size_t t = sk[r];
      r = idx[t];
    }
    sets = std::move(kept);
    cur_orig = std::move(korig);
    if (!changed) break;
  }
  R.universe = universe;
  R.sets = std::move(sets);
  R.orig = std::move(cur_orig);
  return R;
}

// flat word arrays: the inner loops run on raw 64-bit blocks
struct Searcher {
  const Reduced& R;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  std::size_t U, W, NS, WS;
  std::vector<std::uint64_t> sw;    // set j at sw[j*W ..]
  std::vector<std::vector<std::uint32_t>> col;
  std::vector<std::uint64_t> colw;  // element e's sets at colw[e*WS ..]
  std::vector<std::size_t> order;   // elements by increasing column count
  std::size_t max_set = 0;
  std::vector<std::uint64_t> buf, used;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> best_at, cur_at;
  std::vector<std::size_t> chosen;

  Searcher(const Reduced& r, std::uint64_t b)
      : R(r), budget(b), U(r.universe), W((r.universe + 63) / 64), NS(r.sets.size()), WS((r.sets.size() + 63) / 64) {
    sw.assign(NS * W, 0);
    col.assign(U, {});
    colw.assign(U * WS, 0);
    for (std::size_t j = 0; j < NS; ++j) {
      for_each_bit(R.sets[j], [&](std::size_t e) {
        sw[j * W + e / 64] |= std::uint64_t{1} << (e % 64);
        col[e].push_back(static_cast<std::uint32_t>(j));
        colw[e * WS + j / 64] |= std::uint64_t{1} << (j % 64);
      });
      max_set = std::max(max_set, R.sets[j].count());
    }
    order.resize(U);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return col[x].size() < col[y].size(); });
    used.assign(WS, 0);
  }

  void reserve(std::size_t depth) {
    buf.assign((depth + 2) * W, 0);
    best_at.assign(depth + 2, {});
    cur_at.assign(depth + 2, {});
  }
  std::uint64_t* level(std::size_t l) { return buf.data() + l * W; }
  static bool test(const std::uint64_t* b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1; }
  std::size_t count(const std::uint64_t* b) const {
    std::size_t c = 0;
    for (std::size_t w = 0; w < W; ++w) c += static_cast<std::size_t>(std::popcount(b[w]));
    return c;
  }
  std::size_t gain(const std::uint64_t* unc, std::size_t j) const {
    const std::uint64_t* s = sw.data() + j * W;
    std::size_t c = 0;
    for (std::size_t w = 0; w < W; ++w) c += static_cast<std::size_t>(std::popcount(s[w] & unc[w]));
    return c;
  }
  void fill_all(std::uint64_t* b) const {
    for (std::size_t w = 0; w < W; ++w) b[w] = ~std::uint64_t{0};
    if (U % 64) b[W - 1] = (std::uint64_t{1} << (U % 64)) - 1;
  }
  void minus_set(const std::uint64_t* unc, std::size_t j, std::uint64_t* out) const {
    const std::uint64_t* s = sw.data() + j * W;
    for (std::size_t w = 0; w < W; ++w) out[w] = unc[w] & ~s[w];
  }

  // elements pairwise sharing no set each need their own set
  std::size_t packing_bound(const std::uint64_t* unc) {
    std::fill(used.begin(), used.end(), 0);
    std::size_t bound = 0, scanned = 0;
    for (std::size_t e : order) {
      if (!test(unc, e)) continue;
      if (++scanned > 2048) break;
      const std::uint64_t* c = colw.data() + e * WS;
      bool hit = false;
      for (std::size_t w = 0; w < WS && !hit; ++w) hit = (c[w] & used[w]) != 0;
      if (!hit) {
        ++bound;
        for (std::size_t w = 0; w < WS; ++w) used[w] |= c[w];
      }
    }
    return bound;
  }

  bool dfs(std::size_t lvl, std::size_t d) {
    const std::uint64_t* unc = level(lvl);
    const std::size_t left = count(unc);
    if (left == 0) return true;
    if (d == 0) return false;
    if (++nodes > budget) throw budget_exceeded("cover search exceeded " + std::to_string(budget) + " nodes");
    if (left > d * max_set) return false;
    if (d > 1 && packing_bound(unc) > d) return false;
    // a useful set must leave at most (d-1)*max_set uncovered; branch on the
    // element with fewest such sets among the first few in static order
    const std::size_t need = left > (d - 1) * max_set ? left - (d - 1) * max_set : 1;
    auto& best = best_at[lvl];
    auto& cur = cur_at[lvl];
    best.clear();
    std::size_t looked = 0;
    for (std::size_t x : order) {
      if (!test(unc, x)) continue;
      cur.clear();
      for (std::uint32_t j : col[x])
        if (std::size_t g = gain(unc, j); g >= need) cur.emplace_back(g, j);
      if (looked == 0 || cur.size() < best.size()) std::swap(best, cur);
      if (best.size() <= 1 || ++looked >= 32) break;
    }
    std::stable_sort(best.begin(), best.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t i = 0; i < best.size(); ++i) {
      const std::size_t j = best[i].second;
      minus_set(unc, j, level(lvl + 1));
      chosen.push_back(j);
      if (dfs(lvl + 1, d - 1)) return true;
      chosen.pop_back();
    }
    return false;
  }
};

}  // namespace

namespace {

// split the reduced problem into independent parts (no set spans two)
std::vector<Reduced> components(const Reduced& R) {
  std::vector<std::size_t> parent(R.universe);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const auto& s : R.sets) {
    auto f = s.find_first();
    for_each_bit(s, [&](std::size_t e) { parent[find(e)] = find(f); });
  }
  std::map<std::size_t, std::size_t> comp_of_root;
  std::vector<std::size_t> comp(R.universe), local(R.universe);
  std::vector<std::size_t> sizes;
  for (std::size_t e = 0; e < R.universe; ++e) {
    auto [it, fresh] = comp_of_root.try_emplace(find(e), sizes.size());
    if (fresh) sizes.push_back(0);
    comp[e] = it->second;
    local[e] = sizes[it->second]++;
  }
  std::vector<Reduced> out(sizes.size());
  for (std::size_t c = 0; c < sizes.size(); ++c) out[c].universe = sizes[c];
  for (std::size_t j = 0; j < R.sets.size(); ++j) {
    const std::size_t c = comp[R.sets[j].find_first()];
    Bits b(sizes[c]);
    for_each_bit(R.sets[j], [&](std::size_t e) { b.set(local[e]); });
    out[c].sets.push_back(std::move(b));
    out[c].orig.push_back(j);
  }
  return out;
}

// iterative deepening on one part; firsts index into R.sets
bool solve_part(Searcher& S, const std::vector<std::size_t>& firsts, std::size_t lo, std::size_t hi,
                std::vector<std::size_t>& chosen) {
  S.reserve(hi);
  S.fill_all(S.level(0));
  lo = std::max<std::size_t>({lo, 1, S.packing_bound(S.level(0))});
  for (std::size_t k = lo; k <= hi; ++k) {
    S.chosen.clear();
    bool ok = false;
    if (firsts.empty()) {
      ok = S.dfs(0, k);
    } else {
      for (std::size_t f : firsts) {
        S.minus_set(S.level(0), f, S.level(1));
        S.chosen.assign(1, f);
        if (S.dfs(1, k - 1)) {
          ok = true;
          break;
        }
      }
    }
    if (ok) {
      chosen = S.chosen;
      return true;
    }
  }
  return false;
}

}  // namespace

CoverResult min_cover(const CoverProblem& P, std::size_t lo, std::size_t hi, std::uint64_t node_budget) {
  CoverResult res;
  for (const auto& s : P.sets)
    if (s.size() != P.universe) throw std::invalid_argument("min_cover: set width differs from universe");
  if (P.universe == 0) {
    res.found = true;
    return res;
  }
  Reduced R = reduce(P);
  if (R.infeasible) return res;
  res.reduced_universe = R.universe;
  res.reduced_sets = R.sets.size();
  auto parts = components(R);
  res.components = parts.size();
  if (parts.size() == 1) {
    std::vector<std::size_t> firsts;
    for (std::size_t f : P.first_choices) {
      std::size_t r = R.repl.at(f);
      if (r != SIZE_MAX) firsts.push_back(r);
    }
    std::sort(firsts.begin(), firsts.end());
    firsts.erase(std::unique(firsts.begin(), firsts.end()), firsts.end());
    Searcher S(R, node_budget);
    std::vector<std::size_t> chosen;
    bool ok = solve_part(S, firsts, lo, hi, chosen);
    res.nodes = S.nodes;
    if (ok) {
      res.found = true;
      for (std::size_t j : chosen) res.chosen.push_back(R.orig[j]);
    }
    return res;
  }
  // parts are solved exactly and independently; the sum is the minimum
  std::size_t total = 0;
  for (auto& part : parts) {
    Searcher S(part, node_budget - std::min(node_budget, res.nodes));
    std::vector<std::size_t> chosen;
    const std::size_t room = hi > total ? hi - total : 0;
    bool ok = room > 0 && solve_part(S, {}, 1, std::min(room, part.universe), chosen);
    res.nodes += S.nodes;
    if (!ok) return CoverResult{false, {}, res.nodes, res.reduced_universe, res.reduced_sets, res.components};
    total += chosen.size();
    for (std::size_t j : chosen) res.chosen.push_back(R.orig[part.orig[j]]);
  }
  res.found = true;
  return res;
}

// ---------------------------------------------------------------- spread

namespace {

std::vector<std::size_t> nontrivial_classes(const GenTable& T) {
  std::vector<std::size_t> out;
  const auto& cl = T.classes().classes();
  for (std::size_t c = 0; c < cl.size(); ++c)
    if (cl[c].order > 1) out.push_back(c);
  // likely witnesses first: large element orders
  std::stable_sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) { return cl[a].order > cl[b].order; });
  return out;
}

CoverProblem class_problem(const GenTable& T, const std::vector<std::size_t>& cand) {
  CoverProblem P;
  P.universe = cand.size();
  auto M = nongen_matrix(T, cand);
  P.sets = std::move(M.rows);
  P.first_choices = T.orbit_reps();
  return P;
}

std::vector<Perm> breakers_as_perms(const GenTable& T, const std::vector<std::size_t>& bs) {
  std::vector<Perm> out;
  for (std::size_t b : bs) out.push_back(T.element(T.breaker_rank(b)));
  return out;
}

}  // namespace

namespace {

std::size_t greedy_cover_size(const CoverProblem& P) {
  Bits unc(P.universe);
  unc.set();
  std::size_t k = 0;
  while (unc.any()) {
    std::size_t best = 0, gain = 0;
    for (std::size_t j = 0; j < P.sets.size(); ++j) {
      std::size_t g = (P.sets[j] & unc).count();
      if (g > gain) gain = g, best = j;
    }
    if (gain == 0) return SIZE_MAX;
    unc -= P.sets[best];
    ++k;
  }
  return k;
}

}  // namespace

SpreadResult uniform_spread_exact(const GenTable& T, const DomOptions& opt) {
  SpreadResult res;
  res.value = -1;
  // likely winners first; later classes only need a cover no larger than
  // the best so far, which is cheap to find and needs no refutation
  std::vector<std::pair<std::size_t, std::size_t>> todo;  // (greedy size, class)
  for (std::size_t c : nontrivial_classes(T)) todo.emplace_back(greedy_cover_size(class_problem(T, T.class_members(c))), c);
  std::stable_sort(todo.begin(), todo.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  std::vector<ClassSpread> per(T.classes().classes().size());
  std::vector<char> seen(per.size(), 0);
  for (const auto& [greedy, c] : todo) {
    const auto& cand = T.class_members(c);
    auto P = class_problem(T, cand);
    ClassSpread cs;
    cs.label = T.classes().classes()[c].label;
    CoverResult r;
    if (res.value >= 0) {
      const std::size_t k = static_cast<std::size_t>(res.value) + 1;
      r = min_cover(P, k, k, opt.node_budget);
      res.nodes += r.nodes;
      if (r.found) cs.exact = r.chosen.size() < k;
    }
    if (!r.found) {
      const std::size_t lo = res.value >= 0 ? static_cast<std::size_t>(res.value) + 2 : 1;
      r = min_cover(P, lo, cand.size(), opt.node_budget);
      res.nodes += r.nodes;
      if (!r.found) throw std::logic_error("uniform_spread_exact: class without a cover");
    }
    cs.u = static_cast<std::int64_t>(r.chosen.size()) - 1;
    cs.breaking_tuple = breakers_as_perms(T, r.chosen);
    if (cs.u > res.value) {
      res.value = cs.u;
      res.witness_class = cs.label;
    }
    per[c] = std::move(cs);
    seen[c] = 1;
  }
  for (std::size_t c = 0; c < per.size(); ++c)
    if (seen[c]) res.per_class.push_back(std::move(per[c]));
  if (res.value < 0) res.value = 0;
  return res;
}

SpreadResult spread_exact(const GenTable& T, std::int64_t lower_hint, const DomOptions& opt) {
  SpreadResult res;
  std::vector<std::size_t> cand;
  for (std::size_t r = 0; r < T.size(); ++r)
    if (r != T.identity_rank()) cand.push_back(r);
  auto P = class_problem(T, cand);
  std::size_t lo = lower_hint >= 0 ? static_cast<std::size_t>(lower_hint) + 1 : 1;
  auto r = min_cover(P, lo, cand.size(), opt.node_budget);
  res.nodes = r.nodes;
  if (!r.found) throw std::logic_error("spread_exact: no cover of the nontrivial elements");
  if (r.chosen.size() < lo) throw std::logic_error("spread_exact: lower bound hint exceeds the spread");
  res.value = static_cast<std::int64_t>(r.chosen.size()) - 1;
  res.breaking_tuple = breakers_as_perms(T, r.chosen);
  // re-check the tuple directly, outside the breaker reduction
  const PermGroup& G = T.group();
  for (std::size_t z : cand) {
    bool blocked = false;
    for (const auto& x : res.breaking_tuple)
      if (!generates_unchecked(G, x, T.element(z))) {
        blocked = true;
        break;
      }
    if (!blocked) throw std::logic_error("spread_exact: breaking tuple has a common partner " + T.element(z).str());
  }
  return res;
}

// ---------------------------------------------------------------- domination numbers

namespace {

// B(z): breakers generating G with z
Bits partner_set(const GenTable& T, std::size_t z) {
  Bits s(T.num_breakers());
  for (std::size_t b = 0; b < T.num_breakers(); ++b)
    if (!T.nongen(b).test(z)) s.set(b);
  return s;
}

}  // namespace

std::optional<std::size_t> class_uds_size(const GenTable& T, std::size_t cls, std::size_t max_size,
                                          std::vector<Perm>* witness, const DomOptions& opt) {
  const auto& cand = T.class_members(cls);
  CoverProblem P;
  P.universe = T.num_breakers();
  for (std::size_t z : cand) P.sets.push_back(partner_set(T, z));
  P.first_choices = {0};  // the class is one orbit
  if (max_size == 0) max_size = cand.size();
  auto r = min_cover(P, 1, max_size, opt.node_budget);
  if (!r.found) return std::nullopt;
  if (witness) {
    witness->clear();
    for (std::size_t j : r.chosen) witness->push_back(T.element(cand[j]));
  }
  return r.chosen.size();
}

DomResult gamma_u(const GenTable& T, std::size_t max_size, const DomOptions& opt) {
  DomResult res;
  std::size_t best = max_size == 0 ? SIZE_MAX : max_size;
  bool any = false;
  for (std::size_t c : nontrivial_classes(T)) {
    std::vector<Perm> w;
    const std::size_t cap = best == SIZE_MAX ? 0 : best;
    auto v = class_uds_size(T, c, cap, &w, opt);
    if (!v) continue;
    const std::string& lab = T.classes().classes()[c].label;
    if (!any || *v < best) {
      best = *v;
      res.witness = w;
      res.witness_classes = {lab};
      any = true;
    } else if (*v == best) {
      res.witness_classes.push_back(lab);
    }
  }
  if (!any) {
    res.exact = false;
    res.value = max_size + 1;
    return res;
  }
  res.value = best;
  return res;
}

DomResult gamma_t(const GenTable& T, std::size_t max_size, const DomOptions& opt) {
  DomResult res;
  CoverProblem P;
  P.universe = T.num_breakers();
  std::vector<std::size_t> cand;
  for (std::size_t r = 0; r < T.size(); ++r)
    if (r != T.identity_rank()) cand.push_back(r);
  std::vector<std::size_t> pos(T.size(), SIZE_MAX);
  for (std::size_t i = 0; i < cand.size(); ++i) {
    pos[cand[i]] = i;
    P.sets.push_back(partner_set(T, cand[i]));
  }
  for (std::size_t c : nontrivial_classes(T)) P.first_choices.push_back(pos[T.class_members(c)[0]]);
  auto r = min_cover(P, 1, max_size, opt.node_budget);
  if (!r.found) {
    res.exact = false;
    res.value = max_size + 1;
    return res;
  }
  res.value = r.chosen.size();
  for (std::size_t j : r.chosen) {
    res.witness.push_back(T.element(cand[j]));
    res.witness_classes.push_back(T.classes().classes()[T.class_of(cand[j])].label);
  }
  return res;
}

// ---------------------------------------------------------------- P(G,s,2)

rational p_gsc_exact(const GenTable& T, std::size_t cls) {
  const auto& C = T.class_members(cls);
  if (C.empty()) throw std::invalid_argument("p_gsc_exact: empty class");
  const std::size_t s = C[0];
  std::vector<char> bad(C.size(), 0);
  for (std::size_t b = 0; b < T.num_breakers(); ++b) {
    const Bits& row = T.nongen(b);
    if (!row.test(s)) continue;
    for (std::size_t i = 0; i < C.size(); ++i)
      if (row.test(C[i])) bad[i] = 1;
  }
  std::size_t good = 0;
  for (char v : bad) good += !v;
  return rational(bigint(good), bigint(C.size()));
}

rational p_gsc_exact_direct(const PermGroup& G, const ClassIndex& CI, std::size_t cls, const DomOptions& opt) {
  const Perm s = CI.classes().at(cls).rep;
  std::vector<Perm> breakers, members;
  G.for_each_element(opt.element_cap, [&](const Perm& x) {
    if (CI.class_of(x) == cls) members.push_back(x);
    const std::uint64_t o = element_order(x);
    if (!is_prime_u64(o)) return;
    // one generator per cyclic subgroup: the least among x^j
    Perm p = x;
    for (std::uint64_t j = 2; j < o; ++j) {
      p = p * x;
      if (p < x) return;
    }
    breakers.push_back(x);
  });
  std::uint64_t tests = 0;
  auto gen = [&](const Perm& a, const Perm& b) {
    if (++tests > opt.budget) throw budget_exceeded("p_gsc_exact_direct: generation test budget exhausted");
    return generates_unchecked(G, a, b);
  };
  std::vector<Perm> xs;  // breakers not generating with s
  for (const auto& x : breakers)
    if (!gen(x, s)) xs.push_back(x);
  std::size_t good = 0;
  for (const auto& z : members) {
    bool tds = true;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!gen(xs[i], z)) {
        tds = false;
        // move to front: the same breaker tends to block nearby z
        std::rotate(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(i), xs.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        break;
      }
    }
    good += tds;
  }
  return rational(bigint(good), bigint(members.size()));
}

DihedralCover psl2_dihedral_cover(std::uint32_t q, const DomOptions& opt) {
  if (q < 11 || q % 4 != 3 || !is_prime_u64(q))
    throw std::invalid_argument("psl2_dihedral_cover: q must be a prime >= 11 with q = 3 mod 4");
  const PermGroup G = construct(GroupSpec::parse("PSL2:" + std::to_string(q)));
  const std::uint64_t m = (q + 1) / 2;
  std::vector<Perm> invs;
  std::vector<std::unordered_set<Perm, PermHash>> cyc;  // one per cyclic subgroup of order m
  std::unordered_set<Perm, PermHash> seen;
  G.for_each_element(opt.element_cap, [&](const Perm& x) {
    const std::uint64_t o = element_order(x);
    if (o == 2) invs.push_back(x);
    if (o != m || seen.count(x)) return;
    std::unordered_set<Perm, PermHash> C;
    Perm p = x;
    for (std::uint64_t j = 1; j <= m; ++j, p = p * x) {
      C.insert(p);
      if (std::gcd(j, m) == 1) seen.insert(p);
    }
    cyc.push_back(std::move(C));
  });
  // the D_{q+1} over C contains t iff t normalizes C; one generator of C suffices
  std::vector<Perm> gen;
  for (const auto& C : cyc)
    for (const auto& c : C)
      if (element_order(c) == m) {
        gen.push_back(c);
        break;
      }
  CoverProblem P;
  P.universe = cyc.size();
  for (const auto& t : invs) {
    Bits b(cyc.size());
    for (std::size_t i = 0; i < cyc.size(); ++i)
      if (cyc[i].count(gen[i].conj(t))) b.set(i);
    P.sets.push_back(std::move(b));
  }
  P.first_choices = {0};  // the involutions form one class
  DihedralCover out;
  out.q = q;
  out.conjugates = cyc.size();
  out.involutions = invs.size();
  out.per_involution = P.sets.empty() ? 0 : P.sets[0].count();
  out.lower = (out.conjugates + out.per_involution - 1) / out.per_involution;
  auto take = [&](const std::vector<std::size_t>& chosen) {
    out.upper = chosen.size();
    out.witness.clear();
    for (std::size_t j : chosen) out.witness.push_back(invs[j]);
  };
  // greedy covers with seeded random tie-breaks for a first upper bound
  std::mt19937_64 rng(q);
  for (int round = 0; round < 500; ++round) {
    Bits unc(P.universe);
    unc.set();
    std::vector<std::size_t> chosen, ties;
    while (unc.any()) {
      std::size_t gain = 0;
      ties.clear();
      for (std::size_t j = 0; j < P.sets.size(); ++j) {
        const std::size_t g = (P.sets[j] & unc).count();
        if (g > gain) gain = g, ties.clear();
        if (g == gain && g > 0) ties.push_back(j);
      }
      const std::size_t pick = round == 0 ? ties.front() : ties[rng() % ties.size()];
      unc -= P.sets[pick];
      chosen.push_back(pick);
    }
    if (round == 0 || chosen.size() < out.upper) take(chosen);
  }
  // refute sizes from the counting bound upwards, each within the node budget
  for (std::size_t k = out.lower; k < out.upper; ++k) {
    try {
      auto r = min_cover(P, k, k, opt.node_budget);
      out.nodes += r.nodes;
      if (r.found) {
        take(r.chosen);
        break;
      }
      out.lower = k + 1;
    } catch (const budget_exceeded&) {
      out.nodes += opt.node_budget;
      break;
    }
  }
  // then look for smaller covers from above, where finding is cheap
  for (std::size_t k = out.upper - 1; k >= out.lower && k < out.upper; --k) {
    try {
      auto r = min_cover(P, k, k, opt.node_budget);
      out.nodes += r.nodes;
      if (!r.found) {
        out.lower = k + 1;
        break;
      }
      take(r.chosen);
    } catch (const budget_exceeded&) {
      out.nodes += opt.node_budget;
      break;
    }
  }
  out.exact = out.lower == out.upper;
  return out;
}

// ---------------------------------------------------------------- Monte Carlo

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  // splitmix64 of seed and trial index
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

MonteCarloResult p2_monte_carlo(const GroupSpec& spec, const std::string& label, std::uint64_t trials,
                                std::uint64_t seed, unsigned threads) {
  const PermGroup G = construct(spec);
  const auto overs = maximal_overgroups(spec, label);
  struct Sub {
    std::unordered_set<Perm, PermHash> elems;
    std::vector<Perm> primes;  // one generator per prime-order cyclic subgroup
    bigint order;
  };
  std::vector<Sub> subs;
  for (const auto& H : overs) {
    if (H.order > bigint(2000000)) throw cap_exceeded("p2_monte_carlo: overgroup " + H.label + " too large");
    Sub S;
    S.order = H.order;
    PermGroup Hg = subgroup(G, H.gens);
    Hg.for_each_element(2000000, [&](const Perm& x) { S.elems.insert(x); });
    for (const auto& x : S.elems) {
      const std::uint64_t o = element_order(x);
      if (!is_prime_u64(o)) continue;
      Perm p = x;
      bool least = true;
      for (std::uint64_t j = 2; j < o && least; ++j) {
        p = p * x;
        if (p < x) least = false;
      }
      if (least) S.primes.push_back(x);
    }
    std::sort(S.primes.begin(), S.primes.end());
    subs.push_back(std::move(S));
  }
  // pair order: big pairs first, they meet most often
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < subs.size(); ++i)
    for (std::size_t j = 0; j < subs.size(); ++j) pairs.emplace_back(i, j);
  std::stable_sort(pairs.begin(), pairs.end(), [&](auto a, auto b) {
    return subs[a.first].order * subs[a.second].order > subs[b.first].order * subs[b.second].order;
  });

  if (threads < 1) threads = 1;
  std::vector<std::uint64_t> hits(threads, 0);
  run_striped(threads, threads, [&](std::size_t t) {
    for (std::uint64_t i = t; i < trials; i += threads) {
      std::mt19937_64 rng(trial_seed(seed, i));
      const Perm g = G.random_element(rng);
      const Perm gi = g.inverse();
      bool tds = true;
      for (auto [a, b] : pairs) {
        // A_a meets A_b^g nontrivially iff some prime element of one lands in the other
        const Sub& A = subs[a];
        const Sub& B = subs[b];
        bool meet = false;
        if (A.primes.size() <= B.primes.size()) {
          for (const auto& x : A.primes)
            if (B.elems.count(x.conj(gi))) {
              meet = true;
              break;
            }
        } else {
          for (const auto& y : B.primes)
            if (A.elems.count(y.conj(g))) {
              meet = true;
              break;
            }
        }
        if (meet) {
          tds = false;
          break;
        }
      }
      hits[t] += tds;
    }
  });
  MonteCarloResult R;
  R.trials = trials;
  R.seed = seed;
  for (auto h : hits) R.successes += h;
  if (trials == 0) return R;
  const double n = static_cast<double>(trials), ph = static_cast<double>(R.successes) / n;
  const double z = 1.959963984540054;
  const double den = 1 + z * z / n;
  const double mid = (ph + z * z / (2 * n)) / den;
  const double half = z * std::sqrt(ph * (1 - ph) / n + z * z / (4 * n * n)) / den;
  R.estimate = ph;
  R.ci_low = std::max(0.0, mid - half);
  R.ci_high = std::min(1.0, mid + half);
  return R;
}

// ---------------------------------------------------------------- gamma_u^(l)

namespace {

// can ell masks from present[] OR to the full mask
bool ell_masks_cover(const std::vector<char>& present, std::size_t m, std::size_t ell) {
  const std::size_t full = (std::size_t{1} << m) - 1;
  std::vector<char> reach = present;
  if (reach[full]) return true;
  for (std::size_t step = 1; step < ell; ++step) {
    std::vector<char> next = reach;
    for (std::size_t r = 0; r <= full; ++r) {
      if (!reach[r]) continue;
      for (std::size_t a = 0; a <= full; ++a)
        if (present[a]) next[r | a] = 1;
    }
    reach.swap(next);
    if (reach[full]) return true;
  }
  return false;
}

}  // namespace

bool is_uds_ell(const GenTable& T, const std::vector<std::size_t>& S, std::size_t ell) {
  const std::size_t m = S.size();
  if (m == 0 || m > 20) throw std::invalid_argument("is_uds_ell: set size must be 1..20");
  std::vector<char> present(std::size_t{1} << m, 0);
  for (std::size_t b = 0; b < T.num_breakers(); ++b) {
    std::size_t mask = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (T.nongen(b).test(S[i])) mask |= std::size_t{1} << i;
    present[mask] = 1;
  }
  return !ell_masks_cover(present, m, ell);
}

EllResult gamma_u_ell(const GenTable& T, std::size_t ell, std::size_t max_size, const DomOptions& opt) {
  if (ell < 1) throw std::invalid_argument("gamma_u_ell: ell must be positive");
  if (max_size > 20) max_size = 20;
  EllResult res;
  res.method = "direct";
  std::uint64_t work = 0;
  const auto classes = nontrivial_classes(T);
  for (std::size_t m = ell + 1; m <= max_size; ++m) {
    for (std::size_t c : classes) {
      const auto& C = T.class_members(c);
      if (C.size() < m) continue;
      // masks per breaker, bit i for the i-th chosen element; s = C[0] fixed
      std::vector<std::size_t> pick(m);
      std::vector<std::size_t> idx(m - 1);
      std::iota(idx.begin(), idx.end(), 1);
      const std::size_t n = C.size();
      for (;;) {
        pick[0] = C[0];
        for (std::size_t i = 0; i + 1 < m; ++i) pick[i + 1] = C[idx[i]];
        work += T.num_breakers();
        if (work > opt.budget * 16) throw budget_exceeded("gamma_u_ell: search budget exhausted");
        if (is_uds_ell(T, pick, ell)) {
          res.value = m;
          res.witness_class = T.classes().classes()[c].label;
          for (std::size_t r : pick) res.witness.push_back(T.element(r));
          return res;
        }
        // next combination of m-1 indices from 1..n-1
        std::size_t i = m - 1;
        while (i > 0 && idx[i - 1] == n - (m - 1) + (i - 1)) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < m - 1; ++j) idx[j] = idx[j - 1] + 1;
        if (m == 1) break;
      }
    }
  }
  res.exact = false;
  res.value = max_size + 1;
  return res;
}

std::optional<EllResult> gamma_u_ell_clique(const GroupSpec& spec, const std::string& label, std::size_t ell) {
  const auto overs = maximal_overgroups(spec, label);
  if (overs.size() != 1)
    throw std::invalid_argument("gamma_u_ell_clique: needs a unique maximal overgroup, have " +
                                std::to_string(overs.size()));
  const PermGroup G = construct(spec);
  Action act = coset_action(G, overs[0]);
  Graph g = saxl_graph(act);
  auto cl = has_clique(g, ell + 1);
  if (!cl) return std::nullopt;
  const Perm s = distinguished_class(spec, label).rep;
  EllResult res;
  res.value = ell + 1;
  res.method = "clique";
  res.witness_class = label;
  for (std::size_t v : *cl) res.witness.push_back(s.conj(act.tree_element(v)));
  return res;
}

std::optional<EllResult> gamma_u_ell_probability(const rational& p2, std::size_t ell) {
  if (ell < 1) throw std::invalid_argument("gamma_u_ell_probability: ell must be positive");
  if (!(1 - p2 < rational(1, static_cast<long long>(ell)))) return std::nullopt;
  EllResult res;
  res.value = ell + 1;
  res.method = "probability";
  return res;
}

// ---------------------------------------------------------------- Binder witnesses

namespace {

Perm cyc1(std::size_t n, const std::vector<point_t>& seq) { return Perm::from_cycles(n, {seq}); }

Perm tr(std::size_t n, point_t a, point_t b) { return Perm::from_cycles(n, {{a, b}}); }

Perm std_y(std::size_t n, std::size_t p, std::size_t k) {
  std::vector<std::vector<point_t>> cs;
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<point_t> cyc;
    for (std::size_t j = 1; j <= p; ++j) cyc.push_back(static_cast<point_t>(c * p + j));
    cs.push_back(cyc);
  }
  return Perm::from_cycles(n, cs);
}

std::vector<point_t> iota1(std::size_t a, std::size_t b) {  // a..b inclusive
  std::vector<point_t> v;
  for (std::size_t i = a; i <= b; ++i) v.push_back(static_cast<point_t>(i));
  return v;
}

// append a decreasing run hi..lo skipping points already present
void append_down(std::vector<point_t>& seq, std::size_t hi, std::size_t lo) {
  for (std::size_t v = hi; v >= lo && v >= 1; --v)
    if (std::find(seq.begin(), seq.end(), static_cast<point_t>(v)) == seq.end()) seq.push_back(static_cast<point_t>(v));
}

struct Case2b {
  std::size_t alpha, u;
  std::vector<point_t> beta, gamma;
};

Case2b layout_2b(std::size_t n, std::size_t p, std::size_t k) {
  Case2b L;
  L.alpha = k * p + 1;
  L.u = (n - k * p) % 3 == 0 ? 1 : 0;
  if (L.u) L.gamma.push_back(static_cast<point_t>(n));
  for (std::size_t v = k * p + 2; v + L.u <= n; ++v) L.beta.push_back(static_cast<point_t>(v));
  return L;
}

Perm z_2b(std::size_t n, std::size_t p, std::size_t k) {
  auto L = layout_2b(n, p, k);
  std::vector<point_t> seq{1, static_cast<point_t>(L.alpha)};
  for (std::size_t c = 1; c < k; ++c) seq.push_back(static_cast<point_t>(c * p + 1));
  seq.push_back(static_cast<point_t>(k * p));
  seq.push_back(static_cast<point_t>(k * p - 1));
  append_down(seq, k * p - 2, 4);
  seq.push_back(3);
  seq.insert(seq.end(), L.beta.begin(), L.beta.end());
  seq.push_back(2);
  seq.insert(seq.end(), L.gamma.begin(), L.gamma.end());
  return cyc1(n, seq);
}

Perm z_2b_special(std::size_t n, std::size_t p, std::size_t k) {
  std::vector<point_t> seq;
  for (std::size_t c = 1; c < k; ++c) seq.push_back(static_cast<point_t>(c * p + 1));
  seq.push_back(static_cast<point_t>(k * p));
  append_down(seq, k * p - 1, 1);
  seq.push_back(static_cast<point_t>(k * p + 1));
  seq.push_back(static_cast<point_t>(k * p + 2));
  return cyc1(n, seq);
}

Perm z_2c(std::size_t n, std::size_t p, std::size_t k) {
  std::vector<point_t> seq{1, 2};
  for (std::size_t c = 1; c < k; ++c) seq.push_back(static_cast<point_t>(c * p + 1));
  seq.push_back(static_cast<point_t>(k * p));
  append_down(seq, k * p - 1, 3);
  return cyc1(n, seq);
}

Perm z_2d(std::size_t n, std::size_t k) {
  // n even, so n - 2k is even and every extra point is an alpha
  std::vector<point_t> seq{1};
  for (std::size_t v = 2 * k + 1; v <= n; ++v) seq.push_back(static_cast<point_t>(v));
  seq.push_back(2);
  for (std::size_t v = 3; v <= 2 * k - 1; v += 2) seq.push_back(static_cast<point_t>(v));
  for (std::size_t v = 2 * k; v >= 4; v -= 2) seq.push_back(static_cast<point_t>(v));
  return cyc1(n, seq);
}

Perm z_2e(std::size_t n, std::size_t k) {
  std::vector<point_t> seq{1, 3, 2, 4};
  for (std::size_t v = 5; v <= 2 * k - 1; v += 2) seq.push_back(static_cast<point_t>(v));
  for (std::size_t v = 2 * k; v >= 6; v -= 2) seq.push_back(static_cast<point_t>(v));
  return cyc1(n, seq);
}

Perm ncycle(std::size_t n) { return cyc1(n, iota1(1, n)); }

std::vector<std::pair<Perm, Perm>> case3_pairs(std::size_t n) {
  auto P = [&](const char* s) { return Perm::parse(s, n); };
  std::vector<std::pair<Perm, Perm>> out;
  for (const char* y : {"(2,3,4)", "(3,4,5)", "(4,5,6)"}) out.emplace_back(P("(1,2,3)"), P(y));
  for (const char* y : {"(1,2,3)", "(1,2,5)", "(2,3,5)", "(4,5,6)", "(5,6,7)"}) out.emplace_back(P("(1,2)(3,4)"), P(y));
  for (const char* y : {"(1,3)(2,4)", "(1,2)(3,5)", "(1,2)(5,6)", "(2,3)(5,6)", "(3,6)(4,5)", "(1,6)(4,5)",
                        "(1,5)(6,7)", "(5,6)(7,8)"})
    out.emplace_back(P("(1,2)(3,4)"), P(y));
  return out;
}

// the listed transpositions per Case 2 subcase
std::vector<Perm> case2_xs(std::size_t n, std::size_t p, std::size_t k, std::string& name) {
  std::vector<Perm> xs;
  auto T = [&](std::size_t a, std::size_t b) { return tr(n, static_cast<point_t>(a), static_cast<point_t>(b)); };
  if (k == 1) {
    name = "2a";
    if (p + 2 <= n) xs.push_back(T(p + 1, p + 2));
    if (p + 1 <= n) xs.push_back(T(p, p + 1));
    xs.push_back(T(1, 2));
  } else if (p >= 3 && k * p < n) {
    name = "2b";
    auto L = layout_2b(n, p, k);
    xs.push_back(T(1, L.alpha));
    xs.push_back(T(k * p - 1, k * p));
    xs.push_back(T(p, p + 2));
    if (n - k * p < 2) {
      // no room for a transposition disjoint from y
    } else if (n - k * p == 2)
      xs.push_back(T(k * p + 1, k * p + 2));
    else if (L.beta.size() >= 2)
      xs.push_back(T(L.beta[0], L.beta[1]));
    else
      xs.push_back(T(L.alpha, L.beta.at(0)));  // n - kp = 3: alpha and beta are the two fixed points before gamma
  } else if (p >= 3) {
    name = "2c";
    xs.push_back(T(1, 2));
    xs.push_back(T(k * p - 1, k * p));
  } else if (2 * k < n) {
    name = "2d";
    xs.push_back(T(2 * k - 1, 2 * k));
    xs.push_back(T(2 * k - 2, 2 * k));
    xs.push_back(T(2 * k + 1, 2 * k + 2));
    xs.push_back(T(1, 2 * k + 1));
  } else {
    name = "2e";
    xs.push_back(T(1, 3));
    xs.push_back(T(2 * k - 1, 2 * k));
  }
  return xs;
}

// y = std_y(n,p,k) for some prime p? returns (p,k)
std::optional<std::pair<std::size_t, std::size_t>> std_shape(std::size_t n, const Perm& y) {
  auto ct = cycle_type(y);
  std::size_t p = 0, k = 0;
  for (auto [l, m] : ct.parts)
    if (l > 1) {
      if (p) return std::nullopt;
      p = l;
      k = m;
    }
  if (!p || !is_prime_u64(p)) return std::nullopt;
  if (y != std_y(n, p, k)) return std::nullopt;
  return std::make_pair(p, k);
}

}  // namespace

Perm binder_witness(std::size_t n, const Perm& x, const Perm& y) {
  if (n < 8 || n % 2) throw std::invalid_argument("binder_witness: n must be even and at least 8");
  if (x.degree() != n || y.degree() != n) throw degree_mismatch("binder_witness: degree mismatch");
  for (const auto& [cx, cy] : case3_pairs(n))
    if (cx == x && cy == y) {
      if (x == Perm::parse("(1,2)(3,4)", n) && y == Perm::parse("(1,3)(2,4)", n))
        return ncycle(n).conj(Perm::parse("(2,3)", n));
      return ncycle(n);
    }
  auto sh = std_shape(n, y);
  if (!sh || cycle_type(x) != CycleType::parse("[2,1^" + std::to_string(n - 2) + "]"))
    throw std::invalid_argument("binder_witness: (x, y) is not in a supported normal form");
  auto [p, k] = *sh;
  std::string name;
  auto xs = case2_xs(n, p, k, name);
  if (std::find(xs.begin(), xs.end(), x) == xs.end())
    throw std::invalid_argument("binder_witness: x is not a normal form for case " + name);
  if (name == "2a") return ncycle(n);
  if (name == "2b") {
    if (n - k * p == 2 && x == tr(n, static_cast<point_t>(k * p + 1), static_cast<point_t>(k * p + 2)))
      return z_2b_special(n, p, k);
    return z_2b(n, p, k);
  }
  if (name == "2c") return z_2c(n, p, k);
  if (name == "2d") return z_2d(n, k);
  return z_2e(n, k);
}

std::vector<BinderCase> binder_normal_forms(std::size_t n) {
  std::vector<BinderCase> out;
  for (std::size_t p = 2; p <= n; ++p) {
    if (!is_prime_u64(p)) continue;
    for (std::size_t k = 1; k * p <= n; ++k) {
      std::string name;
      for (auto& x : case2_xs(n, p, k, name)) out.push_back({name, x, std_y(n, p, k)});
    }
  }
  for (auto& [x, y] : case3_pairs(n)) out.push_back({"3", x, y});
  return out;
}

std::vector<BinderCheck> check_binder(std::size_t n) {
  const PermGroup Sn = construct(GroupSpec::parse("S:" + std::to_string(n)));
  std::vector<BinderCheck> out;
  for (auto& c : binder_normal_forms(n)) {
    BinderCheck r{c, binder_witness(n, c.x, c.y), false, std::nullopt};
    r.paper_ok = generates(Sn, c.x, r.z) && generates(Sn, c.y, r.z);
    if (!r.paper_ok) {
      // first conjugate of z by a transposition that works with both
      for (point_t a = 1; a <= n && !r.repaired; ++a)
        for (point_t b = a + 1; b <= n; ++b) {
          Perm w = r.z.conj(tr(n, a, b));
          if (generates(Sn, c.x, w) && generates(Sn, c.y, w)) {
            r.repaired = w;
            break;
          }
        }
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Perm> sn_even_bk(std::size_t n, std::size_t k) {
  if (k < 1 || k >= n) throw std::invalid_argument("sn_even_bk: need 1 <= k < n");
  auto md = [&](std::size_t v) { return static_cast<point_t>((v - 1) % n + 1); };
  const std::size_t d = std::gcd(n, k);
  if (d == 1) {
    std::vector<point_t> seq;
    for (std::size_t i = 0; i < n; ++i) seq.push_back(md(1 + i * k));
    return {cyc1(n, seq)};
  }
  const std::size_t l = n / d - 1;
  std::vector<point_t> b, c;
  for (std::size_t a = 1; a <= d; ++a) {
    for (std::size_t i = 0; i <= l; ++i) b.push_back(md(a + i * k));
    for (std::size_t i = 1; i <= l; ++i) c.push_back(md(a + i * k));
    c.push_back(md(a));
  }
  return {cyc1(n, b), cyc1(n, c)};
}

std::vector<Perm> sn_even_bk_witness_set(std::size_t n) {
  if (n < 6 || n % 2) throw std::invalid_argument("sn_even_bk_witness_set: n must be even and at least 6");
  std::vector<Perm> out;
  for (std::size_t k = 1; k < n; ++k)
    for (auto& z : sn_even_bk(n, k))
      if (std::find(out.begin(), out.end(), z) == out.end()) out.push_back(z);
  return out;
}

}  // namespace spl
