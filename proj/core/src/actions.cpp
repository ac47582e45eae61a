#include "spreadlab/actions.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <ostream>
#include <unordered_map>

namespace spl {

// Point lookup. Cosets are keyed by their canonical representative, partitions
// and subsets by their canonical label.
struct ActionIndex {
  ActionKind kind = ActionKind::coset;
  PermGroup Hchain;  // coset: chain of H with base 0,1,...,n-1
  std::size_t n = 0, l = 0;
  std::unordered_multimap<std::size_t, std::uint32_t> buckets;

  static std::size_t key_hash(const std::vector<point_t>& v) {
    std::uint64_t h = 1469598103934665603ull;
    for (point_t x : v) h = (h ^ x) * 1099511628211ull;
    return static_cast<std::size_t>(h);
  }

  // lexicographically least element of the coset H c
  Perm canon(Perm c) const {
    for (std::size_t lv = 0; lv < Hchain.num_levels(); ++lv) {
      const ChainLevel& L = Hchain.level(lv);
      std::size_t best = 0;
      for (std::size_t a = 1; a < L.orbit.size(); ++a)
        if (c[L.orbit[a]] < c[L.orbit[best]]) best = a;
      if (best) c = L.u[best] * c;
    }
    return c;
  }

  std::vector<point_t> canon_partition(const std::vector<point_t>& part_of) const {
    std::vector<point_t> relabel(l, UINT32_MAX), out(part_of.size());
    point_t next = 0;
    for (std::size_t p = 0; p < part_of.size(); ++p) {
      point_t& r = relabel[part_of[p]];
      if (r == UINT32_MAX) r = next++;
      out[p] = r;
    }
    return out;
  }
};

namespace {

constexpr std::uint32_t kNone = UINT32_MAX;

template <class Key, class Eq>
std::uint32_t find_point(const ActionIndex& ix, std::size_t h, const Eq& eq) {
  auto [a, b] = ix.buckets.equal_range(h);
  for (auto it = a; it != b; ++it)
    if (eq(it->second)) return it->second;
  return kNone;
}

// BFS closure of point 0 under the generators; label_of(i,g) returns the key
// of the image, and make/lookup keep the label store in sync
template <class Label, class ImageFn, class HashFn>
void bfs_orbit(Action& act, ActionIndex& ix, std::vector<Label>& store, Label start, const ImageFn& img,
               const HashFn& hash, std::uint64_t cap) {
  const auto& gens = act.parent.generators();
  ix.buckets.emplace(hash(start), 0);
  store.push_back(std::move(start));
  act.tree_parent.push_back(kNone);
  act.tree_gen.push_back(kNone);
  std::vector<std::vector<point_t>> images(gens.size());
  for (std::size_t i = 0; i < store.size(); ++i) {
    for (std::size_t j = 0; j < gens.size(); ++j) {
      Label lab = img(store[i], gens[j]);
      std::size_t h = hash(lab);
      std::uint32_t k = find_point<Label>(ix, h, [&](std::uint32_t c) { return store[c] == lab; });
      if (k == kNone) {
        if (store.size() >= cap)
          throw cap_exceeded("action: orbit exceeds cap " + std::to_string(cap));
        k = static_cast<std::uint32_t>(store.size());
        ix.buckets.emplace(h, k);
        store.push_back(std::move(lab));
        act.tree_parent.push_back(static_cast<std::uint32_t>(i));
        act.tree_gen.push_back(static_cast<std::uint32_t>(j));
      }
      images[j].push_back(k);
    }
  }
  act.N = store.size();
  for (auto& im : images) act.gen_images.push_back(Perm(std::move(im)));
  act.point_stabilizer_order = act.parent.order() / act.N;
  act.transitive = true;
}

}  // namespace

Perm Action::tree_element(std::size_t i) const {
  if (kind == ActionKind::coset) return transversal.at(i);
  std::vector<std::uint32_t> path;
  for (std::size_t c = i; tree_parent.at(c) != kNone; c = tree_parent[c]) path.push_back(tree_gen[c]);
  Perm t = Perm::identity(parent.degree());
  for (auto it = path.rbegin(); it != path.rend(); ++it) t = t * parent.generators()[*it];
  return t;
}

std::size_t Action::image(std::size_t i, const Perm& g) const {
  const ActionIndex& ix = *index;
  std::uint32_t k = kNone;
  if (kind == ActionKind::coset) {
    Perm c = ix.canon(transversal.at(i) * g);
    k = find_point<Perm>(ix, ActionIndex::key_hash(c.images()), [&](std::uint32_t j) { return transversal[j] == c; });
  } else if (kind == ActionKind::partition) {
    std::vector<point_t> po(ix.n);
    for (std::size_t p = 0; p < ix.n; ++p) po[g[static_cast<point_t>(p)]] = labels[i][p];
    po = ix.canon_partition(po);
    k = find_point<std::vector<point_t>>(ix, ActionIndex::key_hash(po), [&](std::uint32_t j) { return labels[j] == po; });
  } else {
    std::vector<point_t> s;
    for (point_t p : labels[i]) s.push_back(g[p]);
    std::sort(s.begin(), s.end());
    k = find_point<std::vector<point_t>>(ix, ActionIndex::key_hash(s), [&](std::uint32_t j) { return labels[j] == s; });
  }
  if (k == kNone) throw not_in_group("action image: element does not preserve the point set");
  return k;
}

Action coset_action(const PermGroup& G, const std::vector<Perm>& H_gens, std::uint64_t cap) {
  const std::size_t n = G.degree();
  for (const auto& h : H_gens)
    if (!G.contains(h)) throw not_in_group("coset_action: subgroup generator not in G");
  std::vector<point_t> full(n);
  std::iota(full.begin(), full.end(), point_t{0});
  auto ix = std::make_shared<ActionIndex>();
  ix->kind = ActionKind::coset;
  ix->n = n;
  ix->Hchain = H_gens.empty() ? PermGroup::build(n, {Perm::identity(n)}, full) : PermGroup::build(n, H_gens, full);
  const bigint index = G.order() / ix->Hchain.order();
  if (index > bigint(cap))
    throw cap_exceeded("coset_action: index " + index.str() + " exceeds cap " + std::to_string(cap));
  Action act;
  act.kind = ActionKind::coset;
  act.parent = G;
  bfs_orbit(
      act, *ix, act.transversal, Perm::identity(n),
      [&](const Perm& t, const Perm& g) { return ix->canon(t * g); },
      [](const Perm& p) { return ActionIndex::key_hash(p.images()); }, cap);
  if (bigint(act.N) != index) throw std::logic_error("coset_action: orbit size differs from the index");
  act.point_stabilizer_order = ix->Hchain.order();
  act.index = std::move(ix);
  return act;
}

Action coset_action(const PermGroup& G, const DistinguishedSubgroup& H, std::uint64_t cap) {
  return coset_action(G, H.gens, cap);
}

Action partition_action(const PermGroup& G, std::size_t l, std::uint64_t cap) {
  const std::size_t n = G.degree();
  if (l < 1 || n % l) throw std::invalid_argument("partition_action: l must divide n");
  auto ix = std::make_shared<ActionIndex>();
  ix->kind = ActionKind::partition;
  ix->n = n;
  ix->l = l;
  const std::size_t m = n / l;
  std::vector<point_t> start(n);
  for (std::size_t p = 0; p < n; ++p) start[p] = static_cast<point_t>(p / m);
  Action act;
  act.kind = ActionKind::partition;
  act.parent = G;
  bfs_orbit(
      act, *ix, act.labels, start,
      [&](const std::vector<point_t>& po, const Perm& g) {
        std::vector<point_t> out(n);
        for (std::size_t p = 0; p < n; ++p) out[g[static_cast<point_t>(p)]] = po[p];
        return ix->canon_partition(out);
      },
      [](const std::vector<point_t>& v) { return ActionIndex::key_hash(v); }, cap);
  act.index = std::move(ix);
  return act;
}

Action subset_action(const PermGroup& G, std::size_t m, std::uint64_t cap) {
  const std::size_t n = G.degree();
  if (m < 1 || m > n) throw std::invalid_argument("subset_action: bad subset size");
  auto ix = std::make_shared<ActionIndex>();
  ix->kind = ActionKind::subset;
  ix->n = n;
  std::vector<point_t> start(m);
  std::iota(start.begin(), start.end(), point_t{0});
  Action act;
  act.kind = ActionKind::subset;
  act.parent = G;
  bfs_orbit(
      act, *ix, act.labels, start,
      [&](const std::vector<point_t>& s, const Perm& g) {
        std::vector<point_t> out;
        for (point_t p : s) out.push_back(g[p]);
        std::sort(out.begin(), out.end());
        return out;
      },
      [](const std::vector<point_t>& v) { return ActionIndex::key_hash(v); }, cap);
  act.index = std::move(ix);
  return act;
}

std::vector<Perm> point_stabilizer_generators(const Action& act) {
  const auto& gens = act.parent.generators();
  const std::size_t n = act.parent.degree();
  const bigint target = act.point_stabilizer_order;
  std::vector<Perm> S;
  PermGroup K = PermGroup::build(n, {Perm::identity(n)}, act.parent.base());
  if (K.order() == target) return S;
  std::vector<Perm> t;  // tree elements, filled in BFS order
  t.reserve(std::min<std::size_t>(act.N, 4096));
  for (std::size_t i = 0; i < act.N; ++i) {
    if (i == 0)
      t.push_back(Perm::identity(n));
    else if (act.kind == ActionKind::coset)
      t.push_back(act.transversal[i]);
    else
      t.push_back(t[act.tree_parent[i]] * gens[act.tree_gen[i]]);
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const std::size_t k = act.gen_images[j][static_cast<point_t>(i)];
      Perm tk = k < t.size() ? t[k] : act.tree_element(k);
      Perm s = t[i] * gens[j] * tk.inverse();
      if (s.is_identity() || K.contains(s)) continue;
      S.push_back(std::move(s));
      K = PermGroup::build(n, S, act.parent.base());
      if (K.order() == target) return S;
    }
  }
  if (K.order() != target) throw std::logic_error("point stabilizer: Schreier generators fall short");
  return S;
}

namespace {

std::vector<std::vector<std::uint32_t>> stabilizer_orbits(const Action& act) {
  if (!act.transitive) throw std::invalid_argument("subdegrees: action is intransitive");
  auto S = point_stabilizer_generators(act);
  std::vector<std::vector<std::size_t>> imgs;
  for (const auto& s : S) {
    std::vector<std::size_t> im(act.N);
    for (std::size_t i = 0; i < act.N; ++i) im[i] = act.image(i, s);
    imgs.push_back(std::move(im));
  }
  std::vector<std::uint32_t> comp(act.N, kNone);
  std::vector<std::vector<std::uint32_t>> out;
  for (std::size_t s = 0; s < act.N; ++s) {
    if (comp[s] != kNone) continue;
    std::vector<std::uint32_t> orb{static_cast<std::uint32_t>(s)};
    comp[s] = static_cast<std::uint32_t>(out.size());
    for (std::size_t a = 0; a < orb.size(); ++a)
      for (const auto& im : imgs) {
        std::size_t b = im[orb[a]];
        if (comp[b] == kNone) {
          comp[b] = static_cast<std::uint32_t>(out.size());
          orb.push_back(static_cast<std::uint32_t>(b));
        }
      }
    out.push_back(std::move(orb));
  }
  return out;
}

}  // namespace

Multiset subdegrees(const Action& act) {
  std::map<std::uint64_t, std::uint64_t> m;
  for (const auto& o : stabilizer_orbits(act)) ++m[o.size()];
  return Multiset(m.begin(), m.end());
}

std::uint64_t regular_orbit_count(const Action& act) {
  std::uint64_t r = 0;
  for (auto [len, mult] : subdegrees(act))
    if (bigint(len) == act.point_stabilizer_order) r += mult;
  return r;
}

rational base_two_probability(const Action& act) {
  return rational(bigint(regular_orbit_count(act)) * act.point_stabilizer_order, bigint(act.N));
}

Graph::Graph(std::size_t n) : n_(n), w_((n + 63) / 64), adj_(n * ((n + 63) / 64), 0) {}

void Graph::add_edge(std::size_t u, std::size_t v) {
  if (u == v) return;
  adj_[u * w_ + v / 64] |= 1ull << (v % 64);
  adj_[v * w_ + u / 64] |= 1ull << (u % 64);
}

std::size_t Graph::degree(std::size_t u) const {
  std::size_t d = 0;
  for (std::size_t k = 0; k < w_; ++k) d += static_cast<std::size_t>(std::popcount(adj_[u * w_ + k]));
  return d;
}

std::size_t Graph::edge_count() const {
  std::size_t e = 0;
  for (std::size_t u = 0; u < n_; ++u) e += degree(u);
  return e / 2;
}

void Graph::write_edge_list(std::ostream& os) const {
  for (std::size_t u = 0; u < n_; ++u)
    for (std::size_t v = u + 1; v < n_; ++v)
      if (edge(u, v)) os << (u + 1) << ' ' << (v + 1) << '\n';
}

Graph saxl_graph(const Action& act, std::size_t cap) {
  if (act.N > cap) throw cap_exceeded("saxl_graph: " + std::to_string(act.N) + " points exceeds cap");
  Graph g(act.N);
  const bigint& h = act.point_stabilizer_order;
  std::vector<std::uint32_t> row0;
  for (const auto& o : stabilizer_orbits(act))
    if (bigint(o.size()) == h) row0.insert(row0.end(), o.begin(), o.end());
  std::sort(row0.begin(), row0.end());
  // neighbours of i are the neighbours of its tree parent moved by the tree generator
  std::vector<std::vector<std::uint32_t>> rows(act.N);
  rows[0] = row0;
  for (std::size_t i = 1; i < act.N; ++i) {
    const Perm& gi = act.gen_images[act.tree_gen[i]];
    const auto& pr = rows[act.tree_parent[i]];
    rows[i].reserve(pr.size());
    for (auto b : pr) rows[i].push_back(gi[b]);
  }
  for (std::size_t i = 0; i < act.N; ++i)
    for (auto b : rows[i]) g.add_edge(i, b);
  return g;
}

namespace {

bool clique_rec(const Graph& g, std::vector<std::uint64_t>& cand, std::size_t need,
                std::vector<std::size_t>& cur) {
  if (need == 0) return true;
  std::size_t avail = 0;
  for (auto w : cand) avail += static_cast<std::size_t>(std::popcount(w));
  if (avail < need) return false;
  const std::size_t W = g.words();
  for (std::size_t k = 0; k < W; ++k) {
    while (cand[k]) {
      std::size_t v = k * 64 + static_cast<std::size_t>(std::countr_zero(cand[k]));
      cand[k] &= cand[k] - 1;
      std::vector<std::uint64_t> next(W);
      const std::uint64_t* r = g.row(v);
      for (std::size_t j = 0; j < W; ++j) next[j] = cand[j] & r[j];
      cur.push_back(v);
      if (clique_rec(g, next, need - 1, cur)) return true;
      cur.pop_back();
    }
  }
  return false;
}

}  // namespace

std::optional<std::vector<std::size_t>> has_clique(const Graph& g, std::size_t k) {
  if (k > 6) throw std::invalid_argument("has_clique: k must be at most 6");
  std::vector<std::size_t> cur;
  if (k == 0) return cur;
  std::vector<std::uint64_t> all(g.words(), 0);
  for (std::size_t v = 0; v < g.size(); ++v) all[v / 64] |= 1ull << (v % 64);
  if (clique_rec(g, all, k, cur)) return cur;
  return std::nullopt;
}

bigint uniform_partition_count(std::size_t n, std::size_t l) {
  if (l < 1 || n % l) throw std::invalid_argument("uniform partitions: l must divide n");
  const std::size_t m = n / l;
  bigint d = factorial(static_cast<unsigned>(l));
  const bigint mf = factorial(static_cast<unsigned>(m));
  for (std::size_t i = 0; i < l; ++i) d *= mf;
  return factorial(static_cast<unsigned>(n)) / d;
}

void for_each_uniform_partition(std::size_t n, std::size_t l,
                                const std::function<void(const std::vector<std::uint8_t>&)>& fn,
                                std::uint64_t cap) {
  const bigint cnt = uniform_partition_count(n, l);
  if (cnt > bigint(cap)) throw cap_exceeded("uniform partitions: " + cnt.str() + " exceeds cap");
  if (l > 255) throw std::invalid_argument("uniform partitions: at most 255 parts");
  const std::size_t m = n / l;
  std::vector<std::uint8_t> part(n, 0xff);
  // fill part p: least free point, then m-1 more chosen in lex order
  std::function<void(std::size_t)> fill_part;
  std::function<void(std::size_t, std::size_t, std::size_t)> choose = [&](std::size_t p, std::size_t from,
                                                                         std::size_t left) {
    if (left == 0) {
      fill_part(p + 1);
      return;
    }
    for (std::size_t x = from; x < n; ++x) {
      if (part[x] != 0xff) continue;
      part[x] = static_cast<std::uint8_t>(p);
      choose(p, x + 1, left - 1);
      part[x] = 0xff;
    }
  };
  fill_part = [&](std::size_t p) {
    if (p == l) {
      fn(part);
      return;
    }
    std::size_t a = 0;
    while (part[a] != 0xff) ++a;
    part[a] = static_cast<std::uint8_t>(p);
    choose(p, a + 1, m - 1);
    part[a] = 0xff;
  };
  fill_part(0);
}

std::vector<UniformPartition> enumerate_uniform_partitions(std::size_t n, std::size_t l, std::uint64_t cap) {
  std::vector<UniformPartition> out;
  for_each_uniform_partition(
      n, l,
      [&](const std::vector<std::uint8_t>& po) {
        UniformPartition u;
        u.parts.resize(l);
        for (std::size_t p = 0; p < n; ++p) u.parts[po[p]].push_back(static_cast<point_t>(p));
        out.push_back(std::move(u));
      },
      cap);
  return out;
}

bool stabilizes_partition(const Perm& x, const std::vector<std::uint8_t>& part_of, std::size_t l) {
  std::uint8_t sigma[256];
  std::fill(sigma, sigma + l, 0xff);
  for (std::size_t p = 0; p < part_of.size(); ++p) {
    std::uint8_t a = part_of[p], b = part_of[x[static_cast<point_t>(p)]];
    if (sigma[a] == 0xff)
      sigma[a] = b;
    else if (sigma[a] != b)
      return false;
  }
  return true;
}

std::uint64_t partition_fix_count(const Perm& x, std::size_t n, std::size_t l, std::uint64_t cap) {
  if (x.degree() != n) throw degree_mismatch("partition_fix_count: degree differs from n");
  std::uint64_t c = 0;
  for_each_uniform_partition(
      n, l, [&](const std::vector<std::uint8_t>& po) { c += stabilizes_partition(x, po, l); }, cap);
  return c;
}

}  // namespace spl
