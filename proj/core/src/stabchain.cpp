#include "spreadlab/stabchain.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <thread>

namespace spl {

namespace {

point_t first_moved(const Perm& g) {
  for (point_t i = 0; i < g.degree(); ++i)
    if (g[i] != i) return i;
  return static_cast<point_t>(g.degree());
}

bool fixes_prefix(const Perm& g, const std::vector<ChainLevel>& lv, std::size_t upto) {
  for (std::size_t l = 0; l < upto; ++l)
    if (g[lv[l].base] != lv[l].base) return false;
  return true;
}

}  // namespace

// Incremental Schreier-Sims state. The product of the basic orbit lengths is
// always a lower bound for the order of the group being built, since every
// level only ever holds genuine elements of the relevant stabilizer.
class ChainBuilder {
 public:
  std::size_t n;
  std::vector<ChainLevel> lv;

  ChainBuilder(std::size_t degree, const std::vector<point_t>& prefix, const std::vector<Perm>& gens)
      : n(degree) {
    for (point_t b : prefix) push_level(b);
    std::vector<Perm> g;
    for (const auto& x : gens)
      if (!x.is_identity()) g.push_back(x);
    for (const auto& x : g) {
      if (fixes_prefix(x, lv, lv.size())) push_level(first_moved(x));
    }
    for (std::size_t l = 0; l < lv.size(); ++l) {
      for (const auto& x : g)
        if (fixes_prefix(x, lv, l)) lv[l].gens.push_back(x);
      rebuild(l);
    }
  }

  void push_level(point_t b) {
    ChainLevel L;
    L.base = b;
    L.pos.assign(n, -1);
    L.orbit.push_back(b);
    L.pos[b] = 0;
    L.u.push_back(Perm::identity(n));
    L.uinv.push_back(Perm::identity(n));
    lv.push_back(std::move(L));
  }

  // extend the orbit and transversal of level l under its current generators
  void rebuild(std::size_t l) {
    ChainLevel& L = lv[l];
    for (std::size_t a = 0; a < L.orbit.size(); ++a) {
      for (const auto& s : L.gens) {
        point_t c = s[L.orbit[a]];
        if (L.pos[c] >= 0) continue;
        L.pos[c] = static_cast<std::int32_t>(L.orbit.size());
        L.orbit.push_back(c);
        Perm t = L.u[a] * s;
        L.uinv.push_back(t.inverse());
        L.u.push_back(std::move(t));
      }
    }
  }

  // residue and the level where sifting stopped (lv.size() if it passed)
  std::size_t sift(Perm& g, std::size_t from) const {
    std::vector<point_t> tmp(n);
    for (std::size_t l = from; l < lv.size(); ++l) {
      const ChainLevel& L = lv[l];
      std::int32_t p = L.pos[g[L.base]];
      if (p < 0) return l;
      if (p == 0) continue;
      const auto& ui = L.uinv[p].images();
      const auto& gi = g.images();
      for (std::size_t i = 0; i < n; ++i) tmp[i] = ui[gi[i]];
      g = unchecked_perm(tmp);
    }
    return lv.size();
  }

  // put a nontrivial residue into levels from..j, adding a level if needed
  void absorb(const Perm& res, std::size_t from, std::size_t j) {
    if (j == lv.size()) push_level(first_moved(res));
    for (std::size_t l = from; l <= j; ++l) {
      lv[l].gens.push_back(res);
      rebuild(l);
    }
  }

  bigint order() const {
    bigint o = 1;
    for (const auto& L : lv) o *= L.orbit.size();
    return o;
  }

  bool reached(const bigint* target) const { return target && order() >= *target; }

  // product replacement sifting; stops early at target
  void random_fill(const std::vector<Perm>& gens, std::uint64_t seed, int quiet_limit,
                   const bigint* target) {
    std::vector<Perm> st;
    for (const auto& g : gens)
      if (!g.is_identity()) st.push_back(g);
    if (st.empty()) return;
    const std::size_t k0 = st.size();
    while (st.size() < 5) st.push_back(st[st.size() % k0]);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, st.size() - 1);
    Perm acc = st[0];
    auto step = [&] {
      std::size_t i = pick(rng), j = pick(rng);
      while (j == i) j = pick(rng);
      st[i] = (rng() & 1) ? st[i] * st[j] : st[j] * st[i];
      acc = acc * st[i];
    };
    for (int k = 0; k < 12; ++k) step();
    int quiet = 0;
    while (quiet < quiet_limit) {
      if (reached(target)) return;
      step();
      Perm r = acc;
      std::size_t j = sift(r, 0);
      if (j == lv.size() && r.is_identity()) {
        ++quiet;
        continue;
      }
      quiet = 0;
      absorb(r, std::min<std::size_t>(1, j), j);
    }
  }

  // deterministic completion (Holt's SCHREIERSIMS), optional early exit at target
  void complete(const bigint* target) {
    if (lv.empty()) return;
    std::vector<point_t> buf(n);
    std::size_t i = lv.size();
    while (i-- > 0) {
      if (reached(target)) return;
    restart:
      bool changed = false;
      for (std::size_t a = 0; a < lv[i].orbit.size() && !changed; ++a) {
        for (std::size_t si = 0; si < lv[i].gens.size(); ++si) {
          const ChainLevel& L = lv[i];
          const Perm& s = L.gens[si];
          point_t beta_s = s[L.orbit[a]];
          const Perm& ua = L.u[a];
          const Perm& ub = L.uinv[L.pos[beta_s]];
          // h = u_a * s * u_{a^s}^-1
          bool trivial = true;
          for (std::size_t x = 0; x < n; ++x) {
            buf[x] = ub[s[ua[x]]];
            if (buf[x] != x) trivial = false;
          }
          if (trivial) continue;
          Perm h = unchecked_perm(buf);
          std::size_t j = sift(h, i + 1);
          if (j == lv.size() && h.is_identity()) continue;
          absorb(h, i + 1, j);
          i = j;
          changed = true;
          break;
        }
      }
      if (changed) {
        if (reached(target)) return;
        goto restart;
      }
    }
  }
};

GroupKind PermGroup::detect_kind(std::size_t n, const bigint& order) {
  if (n < 2) return GroupKind::generic;
  bigint f = factorial(static_cast<unsigned>(n));
  if (order == f) return GroupKind::symmetric;
  if (n >= 3 && order * 2 == f) return GroupKind::alternating;
  return GroupKind::generic;
}

PermGroup PermGroup::build(std::vector<Perm> gens, const std::vector<point_t>& base_prefix) {
  if (gens.empty()) throw std::invalid_argument("build_group: empty generator list");
  const std::size_t n = gens[0].degree();
  return build(n, std::move(gens), base_prefix);
}

PermGroup PermGroup::build(std::size_t degree, std::vector<Perm> gens,
                           const std::vector<point_t>& base_prefix) {
  for (const auto& g : gens)
    if (g.degree() != degree) throw degree_mismatch("build_group: generator degree mismatch");
  ChainBuilder cb(degree, base_prefix, gens);
  std::uint64_t seed = 0x5eed;
  for (const auto& g : gens) seed = seed * 31 + g.hash();
  cb.random_fill(gens, seed, 6, nullptr);
  cb.complete(nullptr);
  auto d = std::make_shared<Data>();
  d->degree = degree;
  d->gens = std::move(gens);
  d->levels = std::move(cb.lv);
  d->order = 1;
  for (const auto& L : d->levels) d->order *= L.orbit.size();
  d->kind = detect_kind(degree, d->order);
  PermGroup G;
  G.d_ = std::move(d);
  return G;
}

PermGroup PermGroup::from_strong(std::size_t degree, std::vector<Perm> gens, std::vector<point_t> base,
                                 std::vector<std::vector<Perm>> level_gens) {
  ChainBuilder cb(degree, base, {});
  if (level_gens.size() != cb.lv.size()) throw std::invalid_argument("from_strong: level count");
  for (std::size_t l = 0; l < cb.lv.size(); ++l) {
    cb.lv[l].gens = std::move(level_gens[l]);
    cb.rebuild(l);
  }
  auto d = std::make_shared<Data>();
  d->degree = degree;
  d->gens = std::move(gens);
  d->levels = std::move(cb.lv);
  for (const auto& L : d->levels) d->order *= L.orbit.size();
  d->kind = detect_kind(degree, d->order);
  PermGroup G;
  G.d_ = std::move(d);
  return G;
}

std::vector<point_t> PermGroup::base() const {
  std::vector<point_t> b;
  for (const auto& L : d_->levels) b.push_back(L.base);
  return b;
}

std::uint64_t PermGroup::generator_hash() const {
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  for (const auto& g : d_->gens) h = (h ^ g.hash()) * 0x100000001b3ull;
  return h;
}

bool PermGroup::contains(const Perm& p) const {
  if (p.degree() != degree()) throw degree_mismatch("membership: degree mismatch");
  std::vector<point_t> g = p.images(), tmp(degree());
  for (const auto& L : d_->levels) {
    std::int32_t k = L.pos[g[L.base]];
    if (k < 0) return false;
    const auto& ui = L.uinv[k].images();
    for (std::size_t i = 0; i < g.size(); ++i) tmp[i] = ui[g[i]];
    g.swap(tmp);
  }
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g[i] != i) return false;
  return true;
}

bool PermGroup::is_transitive() const {
  if (degree() <= 1) return true;
  if (d_->levels.empty()) return false;
  // level 0 holds every generator, so its orbit is a full group orbit
  return d_->levels[0].orbit.size() == degree();
}

std::vector<std::vector<point_t>> PermGroup::orbits() const {
  std::size_t n = degree();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<point_t>> out;
  for (point_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<point_t> orb{s};
    comp[s] = static_cast<int>(out.size());
    for (std::size_t a = 0; a < orb.size(); ++a)
      for (const auto& g : d_->gens) {
        point_t c = g[orb[a]];
        if (comp[c] < 0) {
          comp[c] = static_cast<int>(out.size());
          orb.push_back(c);
        }
      }
    std::sort(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  return out;
}

std::uint64_t PermGroup::rank(const Perm& p) const {
  std::vector<point_t> g = p.images(), tmp(degree());
  std::uint64_t r = 0;
  for (const auto& L : d_->levels) {
    std::int32_t k = L.pos[g[L.base]];
    if (k < 0) throw not_in_group("rank: element not in group");
    r = r * L.orbit.size() + static_cast<std::uint64_t>(k);
    if (k == 0) continue;
    const auto& ui = L.uinv[k].images();
    for (std::size_t i = 0; i < g.size(); ++i) tmp[i] = ui[g[i]];
    g.swap(tmp);
  }
  return r;
}

Perm PermGroup::unrank(std::uint64_t r) const {
  std::size_t k = d_->levels.size();
  std::vector<std::size_t> digit(k);
  for (std::size_t l = k; l-- > 0;) {
    std::size_t m = d_->levels[l].orbit.size();
    digit[l] = r % m;
    r /= m;
  }
  Perm g = Perm::identity(degree());
  for (std::size_t l = k; l-- > 0;) g = g * d_->levels[l].u[digit[l]];
  return g;
}

void PermGroup::for_each_element(std::uint64_t cap, const std::function<void(const Perm&)>& fn) const {
  if (order() > bigint(cap))
    throw cap_exceeded("element enumeration: |G| = " + order().str() + " exceeds cap " + std::to_string(cap));
  std::size_t k = d_->levels.size();
  if (k == 0) {
    fn(Perm::identity(degree()));
    return;
  }
  // level 0 is the most significant digit of rank(), so it varies slowest
  std::function<void(std::size_t, const Perm&)> rec = [&](std::size_t l, const Perm& right) {
    const ChainLevel& L = d_->levels[l];
    for (std::size_t a = 0; a < L.orbit.size(); ++a) {
      Perm cur = L.u[a] * right;
      if (l + 1 == k)
        fn(cur);
      else
        rec(l + 1, cur);
    }
  };
  rec(0, Perm::identity(degree()));
}

std::vector<Perm> PermGroup::elements(std::uint64_t cap) const {
  std::vector<Perm> out;
  for_each_element(cap, [&](const Perm& g) { out.push_back(g); });
  return out;
}

void for_each_element_parallel(const PermGroup& G, std::uint64_t cap, unsigned threads,
                               const std::function<void(const std::vector<point_t>&, unsigned)>& fn) {
  if (G.order() > bigint(cap))
    throw cap_exceeded("element enumeration: |G| = " + G.order().str() + " exceeds cap " + std::to_string(cap));
  const std::size_t n = G.degree(), k = G.num_levels();
  if (k == 0) {
    std::vector<point_t> id(n);
    std::iota(id.begin(), id.end(), point_t{0});
    fn(id, 0);
    return;
  }
  if (threads < 1) threads = 1;
  auto work = [&](unsigned tid) {
    // R[l] = u_l[d_l] * R[l-1], applied right to left on images
    std::vector<std::vector<point_t>> R(k, std::vector<point_t>(n));
    std::vector<std::size_t> dig(k, 0);
    const ChainLevel& L0 = G.level(0);
    for (std::size_t a = tid; a < L0.orbit.size(); a += threads) {
      R[0] = L0.u[a].images();
      std::size_t l = 1;
      if (k == 1) {
        fn(R[0], tid);
        continue;
      }
      dig[1] = 0;
      while (l >= 1) {
        const ChainLevel& L = G.level(l);
        if (dig[l] == L.orbit.size()) {
          --l;
          if (l >= 1) ++dig[l];
          continue;
        }
        const auto& u = L.u[dig[l]].images();
        const auto& prev = R[l - 1];
        auto& cur = R[l];
        for (std::size_t x = 0; x < n; ++x) cur[x] = prev[u[x]];
        if (l + 1 == k) {
          fn(cur, tid);
          ++dig[l];
        } else {
          ++l;
          dig[l] = 0;
        }
      }
    }
  };
  if (threads == 1) {
    work(0);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  for (auto& th : pool) th.join();
}

namespace {

bool transitive_pair(const Perm& x, const Perm& y) {
  std::size_t n = x.degree();
  std::vector<char> seen(n, 0);
  std::vector<point_t> st{0};
  seen[0] = 1;
  std::size_t cnt = 1;
  while (!st.empty()) {
    point_t a = st.back();
    st.pop_back();
    for (point_t b : {x[a], y[a]})
      if (!seen[b]) {
        seen[b] = 1;
        ++cnt;
        st.push_back(b);
      }
  }
  return cnt == n;
}

}  // namespace

bool generates_unchecked(const PermGroup& G, const Perm& x, const Perm& y) {
  if (G.order() == 1) return true;
  if (x.is_identity() && y.is_identity()) return false;
  if (G.degree() > 1 && G.is_transitive() && !transitive_pair(x, y)) return false;
  const bigint& target = G.order();
  ChainBuilder cb(G.degree(), G.base(), {x, y});
  if (cb.reached(&target)) return true;
  cb.random_fill({x, y}, x.hash() * 0x9e3779b97f4a7c15ull ^ y.hash(), 4, &target);
  if (cb.reached(&target)) return true;
  cb.complete(&target);
  return cb.order() == target;
}

bool generates(const PermGroup& G, const Perm& x, const Perm& y) {
  if (x.degree() != G.degree() || y.degree() != G.degree()) throw degree_mismatch("generates: degree mismatch");
  if (!G.contains(x) || !G.contains(y)) throw not_in_group("generates: element not in G");
  return generates_unchecked(G, x, y);
}

bigint subgroup_order(const PermGroup& G, const std::vector<Perm>& gens) {
  ChainBuilder cb(G.degree(), G.base(), gens);
  std::uint64_t seed = 17;
  for (const auto& g : gens) seed = seed * 131 + g.hash();
  cb.random_fill(gens, seed, 6, &G.order());
  cb.complete(&G.order());
  return cb.order();
}

PermGroup subgroup(const PermGroup& G, const std::vector<Perm>& gens) {
  for (const auto& g : gens)
    if (!G.contains(g)) throw not_in_group("subgroup: generator not in G");
  if (gens.empty()) return PermGroup::build(G.degree(), {Perm::identity(G.degree())});
  return PermGroup::build(G.degree(), gens, G.base());
}

}  // namespace spl
