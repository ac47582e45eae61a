#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_set>

#include "spreadlab/stabchain.hpp"

namespace spl {

namespace {

void partitions_rec(std::size_t rest, std::size_t maxpart, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (rest == 0) {
    out.push_back(cur);
    return;
  }
  for (std::size_t p = std::min(rest, maxpart); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(rest - p, p, cur, out);
    cur.pop_back();
  }
}

CycleType from_lengths(const std::vector<std::size_t>& lens) {
  CycleType ct;
  for (std::size_t l : lens) {
    if (!ct.parts.empty() && ct.parts.back().first == l)
      ++ct.parts.back().second;
    else
      ct.parts.emplace_back(l, 1);
  }
  return ct;
}

Perm transposition01(std::size_t n) {
  std::vector<point_t> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<point_t>(i);
  std::swap(img[0], img[1]);
  return unchecked_perm(std::move(img));
}

}  // namespace

bigint sn_centralizer_order(const CycleType& ct) {
  bigint c = 1;
  for (auto [l, m] : ct.parts) {
    for (std::size_t j = 0; j < m; ++j) c *= l;
    c *= factorial(static_cast<unsigned>(m));
  }
  return c;
}

bool is_even_type(const CycleType& ct) {
  std::size_t evens = 0;
  for (auto [l, m] : ct.parts)
    if (l % 2 == 0) evens += m;
  return evens % 2 == 0;
}

bool an_class_splits(const CycleType& ct) {
  for (auto [l, m] : ct.parts)
    if (l % 2 == 0 || m > 1) return false;
  return true;
}

bool canonical_conjugator_even(const Perm& x) {
  auto cyc = cycles(x, true);
  std::stable_sort(cyc.begin(), cyc.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
  std::vector<point_t> g(x.degree());
  point_t at = 0;
  for (const auto& c : cyc)
    for (point_t p : c) g[at++] = p;
  return is_even(unchecked_perm(std::move(g)));
}

ClassIndex ClassIndex::build_auto(const PermGroup& G, std::uint64_t cap) {
  if (G.kind() != GroupKind::generic) return build(G, ClassMode::cycle_type, cap);
  return build(G, ClassMode::enumerate, cap);
}

ClassIndex ClassIndex::build(const PermGroup& G, ClassMode mode, std::uint64_t cap) {
  ClassIndex CI;
  CI.G_ = G;
  CI.mode_ = mode;
  const std::size_t n = G.degree();

  if (mode == ClassMode::cycle_type) {
    if (G.kind() == GroupKind::generic)
      throw std::invalid_argument("cycle-type mode needs the full symmetric or alternating group");
    const bool alt = G.kind() == GroupKind::alternating;
    std::vector<std::vector<std::size_t>> parts;
    std::vector<std::size_t> cur;
    partitions_rec(n, n, cur, parts);
    const bigint nf = factorial(static_cast<unsigned>(n));
    struct Row {
      ConjClassInfo info;
      CycleType ct;
      char b;
    };
    std::vector<Row> rows;
    for (const auto& p : parts) {
      CycleType ct = from_lengths(p);
      if (alt && !is_even_type(ct)) continue;
      bigint size = nf / sn_centralizer_order(ct);
      ConjClassInfo info;
      info.rep = canonical_perm(ct);
      info.order = element_order(ct);
      if (alt && an_class_splits(ct) && n >= 2) {
        info.size = size / 2;
        info.label = ct.label() + "a";
        rows.push_back({info, ct, 0});
        info.rep = info.rep.conj(transposition01(n));
        info.label = ct.label() + "b";
        rows.push_back({info, ct, 1});
      } else {
        info.size = size;
        info.label = ct.label();
        rows.push_back({info, ct, 0});
      }
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
      if (a.info.order != b.info.order) return a.info.order < b.info.order;
      if (a.info.size != b.info.size) return a.info.size < b.info.size;
      return a.info.label < b.info.label;
    });
    for (auto& r : rows) {
      int id = static_cast<int>(CI.classes_.size());
      auto& slot = CI.by_type_.try_emplace(r.ct, -1, -1).first->second;
      (r.b ? slot.second : slot.first) = id;
      CI.classes_.push_back(r.info);
      CI.ctypes_.push_back(r.ct);
      CI.split_b_.push_back(r.b);
    }
    return CI;
  }

  if (G.order() > bigint(cap))
    throw cap_exceeded("conjugacy classes: |G| = " + G.order().str() + " exceeds cap " + std::to_string(cap));
  const std::uint64_t N = G.order_u64();
  const std::uint32_t unset = UINT32_MAX;
  std::vector<std::uint32_t> cls(N, unset);
  struct Raw {
    std::uint64_t rep_rank;
    std::uint64_t size;
    std::uint64_t order;
  };
  std::vector<Raw> raw;
  std::vector<Perm> queue;
  for (std::uint64_t r = 0; r < N; ++r) {
    if (cls[r] != unset) continue;
    const std::uint32_t id = static_cast<std::uint32_t>(raw.size());
    Perm rep = G.unrank(r);
    cls[r] = id;
    queue.assign(1, rep);
    std::uint64_t size = 1;
    for (std::size_t a = 0; a < queue.size(); ++a) {
      for (const auto& g : G.generators()) {
        Perm c = queue[a].conj(g);
        std::uint64_t rc = G.rank(c);
        if (cls[rc] == unset) {
          cls[rc] = id;
          ++size;
          queue.push_back(std::move(c));
        }
      }
    }
    raw.push_back({r, size, element_order(rep)});
  }
  std::vector<std::uint32_t> idx(raw.size());
  std::iota(idx.begin(), idx.end(), 0u);
  std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (raw[a].order != raw[b].order) return raw[a].order < raw[b].order;
    if (raw[a].size != raw[b].size) return raw[a].size < raw[b].size;
    return raw[a].rep_rank < raw[b].rep_rank;
  });
  std::vector<std::uint32_t> remap(raw.size());
  std::map<std::uint64_t, int> per_order;
  for (std::uint32_t k = 0; k < idx.size(); ++k) {
    const Raw& rw = raw[idx[k]];
    remap[idx[k]] = k;
    ConjClassInfo info;
    info.rep = G.unrank(rw.rep_rank);
    info.order = rw.order;
    info.size = rw.size;
    info.label = "o" + std::to_string(rw.order) + "-" + std::to_string(++per_order[rw.order]);
    CI.classes_.push_back(std::move(info));
  }
  for (auto& c : cls) c = remap[c];
  CI.class_of_rank_ = std::move(cls);
  (void)n;
  return CI;
}

std::size_t ClassIndex::class_of(const Perm& x) const {
  if (mode_ == ClassMode::enumerate) return class_of_rank_.at(G_.rank(x));
  CycleType ct = cycle_type(x);
  auto it = by_type_.find(ct);
  if (it == by_type_.end()) throw not_in_group("class_of: no class with cycle type " + ct.label());
  if (it->second.second < 0) return static_cast<std::size_t>(it->second.first);
  // split class: the conjugator from the canonical element decides
  return static_cast<std::size_t>(canonical_conjugator_even(x) ? it->second.first : it->second.second);
}

std::size_t ClassIndex::find_label(const std::string& label) const {
  for (std::size_t i = 0; i < classes_.size(); ++i)
    if (classes_[i].label == label) return i;
  throw std::invalid_argument("unknown class label \"" + label + "\"");
}

std::vector<ConjClassInfo> conjugacy_classes(const PermGroup& G, ClassMode mode, std::uint64_t cap) {
  return ClassIndex::build(G, mode, cap).classes();
}

std::vector<ConjClassInfo> prime_order_class_reps(const PermGroup& G, ClassMode mode, std::uint64_t cap) {
  std::vector<ConjClassInfo> out;
  for (const auto& c : conjugacy_classes(G, mode, cap))
    if (is_prime_u64(c.order)) out.push_back(c);
  return out;
}

bigint centralizer_order(const PermGroup& G, const Perm& x, std::uint64_t cap) {
  if (!G.contains(x)) throw not_in_group("centralizer_order: element not in G");
  if (G.kind() != GroupKind::generic) {
    CycleType ct = cycle_type(x);
    bigint c = sn_centralizer_order(ct);
    if (G.kind() == GroupKind::alternating && !an_class_splits(ct)) c /= 2;
    return c;
  }
  std::unordered_set<Perm, PermHash> seen{x};
  std::vector<Perm> queue{x};
  for (std::size_t a = 0; a < queue.size(); ++a) {
    for (const auto& g : G.generators()) {
      Perm c = queue[a].conj(g);
      if (seen.insert(c).second) {
        if (seen.size() > cap) throw cap_exceeded("centralizer_order: conjugacy orbit exceeds cap");
        queue.push_back(std::move(c));
      }
    }
  }
  return G.order() / bigint(seen.size());
}

}  // namespace spl
