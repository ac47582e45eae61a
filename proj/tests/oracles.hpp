#pragma once
// Brute-force references used by the unit tests. Nothing here calls the
// library's group machinery: permutations are plain image vectors.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using P = std::vector<std::uint32_t>;

inline P mul(const P& a, const P& b) {  // left to right: x -> (x a) b
  P r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
  return r;
}

inline P inv(const P& a) {
  P r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<std::uint32_t>(i);
  return r;
}

inline P ident(std::size_t n) {
  P r(n);
  std::iota(r.begin(), r.end(), 0u);
  return r;
}

// 1-based cycles
inline P cyc(std::size_t n, const std::vector<std::vector<std::uint32_t>>& cs) {
  P r = ident(n);
  for (const auto& c : cs)
    for (std::size_t i = 0; i < c.size(); ++i) r[c[i] - 1] = c[(i + 1) % c.size()] - 1;
  return r;
}

// every element of <gens>, by breadth first closure; stops past cap
inline std::set<P> closure(const std::vector<P>& gens, std::size_t cap = SIZE_MAX) {
  std::set<P> seen{ident(gens.at(0).size())};
  std::vector<P> todo{ident(gens.at(0).size())};
  while (!todo.empty() && seen.size() <= cap) {
    P x = todo.back();
    todo.pop_back();
    for (const auto& g : gens) {
      P y = mul(x, g);
      if (seen.insert(y).second) todo.push_back(y);
    }
  }
  return seen;
}

inline std::size_t order(const P& a) {
  std::size_t o = 1;
  for (P x = a; x != ident(a.size()); x = mul(x, a)) ++o;
  return o;
}

// conjugacy classes of an explicit element list, as sorted size list
inline std::vector<std::size_t> class_sizes(const std::set<P>& G) {
  std::set<P> done;
  std::vector<std::size_t> sizes;
  for (const auto& x : G) {
    if (done.count(x)) continue;
    std::set<P> cls;
    for (const auto& g : G) cls.insert(mul(mul(inv(g), x), g));
    done.insert(cls.begin(), cls.end());
    sizes.push_back(cls.size());
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

// generation matrix over an element list: gen[i][j] iff <G[i],G[j]> has the given order
inline std::vector<std::vector<char>> gen_matrix(const std::vector<P>& G, std::size_t order) {
  std::vector<std::vector<char>> m(G.size(), std::vector<char>(G.size(), 0));
  for (std::size_t i = 0; i < G.size(); ++i)
    for (std::size_t j = i; j < G.size(); ++j) {
      bool g = closure({G[i], G[j]}, order).size() == order;
      m[i][j] = m[j][i] = g;
    }
  return m;
}

// partitions of {0..n-1} into l blocks of size n/l, each as a block id per point
inline void for_each_partition(std::size_t n, std::size_t l, const std::function<void(const std::vector<int>&)>& fn) {
  const std::size_t m = n / l;
  std::vector<int> blk(n, -1);
  std::vector<std::size_t> fill(l, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t opened) {
    if (i == n) {
      fn(blk);
      return;
    }
    for (std::size_t b = 0; b < l; ++b) {
      if (b > opened) break;  // blocks opened in order of least element
      if (fill[b] == m) continue;
      blk[i] = static_cast<int>(b);
      ++fill[b];
      rec(i + 1, std::max(opened, b + 1));
      --fill[b];
    }
    blk[i] = -1;
  };
  rec(0, 0);
}

inline std::uint64_t partition_fix(const P& x, std::size_t l) {
  std::uint64_t fixed = 0;
  for_each_partition(x.size(), l, [&](const std::vector<int>& blk) {
    // x fixes the partition iff it maps each block into one block
    std::map<int, int> to;
    for (std::size_t i = 0; i < x.size(); ++i) {
      auto [it, fresh] = to.emplace(blk[i], blk[x[i]]);
      if (!fresh && it->second != blk[x[i]]) return;
    }
    ++fixed;
  });
  return fixed;
}

}  // namespace oracle
