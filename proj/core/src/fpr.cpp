#include "spreadlab/fpr.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "spreadlab/actions.hpp"

namespace spl {

namespace {

// order of a raw image vector if it is prime, else 0; skips Perm allocation
std::uint64_t prime_order_of(const std::vector<point_t>& img, std::vector<char>& done) {
  const std::size_t n = img.size();
  std::fill(done.begin(), done.end(), 0);
  std::uint64_t p = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (done[s]) continue;
    std::uint64_t L = 0;
    std::size_t x = s;
    do {
      done[x] = 1;
      x = img[x];
      ++L;
    } while (x != s);
    if (L == 1) continue;
    if (p == 0)
      p = L;
    else if (p != L)
      return 0;
  }
  return (p && is_prime_u64(p)) ? p : 0;
}

rational pow_q(const rational& b, std::uint64_t e) {
  rational r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r *= b;
  return r;
}

bigint ipow(std::uint64_t b, std::uint64_t e) {
  bigint r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r *= b;
  return r;
}

// number of perfect matchings on 2m points
bigint matchings(std::size_t m) {
  return factorial(static_cast<unsigned>(2 * m)) / (factorial(static_cast<unsigned>(m)) * ipow(2, m));
}

std::vector<std::size_t> primes_upto(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t p = 2; p <= n; ++p)
    if (is_prime_u64(p)) out.push_back(p);
  return out;
}

Perm shape_rep(std::size_t n, std::size_t p, std::size_t k) {
  CycleType ct;
  ct.parts.emplace_back(p, k);
  if (n > p * k) ct.parts.emplace_back(1, n - p * k);
  return canonical_perm(ct);
}

// per (n,l): Fix counts for every prime shape in one pass over the partitions
struct ShapeCount {
  std::size_t p, k;
  Perm x;
  std::uint64_t fixed = 0;
};

std::vector<ShapeCount> shape_counts(std::size_t n, std::size_t l, std::uint64_t& total) {
  std::vector<ShapeCount> sc;
  for (std::size_t p : primes_upto(n))
    for (std::size_t k = 1; p * k <= n; ++k) sc.push_back({p, k, shape_rep(n, p, k), 0});
  total = 0;
  for_each_uniform_partition(n, l, [&](const std::vector<std::uint8_t>& part_of) {
    ++total;
    for (auto& s : sc)
      if (stabilizes_partition(s.x, part_of, l)) ++s.fixed;
  });
  return sc;
}

}  // namespace

const FprRow& FprTable::row(const std::string& label) const {
  for (const auto& r : rows)
    if (r.label == label) return r;
  throw std::invalid_argument("fpr table for " + subgroup + " has no class \"" + label + "\"");
}

FprTable fpr_table(const ClassIndex& CI, const DistinguishedSubgroup& H, std::uint64_t cap, unsigned threads) {
  const PermGroup& G = CI.group();
  if (H.gens.empty()) throw std::invalid_argument("fpr_table: subgroup without generators");
  for (const auto& h : H.gens)
    if (!G.contains(h)) throw not_in_group("fpr_table: generator of " + H.label + " not in G");
  if (H.order > bigint(cap))
    throw cap_exceeded("fpr_table: |" + H.label + "| = " + H.order.str() + " exceeds cap " + std::to_string(cap));
  PermGroup Hg = subgroup(G, H.gens);
  if (threads < 1) threads = 1;
  const auto& classes = CI.classes();
  std::vector<std::vector<std::uint64_t>> counts(threads, std::vector<std::uint64_t>(classes.size(), 0));
  std::vector<std::vector<char>> scratch(threads, std::vector<char>(G.degree()));
  std::mutex err_mu;
  std::string err;
  for_each_element_parallel(Hg, cap, threads, [&](const std::vector<point_t>& img, unsigned tid) {
    if (!prime_order_of(img, scratch[tid])) return;
    try {
      ++counts[tid][CI.class_of(unchecked_perm(img))];
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lk(err_mu);
      err = e.what();
    }
  });
  if (!err.empty()) throw std::runtime_error("fpr_table: unclassifiable element: " + err);

  FprTable T;
  T.subgroup = H.label;
  T.subgroup_order = Hg.order();
  T.prime_order_elements = 0;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (!is_prime_u64(classes[c].order)) continue;
    std::uint64_t m = 0;
    for (unsigned t = 0; t < threads; ++t) m += counts[t][c];
    FprRow r;
    r.class_id = c;
    r.label = classes[c].label;
    r.order = classes[c].order;
    r.meet = m;
    r.class_size = classes[c].size;
    r.fpr = rational(r.meet, r.class_size);
    T.prime_order_elements += m;
    T.rows.push_back(std::move(r));
  }
  return T;
}

std::string cert_kind_name(CertKind k) {
  switch (k) {
    case CertKind::qhat: return "qhat";
    case CertKind::uniform_spread_lower: return "uniform-spread-lower";
    case CertKind::lemma_bd: return "lemma-bd";
  }
  return "?";
}

namespace {

// per prime-order class: sum over the overgroups of fpr(x, G/H)
std::vector<rational> fpr_sums(const ClassIndex& CI, const std::vector<FprTable>& tables) {
  std::vector<rational> sum(CI.classes().size(), 0);
  for (const auto& T : tables)
    for (const auto& r : T.rows) sum.at(r.class_id) += r.fpr;
  return sum;
}

std::vector<OvergroupEntry> entries(const std::vector<FprTable>& tables) {
  std::vector<OvergroupEntry> out;
  for (const auto& T : tables) out.push_back({T.subgroup, T.subgroup_order, 1});
  return out;
}

}  // namespace

Certificate qhat(const ClassIndex& CI, const std::string& group, const std::string& cls,
                 const std::vector<FprTable>& tables, std::uint64_t c) {
  if (c < 1) throw std::invalid_argument("qhat: c must be positive");
  Certificate C;
  C.kind = CertKind::qhat;
  C.group = group;
  C.cls = cls;
  C.overgroups = entries(tables);
  C.c = c;
  auto sum = fpr_sums(CI, tables);
  C.value = 0;
  for (std::size_t i = 0; i < sum.size(); ++i) {
    if (!is_prime_u64(CI.classes()[i].order) || sum[i] == 0) continue;
    C.value += rational(CI.classes()[i].size) * pow_q(sum[i], c);
  }
  C.holds = C.value < 1;
  C.conclusion = C.holds ? "gamma_u(G) <= " + std::to_string(c) + " witnessed by class " + cls
                         : "inconclusive: Qhat >= 1";
  return C;
}

Certificate uniform_spread_lower(const ClassIndex& CI, const std::string& group, const std::string& cls,
                                 const std::vector<FprTable>& tables) {
  Certificate C;
  C.kind = CertKind::uniform_spread_lower;
  C.group = group;
  C.cls = cls;
  C.overgroups = entries(tables);
  auto sum = fpr_sums(CI, tables);
  rational m = 0;
  for (std::size_t i = 0; i < sum.size(); ++i)
    if (is_prime_u64(CI.classes()[i].order)) m = std::max(m, sum[i]);
  C.value = m;
  if (m == 0) {
    C.holds = true;
    C.conclusion = "no prime order element lies in an overgroup; no finite bound from fprs";
    return C;
  }
  // largest k with m < 1/k, i.e. k < 1/m
  rational inv = 1 / m;
  bigint k = numerator(inv) / denominator(inv);
  if (denominator(inv) == 1) k -= 1;
  C.k_max = to_u64(k);
  C.c = *C.k_max;
  C.holds = *C.k_max >= 1;
  C.conclusion = C.holds ? "u(G) >= " + k.str() + " witnessed by class " + cls : "inconclusive: max fpr sum >= 1";
  return C;
}

rational lemma_bd_bound(const std::vector<rational>& A, const rational& B, std::uint64_t c) {
  if (B <= 0) throw std::invalid_argument("lemma_bd_bound: B must be positive");
  if (c < 1) throw std::invalid_argument("lemma_bd_bound: c must be positive");
  rational s = 0;
  for (const auto& a : A) s += a;
  return pow_q(s, c) / pow_q(B, c - 1);
}

Certificate lemma_bd_certificate(const std::string& group, const std::string& cls,
                                 const std::vector<rational>& A, const rational& B, std::uint64_t c) {
  Certificate C;
  C.kind = CertKind::lemma_bd;
  C.group = group;
  C.cls = cls;
  C.c = c;
  C.value = lemma_bd_bound(A, B, c);
  C.holds = C.value < 1;
  C.conclusion = C.holds ? "gamma_u(G) <= " + std::to_string(c) + " witnessed by class " + cls
                         : "inconclusive: bound >= 1";
  return C;
}

OvergroupTables overgroup_tables(const GroupSpec& spec, const std::string& label, const FprOptions& opt) {
  OvergroupTables out;
  out.G = construct(spec, opt.cache_dir);
  out.CI = ClassIndex::build_auto(out.G, opt.class_cap);
  for (const auto& H : maximal_overgroups(spec, label))
    out.tables.push_back(fpr_table(out.CI, H, opt.subgroup_cap, opt.threads));
  return out;
}

Certificate qhat(const GroupSpec& spec, const std::string& label, std::uint64_t c, const FprOptions& opt) {
  auto T = overgroup_tables(spec, label, opt);
  return qhat(T.CI, spec.str(), label, T.tables, c);
}

Certificate uniform_spread_lower(const GroupSpec& spec, const std::string& label, const FprOptions& opt) {
  auto T = overgroup_tables(spec, label, opt);
  return uniform_spread_lower(T.CI, spec.str(), label, T.tables);
}

rational partition_fpr(const Perm& x, std::size_t l) {
  const std::size_t n = x.degree();
  return rational(bigint(partition_fix_count(x, n, l)), uniform_partition_count(n, l));
}

rational closed_fpr_3cycle(std::size_t n, std::size_t l) {
  if (l < 2 || l >= n || n % l) throw std::invalid_argument("closed_fpr_3cycle: need l | n and 1 < l < n");
  const std::size_t m = n / l;
  if (m < 3) return 0;
  return rational(bigint(m) * (m - 1) * (m - 2) * l, bigint(n) * (n - 1) * (n - 2));
}

rational closed_fpr_half_odd(std::size_t n, std::size_t p, std::size_t k) {
  if (n % 2 || p < 3 || !is_prime_u64(p) || k < 1 || p * k > n)
    throw std::invalid_argument("closed_fpr_half_odd: need n even, p an odd prime, 1 <= k, pk <= n");
  if (k % 2) return 0;
  const std::size_t l = n / 2, t = p * k / 2, h = k / 2;
  bigint pair_ways = factorial(static_cast<unsigned>(k)) / (factorial(static_cast<unsigned>(h)) * ipow(2, h));
  bigint num = ipow(p, h) * pair_ways * matchings(l - t);
  return rational(num, matchings(l));
}

rational closed_fpr_half_even(std::size_t n, std::size_t k) {
  if (n % 2 || k < 1 || k > n / 2) throw std::invalid_argument("closed_fpr_half_even: need n even, 1 <= k <= n/2");
  const std::size_t l = n / 2;
  bigint s = 0;
  for (std::size_t i = 0; 2 * i <= k; ++i)
    s += factorial(static_cast<unsigned>(k)) /
         (factorial(static_cast<unsigned>(k - 2 * i)) * factorial(static_cast<unsigned>(i)) * ipow(2, i)) *
         ipow(2, i);
  return rational(s * matchings(l - k), matchings(l));
}

FprBound fpr_lemma_bound(std::size_t n, std::size_t l, std::size_t p, std::size_t k) {
  if (l < 2 || l >= n || n % l) throw std::invalid_argument("fpr_lemma_bound: need l | n and 1 < l < n");
  if (!is_prime_u64(p) || k < 1 || p * k > n) throw std::invalid_argument("fpr_lemma_bound: bad shape");
  const rational L(static_cast<long long>(l));
  FprBound b;
  // l > n/6 written as 6l > n
  const bool big_l = 6 * l > n;
  if (p != 2) {
    b.in_hypothesis = n >= 8;
    if ((p == 3 && k == 1) || big_l) {
      b.value = 1 / (L * L);
      b.rule = "1/l^2";
    } else {
      b.value = 1 / (L * L * L);
      b.rule = "1/l^3";
    }
    return b;
  }
  b.in_hypothesis = n >= 14;
  if (k == 1) {
    b.value = 1 / L;
    b.rule = "1/l";
  } else if (k == 2 && 2 * l == n) {
    b.value = rational(6, bigint(n) * n);
    b.rule = "6/n^2";
  } else if (k == 2 && l == 2) {
    b.value = rational(33, 128);
    b.rule = "33/128";
  } else if (k == 2) {
    b.value = 1 / (L * L);
    b.rule = "1/l^2";
  } else if (big_l) {
    b.value = 1 / (L * L);
    b.rule = "1/l^2";
  } else {
    b.value = 1 / (L * L * L);
    b.rule = "1/l^3";
  }
  return b;
}

FprBoundReport verify_fpr_lemma_bounds(std::size_t n_lo, std::size_t n_hi) {
  FprBoundReport rep;
  for (std::size_t n = n_lo; n <= n_hi; ++n) {
    for (std::size_t l = 2; l < n; ++l) {
      if (n % l) continue;
      std::uint64_t total = 0;
      auto sc = shape_counts(n, l, total);
      for (const auto& s : sc) {
        FprBoundCase c;
        c.n = n;
        c.l = l;
        c.p = s.p;
        c.k = s.k;
        c.fpr = rational(bigint(s.fixed), bigint(total));
        FprBound b = fpr_lemma_bound(n, l, s.p, s.k);
        c.bound = b.value;
        c.rule = b.rule;
        c.in_hypothesis = b.in_hypothesis;
        c.margin = c.bound - c.fpr;
        c.holds = c.fpr < c.bound;
        if (!c.holds) {
          if (c.in_hypothesis)
            rep.passes = false;
          else
            ++rep.outside_failures;
        }
        rep.cases.push_back(std::move(c));
      }
    }
  }
  return rep;
}

std::vector<ClosedFormCase> check_closed_forms(std::size_t n_lo, std::size_t n_hi) {
  std::vector<ClosedFormCase> out;
  for (std::size_t n = std::max<std::size_t>(n_lo, 4); n <= n_hi; ++n) {
    for (std::size_t l = 2; l < n; ++l) {
      if (n % l) continue;
      std::uint64_t total = 0;
      auto sc = shape_counts(n, l, total);
      for (const auto& s : sc) {
        ClosedFormCase c;
        c.n = n;
        c.l = l;
        c.p = s.p;
        c.k = s.k;
        c.enumerated = rational(bigint(s.fixed), bigint(total));
        if (s.p == 3 && s.k == 1) {
          c.formula = "3cycle";
          c.closed = closed_fpr_3cycle(n, l);
        } else if (2 * l == n && s.p == 2) {
          c.formula = "half_even";
          c.closed = closed_fpr_half_even(n, s.k);
        } else {
          continue;
        }
        c.equal = c.closed == c.enumerated;
        out.push_back(c);
        if (2 * l == n && s.p == 3 && s.k == 1) {
          // the 3-cycle also falls under the odd half formula
          c.formula = "half_odd";
          c.closed = closed_fpr_half_odd(n, 3, 1);
          c.equal = c.closed == c.enumerated;
          out.push_back(c);
        }
      }
      if (2 * l == n) {
        for (const auto& s : sc) {
          if (s.p == 2 || (s.p == 3 && s.k == 1)) continue;
          ClosedFormCase c;
          c.formula = "half_odd";
          c.n = n;
          c.l = l;
          c.p = s.p;
          c.k = s.k;
          c.enumerated = rational(bigint(s.fixed), bigint(total));
          c.closed = closed_fpr_half_odd(n, s.p, s.k);
          c.equal = c.closed == c.enumerated;
          out.push_back(c);
        }
      }
    }
  }
  return out;
}

}  // namespace spl
