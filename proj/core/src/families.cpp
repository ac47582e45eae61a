#include "spreadlab/families.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "spreadlab/gf.hpp"

namespace spl {

namespace {

std::vector<std::uint32_t> split_colon(const std::string& s) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("group spec: bad parameter \"" + item + "\"");
    out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
  }
  return out;
}

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

// exact square root of a perfect square, else throws
std::uint64_t exact_sqrt(std::uint64_t v) {
  std::uint64_t r = 0;
  while ((r + 1) * (r + 1) <= v) ++r;
  if (r * r != v) throw std::invalid_argument("not a perfect square");
  return r;
}

bool is_suzuki_q(std::uint32_t q) {
  std::uint32_t p, k;
  return prime_power(q, p, k) && p == 2 && k % 2 == 1 && k >= 3;
}

bool is_ree_q(std::uint32_t q) {
  std::uint32_t p, k;
  return prime_power(q, p, k) && p == 3 && k % 2 == 1 && k >= 3;
}

using Mat = std::vector<std::uint32_t>;  // row-major d x d

Mat identity_mat(std::uint32_t d) {
  Mat m(d * d, 0);
  for (std::uint32_t i = 0; i < d; ++i) m[i * d + i] = 1;
  return m;
}

Mat mat_mul(const Field& F, const Mat& a, const Mat& b, std::uint32_t d) {
  Mat c(d * d, 0);
  for (std::uint32_t i = 0; i < d; ++i)
    for (std::uint32_t k = 0; k < d; ++k) {
      std::uint32_t x = a[i * d + k];
      if (!x) continue;
      for (std::uint32_t j = 0; j < d; ++j) c[i * d + j] = F.add(c[i * d + j], F.mul(x, b[k * d + j]));
    }
  return c;
}

Mat mat_pow(const Field& F, Mat a, std::uint64_t e, std::uint32_t d) {
  Mat r = identity_mat(d);
  while (e) {
    if (e & 1) r = mat_mul(F, r, a, d);
    a = mat_mul(F, a, a, d);
    e >>= 1;
  }
  return r;
}

// points of PG(d-1, q) as normalized row vectors (first nonzero entry 1)
struct ProjSpace {
  FieldPtr F;
  std::uint32_t d;
  std::vector<std::vector<std::uint32_t>> pts;
  std::unordered_map<std::uint64_t, point_t> index;

  ProjSpace(FieldPtr field, std::uint32_t dim) : F(std::move(field)), d(dim) {
    const std::uint32_t q = F->q();
    for (std::uint32_t lead = 0; lead < d; ++lead) {
      std::uint64_t tail = ipow(q, d - lead - 1);
      for (std::uint64_t t = 0; t < tail; ++t) {
        std::vector<std::uint32_t> v(d, 0);
        v[lead] = 1;
        std::uint64_t x = t;
        for (std::uint32_t j = d; j-- > lead + 1;) {
          v[j] = static_cast<std::uint32_t>(x % q);
          x /= q;
        }
        index.emplace(key(v), static_cast<point_t>(pts.size()));
        pts.push_back(std::move(v));
      }
    }
  }

  std::uint64_t key(const std::vector<std::uint32_t>& v) const {
    std::uint64_t k = 0;
    for (auto c : v) k = k * F->q() + c;
    return k;
  }

  point_t locate(std::vector<std::uint32_t> v) const {
    std::uint32_t i = 0;
    while (i < d && v[i] == 0) ++i;
    if (i == d) throw std::logic_error("zero vector in projective space");
    std::uint32_t s = F->inv(v[i]);
    for (auto& c : v) c = F->mul(c, s);
    return index.at(key(v));
  }

  Perm act(const Mat& M) const {
    std::vector<point_t> img(pts.size());
    std::vector<std::uint32_t> w(d);
    for (std::size_t a = 0; a < pts.size(); ++a) {
      std::fill(w.begin(), w.end(), 0);
      for (std::uint32_t i = 0; i < d; ++i) {
        std::uint32_t x = pts[a][i];
        if (!x) continue;
        for (std::uint32_t j = 0; j < d; ++j) w[j] = F->add(w[j], F->mul(x, M[i * d + j]));
      }
      img[a] = locate(w);
    }
    return Perm(std::move(img));
  }

  Perm frobenius() const {
    std::vector<point_t> img(pts.size());
    for (std::size_t a = 0; a < pts.size(); ++a) {
      auto w = pts[a];
      for (auto& c : w) c = F->frobenius(c, 1);
      img[a] = locate(w);
    }
    return Perm(std::move(img));
  }
};

Mat transvection(std::uint32_t d, std::uint32_t i, std::uint32_t j, std::uint32_t lambda) {
  Mat m = identity_mat(d);
  m[i * d + j] = lambda;
  return m;
}

// least monic polynomial (coefficient order) whose companion matrix has order q^d - 1
Mat singer_companion(const Field& F, std::uint32_t d) {
  const std::uint32_t q = F.q();
  const std::uint64_t full = ipow(q, d) - 1;
  const auto primes = prime_factors(full);
  const std::uint64_t total = ipow(q, d);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<std::uint32_t> c(d);
    std::uint64_t x = code;
    for (std::uint32_t i = 0; i < d; ++i) {
      c[i] = static_cast<std::uint32_t>(x % q);
      x /= q;
    }
    if (c[0] == 0) continue;
    // companion: row i maps e_i to e_{i+1}, last row -c
    Mat C(d * d, 0);
    for (std::uint32_t i = 0; i + 1 < d; ++i) C[i * d + i + 1] = 1;
    for (std::uint32_t j = 0; j < d; ++j) C[(d - 1) * d + j] = F.neg(c[j]);
    if (mat_pow(F, C, full, d) != identity_mat(d)) continue;
    bool ok = true;
    for (auto r : primes)
      if (mat_pow(F, C, full / r, d) == identity_mat(d)) {
        ok = false;
        break;
      }
    if (ok) return C;
  }
  throw std::logic_error("no primitive polynomial found");
}

struct Built {
  std::vector<Perm> gens;
  Perm singer;  // PGammaL / PSL only
};

Built build_linear(const GroupSpec& sp) {
  auto F = Field::of_order(sp.q);
  const std::uint32_t d = sp.d;
  ProjSpace P(F, d);
  const std::uint32_t w = F->primitive();
  Built out;
  if (sp.family == Family::PSL2 || sp.family == Family::PGL2) {
    // torus z -> w^2 z, unipotent z -> z+1, Weyl z -> -1/z
    Mat t = {w, 0, 0, F->inv(w)};
    Mat u = {1, 0, 1, 1};
    Mat wy = {0, F->neg(1), 1, 0};
    out.gens = {P.act(t), P.act(u), P.act(wy)};
    if (sp.family == Family::PGL2) out.gens.push_back(P.act(Mat{w, 0, 0, 1}));
    return out;
  }
  for (std::uint32_t e = 0; e < F->k(); ++e) {
    std::uint32_t lam = F->exp(e);
    for (std::uint32_t i = 0; i + 1 < d; ++i) {
      out.gens.push_back(P.act(transvection(d, i, i + 1, lam)));
      out.gens.push_back(P.act(transvection(d, i + 1, i, lam)));
    }
  }
  Mat C = singer_companion(*F, d);
  if (sp.family == Family::PGammaL) {
    Mat D = identity_mat(d);
    D[0] = w;
    out.gens.push_back(P.act(D));
    if (F->k() > 1) out.gens.push_back(P.frobenius());
    out.singer = P.act(C);
  } else {
    std::uint32_t g = std::gcd(d, F->q() - 1);
    out.singer = P.act(mat_pow(*F, C, g, d));
  }
  // drop duplicates and identities, keep order
  std::vector<Perm> uniq;
  for (auto& x : out.gens)
    if (!x.is_identity() && std::find(uniq.begin(), uniq.end(), x) == uniq.end()) uniq.push_back(x);
  out.gens = std::move(uniq);
  return out;
}

std::vector<Perm> suzuki_generators(std::uint32_t q) {
  auto F = Field::of_order(q);
  const std::uint32_t k = F->k(), m = (k - 1) / 2;
  auto th = [&](std::uint32_t a) { return F->frobenius(a, m + 1); };
  ProjSpace P(F, 4);
  auto S = [&](std::uint32_t a, std::uint32_t b) {
    const Field& f = *F;
    std::uint32_t ath = th(a);
    Mat M(16, 0);
    M[0] = 1;
    M[4] = a;
    M[5] = 1;
    M[8] = b;
    M[9] = ath;
    M[10] = 1;
    M[12] = f.add(f.add(f.mul(f.mul(a, a), ath), f.mul(a, b)), th(b));
    M[13] = f.add(f.mul(a, ath), b);
    M[14] = a;
    M[15] = 1;
    return M;
  };
  const std::uint32_t w = F->primitive();
  const long long e2m = 1ll << m;
  Mat Mk(16, 0);
  Mk[0] = F->pow(w, 1 + e2m);
  Mk[5] = F->pow(w, e2m);
  Mk[10] = F->pow(w, -e2m);
  Mk[15] = F->pow(w, -1 - e2m);
  Mat W(16, 0);
  W[3] = W[6] = W[9] = W[12] = 1;
  std::vector<Perm> full;
  for (std::uint32_t e = 0; e < k; ++e) {
    full.push_back(P.act(S(F->exp(e), 0)));
    full.push_back(P.act(S(0, F->exp(e))));
  }
  full.push_back(P.act(Mk));
  full.push_back(P.act(W));
  // restrict to the orbit of <e1>, which is the ovoid
  const std::size_t N = P.pts.size();
  std::vector<std::int64_t> where(N, -1);
  std::vector<point_t> orb{0};
  where[0] = 0;
  for (std::size_t a = 0; a < orb.size(); ++a)
    for (const auto& g : full) {
      point_t b = g[orb[a]];
      if (where[b] < 0) {
        where[b] = static_cast<std::int64_t>(orb.size());
        orb.push_back(b);
      }
    }
  if (orb.size() != static_cast<std::size_t>(q) * q + 1)
    throw std::logic_error("Suzuki construction: ovoid orbit has wrong size");
  std::vector<Perm> out;
  for (const auto& g : full) {
    std::vector<point_t> img(orb.size());
    for (std::size_t a = 0; a < orb.size(); ++a) img[a] = static_cast<point_t>(where[g[orb[a]]]);
    Perm x(std::move(img));
    if (!x.is_identity() && std::find(out.begin(), out.end(), x) == out.end()) out.push_back(std::move(x));
  }
  return out;
}

std::vector<Perm> frob_generators(const GroupSpec& sp) {
  auto F = Field::get(sp.p, sp.f);
  const std::uint32_t q = F->q();
  std::uint32_t omega = F->pow(F->primitive(), (q - 1) / sp.k);
  std::vector<point_t> mul(q), add(q);
  for (std::uint32_t v = 0; v < q; ++v) {
    mul[v] = F->mul(omega, v);
    add[v] = F->add(v, 1);
  }
  return {Perm(std::move(mul)), Perm(std::move(add))};
}

const char* kM23a = "(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23)";
const char* kM23b = "(3,17,10,7,9)(4,13,14,19,5)(8,18,11,12,23)(15,20,22,21,16)";

// i -> a*i mod n on 0..n-1; normalizes the standard n-cycle
Perm mult_map(std::uint32_t n, std::uint32_t a) {
  std::vector<point_t> img(n);
  for (std::uint32_t i = 0; i < n; ++i) img[i] = static_cast<point_t>(static_cast<std::uint64_t>(a) * i % n);
  return Perm(std::move(img));
}

std::vector<Perm> conj_all(const std::vector<Perm>& gens, const Perm& g) {
  std::vector<Perm> out;
  for (const auto& x : gens) out.push_back(x.conj(g));
  return out;
}

// relabel points so that the Singer cycle c becomes i -> i+1
std::vector<Perm> relabel_by_cycle(const std::vector<Perm>& gens, const Perm& c) {
  const std::size_t n = c.degree();
  std::vector<point_t> phi(n);  // point -> new label
  point_t x = 0;
  for (std::size_t j = 0; j < n; ++j) {
    phi[x] = static_cast<point_t>(j);
    x = c[x];
  }
  if (x != 0 || element_order(c) != n) throw std::logic_error("relabel: cycle is not regular");
  Perm ph(std::move(phi));
  return conj_all(gens, ph);
}

std::mutex g_memo_mu;
std::map<std::string, PermGroup> g_memo;

PermGroup cached_construct(const GroupSpec& spec) {
  const std::string key = spec.str();
  {
    std::lock_guard<std::mutex> lk(g_memo_mu);
    auto it = g_memo.find(key);
    if (it != g_memo.end()) return it->second;
  }
  PermGroup G = construct(spec);
  std::lock_guard<std::mutex> lk(g_memo_mu);
  g_memo.emplace(key, G);
  return G;
}

Perm first_of_order(const PermGroup& G, std::uint64_t ord) {
  const std::uint64_t N = G.order_u64();
  for (std::uint64_t r = 0; r < N; ++r) {
    Perm x = G.unrank(r);
    if (element_order(x) == ord) return x;
  }
  throw std::logic_error("no element of order " + std::to_string(ord));
}

ConjClassInfo class_info_for(const PermGroup& G, const Perm& rep, const std::string& fallback) {
  if (G.kind() != GroupKind::generic) {
    auto CI = ClassIndex::build(G, ClassMode::cycle_type);
    return CI.classes()[CI.class_of(rep)];
  }
  ConjClassInfo info;
  info.rep = rep;
  info.order = element_order(rep);
  info.size = G.order() / centralizer_order(G, rep);
  if (G.order() <= bigint(2000000)) {
    auto CI = ClassIndex::build(G, ClassMode::enumerate);
    info.label = CI.classes()[CI.class_of(rep)].label;
  } else {
    info.label = "o" + std::to_string(info.order) + "-" + fallback;
  }
  return info;
}

std::uint32_t torus_order(const GroupSpec& sp, bool minus) {
  std::uint32_t base = minus ? sp.q + 1 : sp.q - 1;
  if (sp.family == Family::PSL2 && sp.q % 2 == 1) base /= 2;
  return base;
}

}  // namespace

GroupSpec GroupSpec::parse(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  GroupSpec g;
  if (s == "M23") {
    g.family = Family::M23;
    return g;
  }
  auto c = s.find(':');
  if (c == std::string::npos) throw std::invalid_argument("group spec: expected TAG:params, got \"" + text + "\"");
  std::string tag = s.substr(0, c);
  auto v = split_colon(s.substr(c + 1));
  auto need = [&](std::size_t k) {
    if (v.size() != k) throw std::invalid_argument("group spec: wrong parameter count in \"" + text + "\"");
  };
  if (tag == "S" || tag == "A") {
    need(1);
    g.family = tag == "S" ? Family::S : Family::A;
    g.n = v[0];
  } else if (tag == "PSL2" || tag == "PGL2") {
    need(1);
    g.family = tag == "PSL2" ? Family::PSL2 : Family::PGL2;
    g.d = 2;
    g.q = v[0];
  } else if (tag == "PGammaL" || tag == "PSL") {
    need(2);
    g.family = tag == "PSL" ? Family::PSL : Family::PGammaL;
    g.d = v[0];
    g.q = v[1];
  } else if (tag == "Sz") {
    need(1);
    g.family = Family::Sz;
    g.q = v[0];
  } else if (tag == "Frob") {
    need(3);
    g.family = Family::Frob;
    g.p = v[0];
    g.f = v[1];
    g.k = v[2];
  } else {
    throw std::invalid_argument("group spec: unknown family \"" + tag + "\"");
  }
  g.validate();
  return g;
}

std::string GroupSpec::str() const {
  switch (family) {
    case Family::S: return "S:" + std::to_string(n);
    case Family::A: return "A:" + std::to_string(n);
    case Family::PSL2: return "PSL2:" + std::to_string(q);
    case Family::PGL2: return "PGL2:" + std::to_string(q);
    case Family::PGammaL: return "PGammaL:" + std::to_string(d) + ":" + std::to_string(q);
    case Family::PSL: return "PSL:" + std::to_string(d) + ":" + std::to_string(q);
    case Family::Sz: return "Sz:" + std::to_string(q);
    case Family::Frob:
      return "Frob:" + std::to_string(p) + ":" + std::to_string(f) + ":" + std::to_string(k);
    case Family::M23: return "M23";
  }
  return "?";
}

void GroupSpec::validate() const {
  auto bad = [&](const std::string& why) { throw std::invalid_argument("group spec " + str() + ": " + why); };
  std::uint32_t pp, kk;
  switch (family) {
    case Family::S:
      if (n < 2 || n > 200000) bad("degree out of range");
      break;
    case Family::A:
      if (n < 3 || n > 200000) bad("degree out of range");
      break;
    case Family::PSL2:
    case Family::PGL2:
    case Family::PGammaL:
    case Family::PSL: {
      if (!prime_power(q, pp, kk)) bad("q is not a prime power");
      if (d < 2) bad("dimension must be at least 2");
      if (q > (1u << 20)) bad("q exceeds the field table");
      std::uint64_t N = 1, qq = 1;
      for (std::uint32_t i = 1; i < d; ++i) {
        qq *= q;
        N += qq;
        if (N > 200000) bad("degree exceeds 200000");
      }
      if ((family == Family::PSL2 || family == Family::PGL2) && q < 4) bad("q must be at least 4");
      if (family == Family::PSL && d == 2 && q < 4) bad("q must be at least 4");
      break;
    }
    case Family::Sz:
      if (!is_suzuki_q(q)) bad("q must be 2^(2m+1) with m >= 1");
      if (static_cast<std::uint64_t>(q) * q + 1 > 200000) bad("degree exceeds 200000");
      break;
    case Family::Frob: {
      if (!is_prime_u64(p)) bad("p must be prime");
      if (f < 1) bad("f must be positive");
      std::uint64_t Nq = 1;
      for (std::uint32_t i = 0; i < f; ++i) {
        Nq *= p;
        if (Nq > (1u << 20)) bad("p^f exceeds 2^20");
      }
      if (k < 2 || (Nq - 1) % k) bad("k must divide p^f - 1 and exceed 1");
      // irreducible iff k divides no p^e - 1 for a proper divisor e of f
      for (std::uint32_t e = 1; e < f; ++e)
        if (f % e == 0 && (ipow(p, e) - 1) % k == 0) bad("cyclic action is reducible");
      break;
    }
    case Family::M23:
      break;
  }
}

bigint family_order(const GroupSpec& sp) {
  auto linear = [&](bool special, bool gamma) {
    bigint o = 1;
    for (std::uint32_t i = 0; i < sp.d * (sp.d - 1) / 2; ++i) o *= sp.q;
    for (std::uint32_t i = 2; i <= sp.d; ++i) o *= bigint(ipow(sp.q, i)) - 1;
    if (special) o /= std::gcd(sp.d, sp.q - 1);
    if (gamma) {
      std::uint32_t p, k;
      prime_power(sp.q, p, k);
      o *= k;
    }
    return o;
  };
  switch (sp.family) {
    case Family::S: return factorial(sp.n);
    case Family::A: return factorial(sp.n) / 2;
    case Family::PSL2: return linear(true, false);
    case Family::PSL: return linear(true, false);
    case Family::PGL2: return linear(false, false);
    case Family::PGammaL: return linear(false, true);
    case Family::Sz: {
      bigint q = sp.q;
      return q * q * (q * q + 1) * (q - 1);
    }
    case Family::Frob: return bigint(ipow(sp.p, sp.f)) * sp.k;
    case Family::M23: return bigint(10200960);
  }
  return 0;
}

std::vector<Perm> family_generators(const GroupSpec& sp) {
  sp.validate();
  switch (sp.family) {
    case Family::S: {
      const std::uint32_t n = sp.n;
      if (n == 2) return {Perm::parse("(1,2)", 2)};
      std::vector<point_t> cyc(n);
      std::iota(cyc.begin(), cyc.end(), point_t{1});
      return {Perm::from_cycles(n, {{1, 2}}), Perm::from_cycles(n, {cyc})};
    }
    case Family::A: {
      const std::uint32_t n = sp.n;
      if (n == 3) return {Perm::from_cycles(3, {{1, 2, 3}})};
      std::vector<point_t> cyc;
      // n odd: (1..n); n even: (2..n)
      for (point_t i = (n % 2 ? 1 : 2); i <= n; ++i) cyc.push_back(i);
      return {Perm::from_cycles(n, {{1, 2, 3}}), Perm::from_cycles(n, {cyc})};
    }
    case Family::PSL2:
    case Family::PGL2:
    case Family::PGammaL:
    case Family::PSL: return build_linear(sp).gens;
    case Family::Sz: return suzuki_generators(sp.q);
    case Family::Frob: return frob_generators(sp);
    case Family::M23: return {Perm::parse(kM23a, 23), Perm::parse(kM23b, 23)};
  }
  return {};
}

PermGroup construct(const GroupSpec& spec, const std::string& cache_dir) {
  auto gens = family_generators(spec);
  const std::size_t n = gens.at(0).degree();
  PermGroup G = cache_dir.empty() ? PermGroup::build(n, gens) : build_cached(n, gens, cache_dir);
  if (G.order() != family_order(spec))
    throw std::logic_error("construct " + spec.str() + ": chain order " + G.order().str() +
                           " differs from the order formula " + family_order(spec).str());
  return G;
}

std::vector<std::string> distinguished_labels(const GroupSpec& spec) {
  switch (spec.family) {
    case Family::S: return {"n-cycle", "shape:[...]"};
    case Family::A: return spec.n % 2 ? std::vector<std::string>{"n-cycle", "shape:[...]"}
                                      : std::vector<std::string>{"shape:[...]"};
    case Family::PSL2:
    case Family::PGL2: return {"torus-plus", "torus-minus"};
    case Family::PGammaL:
    case Family::PSL: return {"singer"};
    case Family::Sz: return {"ovoid-torus"};
    case Family::Frob: return {"complement"};
    case Family::M23: return {"n-cycle"};
  }
  return {};
}

namespace {

Perm distinguished_rep(const GroupSpec& spec, const std::string& label, const PermGroup& G) {
  auto unknown = [&]() -> Perm {
    throw std::invalid_argument("distinguished_class: unknown label \"" + label + "\" for " + spec.str());
  };
  switch (spec.family) {
    case Family::S:
    case Family::A: {
      const std::uint32_t n = spec.n;
      if (label == "n-cycle") {
        if (spec.family == Family::A && n % 2 == 0) unknown();
        return canonical_perm(CycleType{{{n, 1}}});
      }
      if (label.rfind("shape:", 0) == 0) {
        std::string body = label.substr(6);
        char half = 0;
        if (!body.empty() && (body.back() == 'a' || body.back() == 'b')) {
          half = body.back();
          body.pop_back();
        }
        CycleType ct = CycleType::parse(body);
        if (ct.degree() != n) throw std::invalid_argument("shape degree differs from n");
        Perm x = canonical_perm(ct);
        if (spec.family == Family::A) {
          if (!is_even(x)) throw std::invalid_argument("shape is odd, not in A_n");
          if (an_class_splits(ct) && half == 0)
            throw std::invalid_argument("split class: append a or b to the shape");
          if (half == 'b') {
            std::vector<point_t> t(n);
            std::iota(t.begin(), t.end(), point_t{0});
            std::swap(t[0], t[1]);
            x = x.conj(Perm(std::move(t)));
          }
        } else if (half) {
          throw std::invalid_argument("a/b suffix only applies to split classes of A_n");
        }
        return x;
      }
      return unknown();
    }
    case Family::PSL2:
    case Family::PGL2:
      if (label == "torus-minus") return first_of_order(G, torus_order(spec, true));
      if (label == "torus-plus") return first_of_order(G, torus_order(spec, false));
      return unknown();
    case Family::PGammaL:
    case Family::PSL:
      if (label == "singer") return build_linear(spec).singer;
      return unknown();
    case Family::Sz:
      if (label == "ovoid-torus") {
        std::uint64_t r = exact_sqrt(2ull * spec.q);
        return first_of_order(G, spec.q - r + 1);
      }
      return unknown();
    case Family::Frob:
      if (label == "complement") return frob_generators(spec)[0];
      return unknown();
    case Family::M23:
      if (label == "n-cycle") return Perm::parse(kM23a, 23);
      return unknown();
  }
  return unknown();
}

}  // namespace

ConjClassInfo distinguished_class(const GroupSpec& spec, const std::string& label) {
  PermGroup G = cached_construct(spec);
  Perm rep = distinguished_rep(spec, label, G);
  if (!G.contains(rep)) throw std::logic_error("distinguished representative not in G");
  return class_info_for(G, rep, label);
}

std::vector<DistinguishedSubgroup> maximal_overgroups(const GroupSpec& spec, const std::string& label) {
  auto unsupported = [&]() -> std::vector<DistinguishedSubgroup> {
    throw std::invalid_argument("maximal_overgroups: unsupported pair (" + spec.str() + ", " + label + ")");
  };
  PermGroup G = cached_construct(spec);
  std::vector<DistinguishedSubgroup> out;
  auto add = [&](std::string lab, std::string role, std::vector<Perm> gens) {
    DistinguishedSubgroup H;
    H.label = std::move(lab);
    H.role = std::move(role);
    H.order = subgroup_order(G, gens);
    H.gens = std::move(gens);
    out.push_back(std::move(H));
  };
  switch (spec.family) {
    case Family::A: {
      if (label != "n-cycle") return unsupported();
      const std::uint32_t n = spec.n;
      const Perm s = canonical_perm(CycleType{{{n, 1}}});
      if (n == 13) {
        add("13:6", "torus-normalizer", {s, mult_map(13, 4)});
        GroupSpec L;
        L.family = Family::PGammaL;
        L.d = 3;
        L.q = 3;
        Built b = build_linear(L);
        auto K1 = relabel_by_cycle(b.gens, b.singer);
        // the four conjugates through s, by the cosets of <3> in (Z/13)^*
        add("PGammaL(3,3)-K1", "field-extension", K1);
        add("PGammaL(3,3)-K2", "field-extension", conj_all(K1, mult_map(13, 12)));
        add("PGammaL(3,3)-L1", "field-extension", conj_all(K1, mult_map(13, 2)));
        add("PGammaL(3,3)-L2", "field-extension", conj_all(K1, mult_map(13, 11)));
        return out;
      }
      if (n == 17) {
        GroupSpec L;
        L.family = Family::PGammaL;
        L.d = 2;
        L.q = 16;
        Built b = build_linear(L);
        auto H = relabel_by_cycle(b.gens, b.singer);
        add("PGammaL(2,16)-H", "field-extension", H);
        add("PGammaL(2,16)-K", "field-extension", conj_all(H, mult_map(17, 3)));
        return out;
      }
      if (n == 23) {
        std::vector<Perm> H = {Perm::parse(kM23a, 23), Perm::parse(kM23b, 23)};
        add("M23-H", "primitive", H);
        add("M23-K", "primitive", conj_all(H, mult_map(23, 5)));
        return out;
      }
      return unsupported();
    }
    case Family::PSL2:
    case Family::PGL2: {
      if (label != "torus-minus") return unsupported();
      const std::uint32_t q = spec.q;
      if (spec.family == Family::PSL2 && q % 2 == 1 && q < 11) return unsupported();
      if (spec.family == Family::PGL2 && q % 2 == 0) return unsupported();
      Perm t = distinguished_rep(spec, label, G);
      Perm ti = t.inverse();
      const std::uint64_t N = G.order_u64();
      for (std::uint64_t r = 0; r < N; ++r) {
        Perm w = G.unrank(r);
        if (element_order(w) == 2 && t.conj(w) == ti) {
          const std::uint64_t ord = 2ull * element_order(t);
          add("D" + std::to_string(ord), "torus-normalizer", {t, w});
          return out;
        }
      }
      throw std::logic_error("no inverting involution found");
    }
    case Family::Sz: {
      if (label != "ovoid-torus" || spec.q != 8) return unsupported();
      Perm s = distinguished_rep(spec, label, G);
      std::vector<Perm> pw;
      for (std::uint64_t e = 1; e < element_order(s); ++e) pw.push_back(s.pow(static_cast<long long>(e)));
      const std::uint64_t N = G.order_u64();
      for (std::uint64_t r = 0; r < N; ++r) {
        Perm g = G.unrank(r);
        if (element_order(g) != 4) continue;
        Perm c = s.conj(g);
        if (std::find(pw.begin(), pw.end(), c) != pw.end()) {
          add("5:4", "torus-normalizer", {s, g});
          return out;
        }
      }
      throw std::logic_error("no normalizing element of order 4 found");
    }
    case Family::Frob: {
      if (label != "complement") return unsupported();
      add("C" + std::to_string(spec.k), "complement", {frob_generators(spec)[0]});
      return out;
    }
    default: return unsupported();
  }
}

std::int64_t f_spread_l2(std::uint32_t q) {
  std::uint32_t p, k;
  if (q < 4 || !prime_power(q, p, k)) throw std::invalid_argument("f(q): q must be a prime power >= 4");
  if (q % 2 == 0) return q - 2;
  return q % 4 == 1 ? q - 1 : static_cast<std::int64_t>(q) - 4;
}

rational g_p2_l2(std::uint32_t q) {
  std::uint32_t p, k;
  if (q < 11 || q % 2 == 0 || !prime_power(q, p, k)) throw std::invalid_argument("g(q): q must be an odd prime power >= 11");
  const rational Q(q);
  if (q % 4 == 1) return rational(1, 2) * (1 + 1 / Q);
  return rational(1, 2) * (1 - (Q + 3) / (Q * (Q - 1)));
}

rational p2_suzuki(std::uint32_t q) {
  if (!is_suzuki_q(q)) throw std::invalid_argument("p2_suzuki: q must be 2^(2m+1), m >= 1");
  const bigint Q = q, r = exact_sqrt(2ull * q);
  bigint num = (Q * Q - 4) * (Q - r + 1) + 4;
  bigint den = Q * Q * (Q - 1) * (Q + r + 1);
  return 1 - rational(num, den);
}

rational p2_ree(std::uint32_t q) {
  if (!is_ree_q(q)) throw std::invalid_argument("p2_ree: q must be 3^(2m+1), m >= 1");
  const bigint Q = q, r = exact_sqrt(3ull * q);
  bigint num = (Q * Q * Q + 2 * Q * Q - 3 * Q - 6) * (Q - r + 1) + 6;
  bigint den = Q * Q * Q * (Q * Q - 1) * (Q + r + 1);
  return 1 - rational(num, den);
}

rational p2_l3(std::uint32_t q, int eps) {
  std::uint32_t p, k;
  if (!prime_power(q, p, k)) throw std::invalid_argument("p2_l3: q must be a prime power");
  if (eps != 1 && eps != -1) throw std::invalid_argument("p2_l3: eps must be +1 or -1");
  if ((eps == 1 && (q == 2 || q == 4)) || (eps == -1 && (q == 3 || q == 5)))
    throw std::invalid_argument("p2_l3: exceptional (eps,q)");
  const bigint Q = q, e = eps;
  const int qm = static_cast<int>(q % 3);
  const int em = (eps % 3 + 3) % 3;
  if (qm == 0) return rational((Q * Q + e * Q + 1) * (Q * Q - e * Q - 3), Q * Q * (Q * Q - 1));
  if (qm == em) return rational(3 * Q * Q * Q * Q * Q - 5 * Q * Q * Q + 3 * Q + 8 * e, 3 * Q * Q * Q * (Q * Q - 1));
  return rational((Q * Q * Q - 3 * e * Q * Q + Q + 2 * e) * (Q * Q + e * Q + 1),
                  Q * Q * Q * (Q - e) * (Q - e));
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> subdegrees_l2(std::uint32_t q) {
  std::uint32_t p, k;
  if (q < 11 || q % 2 == 0 || !prime_power(q, p, k))
    throw std::invalid_argument("subdegrees_l2: q must be an odd prime power >= 11");
  if (q % 4 == 1) return {{(q + 1) / 2, (q - 3) / 2}, {q + 1, (q - 1) / 4}};
  return {{(q + 1) / 4, 2}, {(q + 1) / 2, (q - 3) / 2}, {q + 1, (q - 3) / 4}};
}

std::int64_t u_lower_suzuki(std::uint32_t q) {
  if (!is_suzuki_q(q)) throw std::invalid_argument("u_lower_suzuki: q must be 2^(2m+1), m >= 1");
  std::int64_t r = static_cast<std::int64_t>(exact_sqrt(2ull * q));
  return (q + r + 1) * (static_cast<std::int64_t>(q) - 1) - 1;
}

SolublePrediction soluble_predictions(std::uint32_t p, std::uint32_t f, std::uint32_t k) {
  GroupSpec g;
  g.family = Family::Frob;
  g.p = p;
  g.f = f;
  g.k = k;
  g.validate();
  const std::uint64_t N = ipow(p, f);
  SolublePrediction r;
  r.s = is_prime_u64(k) ? N : N - 1;
  r.u = N - 1;
  r.gamma_u = 2;
  r.p2 = 1 - rational(1, N);
  return r;
}

}  // namespace spl
