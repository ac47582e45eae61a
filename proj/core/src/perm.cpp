#include "spreadlab/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace spl {

Perm::Perm(std::size_t n) : img_(n) { std::iota(img_.begin(), img_.end(), point_t{0}); }

Perm::Perm(std::vector<point_t> images) : img_(std::move(images)) {
  std::vector<char> seen(img_.size(), 0);
  for (point_t v : img_) {
    if (v >= img_.size() || seen[v])
      throw std::invalid_argument("image list is not a bijection");
    seen[v] = 1;
  }
}

Perm unchecked_perm(std::vector<point_t> images) { return Perm(std::move(images), Perm::unchecked_t{}); }

Perm Perm::from_cycles(std::size_t n, const std::vector<std::vector<point_t>>& cyc) {
  std::vector<point_t> img(n);
  std::iota(img.begin(), img.end(), point_t{0});
  std::vector<char> used(n, 0);
  for (const auto& c : cyc) {
    for (point_t x : c) {
      if (x < 1 || x > n) throw parse_error("point " + std::to_string(x) + " out of range");
      if (used[x - 1]) throw parse_error("repeated point " + std::to_string(x));
      used[x - 1] = 1;
    }
    for (std::size_t i = 0; i < c.size(); ++i) img[c[i] - 1] = c[(i + 1) % c.size()] - 1;
  }
  return Perm(std::move(img), unchecked_t{});
}

Perm Perm::parse(std::string_view s, std::size_t n) {
  std::vector<std::vector<point_t>> cyc;
  std::size_t i = 0, maxpt = 0;
  auto skip = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  skip();
  if (i == s.size()) throw parse_error("empty permutation text");
  while (i < s.size()) {
    if (s[i] != '(') throw parse_error("expected '(' in \"" + std::string(s) + "\"");
    ++i;
    std::vector<point_t> c;
    skip();
    if (i < s.size() && s[i] == ')') {
      ++i;
      skip();
      continue;
    }
    for (;;) {
      skip();
      std::size_t st = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (st == i) throw parse_error("expected a point in \"" + std::string(s) + "\"");
      unsigned long v = std::stoul(std::string(s.substr(st, i - st)));
      if (v == 0) throw parse_error("points are 1-based");
      c.push_back(static_cast<point_t>(v));
      maxpt = std::max<std::size_t>(maxpt, v);
      skip();
      if (i < s.size() && s[i] == ',') {
        ++i;
        continue;
      }
      if (i < s.size() && s[i] == ')') {
        ++i;
        break;
      }
      throw parse_error("unterminated cycle in \"" + std::string(s) + "\"");
    }
    cyc.push_back(std::move(c));
    skip();
  }
  if (n == 0) n = maxpt;
  if (maxpt > n) throw parse_error("point exceeds degree " + std::to_string(n));
  return from_cycles(n, cyc);
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i) return false;
  return true;
}

Perm Perm::inverse() const {
  std::vector<point_t> inv(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) inv[img_[i]] = static_cast<point_t>(i);
  return Perm(std::move(inv), unchecked_t{});
}

Perm compose(const Perm& p, const Perm& q) {
  if (p.degree() != q.degree())
    throw degree_mismatch("compose: degrees " + std::to_string(p.degree()) + " and " +
                          std::to_string(q.degree()));
  std::vector<point_t> r(p.degree());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = q.img_[p.img_[i]];
  return Perm(std::move(r), Perm::unchecked_t{});
}

Perm Perm::pow(long long e) const {
  const std::size_t n = img_.size();
  std::vector<point_t> r(n);
  std::vector<char> done(n, 0);
  std::vector<point_t> cyc;
  // walk each cycle once, shift by e mod its length
  for (std::size_t s = 0; s < n; ++s) {
    if (done[s]) continue;
    cyc.clear();
    point_t x = static_cast<point_t>(s);
    do {
      cyc.push_back(x);
      done[x] = 1;
      x = img_[x];
    } while (x != s);
    long long L = static_cast<long long>(cyc.size());
    long long sh = ((e % L) + L) % L;
    for (long long j = 0; j < L; ++j) r[cyc[j]] = cyc[(j + sh) % L];
  }
  return Perm(std::move(r), unchecked_t{});
}

Perm Perm::conj(const Perm& g) const {
  if (g.degree() != degree()) throw degree_mismatch("conj: degree mismatch");
  // (x^g) maps to ((x)this)^g
  std::vector<point_t> r(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) r[g.img_[i]] = g.img_[img_[i]];
  return Perm(std::move(r), unchecked_t{});
}

std::string Perm::str() const {
  std::string out;
  for (const auto& c : cycles(*this)) {
    out += '(';
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (j) out += ',';
      out += std::to_string(c[j] + 1);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

std::size_t Perm::hash() const {
  // FNV-1a over the image bytes
  std::uint64_t h = 1469598103934665603ull;
  for (point_t v : img_) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

std::vector<std::vector<point_t>> cycles(const Perm& p, bool include_fixed) {
  std::vector<std::vector<point_t>> out;
  std::vector<char> done(p.degree(), 0);
  for (point_t s = 0; s < p.degree(); ++s) {
    if (done[s]) continue;
    std::vector<point_t> c;
    point_t x = s;
    do {
      c.push_back(x);
      done[x] = 1;
      x = p[x];
    } while (x != s);
    if (c.size() > 1 || include_fixed) out.push_back(std::move(c));
  }
  return out;
}

std::size_t CycleType::degree() const {
  std::size_t n = 0;
  for (auto [l, m] : parts) n += l * m;
  return n;
}

std::vector<std::size_t> CycleType::lengths() const {
  std::vector<std::size_t> v;
  for (auto [l, m] : parts) v.insert(v.end(), m, l);
  return v;
}

std::string CycleType::label() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) os << ',';
    os << parts[i].first;
    if (parts[i].second > 1) os << '^' << parts[i].second;
  }
  os << ']';
  return os.str();
}

CycleType CycleType::parse(std::string_view s) {
  // accepts "[2^2,1^3]" and "2^2,1^3" and "3,1,1"
  std::string t;
  for (char ch : s)
    if (ch != '[' && ch != ']' && !std::isspace(static_cast<unsigned char>(ch))) t += ch;
  std::vector<std::size_t> lens;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw parse_error("bad cycle type \"" + std::string(s) + "\"");
    auto caret = item.find('^');
    std::size_t l, m = 1;
    try {
      l = std::stoul(item.substr(0, caret));
      if (caret != std::string::npos) m = std::stoul(item.substr(caret + 1));
    } catch (const std::exception&) {
      throw parse_error("bad cycle type \"" + std::string(s) + "\"");
    }
    if (l == 0 || m == 0) throw parse_error("bad cycle type \"" + std::string(s) + "\"");
    lens.insert(lens.end(), m, l);
  }
  if (lens.empty()) throw parse_error("empty cycle type");
  std::sort(lens.rbegin(), lens.rend());
  CycleType ct;
  for (std::size_t l : lens) {
    if (!ct.parts.empty() && ct.parts.back().first == l)
      ++ct.parts.back().second;
    else
      ct.parts.emplace_back(l, 1);
  }
  return ct;
}

CycleType cycle_type(const Perm& p) {
  std::vector<std::size_t> cnt(p.degree() + 1, 0);
  std::vector<char> done(p.degree(), 0);
  for (point_t s = 0; s < p.degree(); ++s) {
    if (done[s]) continue;
    std::size_t L = 0;
    point_t x = s;
    do {
      done[x] = 1;
      x = p[x];
      ++L;
    } while (x != s);
    ++cnt[L];
  }
  CycleType ct;
  for (std::size_t L = p.degree(); L >= 1; --L)
    if (cnt[L]) ct.parts.emplace_back(L, cnt[L]);
  return ct;
}

std::uint64_t element_order(const CycleType& ct) {
  std::uint64_t o = 1;
  for (auto [l, m] : ct.parts) {
    std::uint64_t g = std::gcd<std::uint64_t>(o, l);
    std::uint64_t f = l / g;
    if (o > UINT64_MAX / f) throw std::overflow_error("element order exceeds 64 bits");
    o *= f;
  }
  return o;
}

std::uint64_t element_order(const Perm& p) { return element_order(cycle_type(p)); }

Perm prime_order_power(const Perm& p, std::uint64_t r) {
  std::uint64_t o = element_order(p);
  if (r < 2 || o % r != 0)
    throw std::invalid_argument("prime_order_power: " + std::to_string(r) + " does not divide order " +
                                std::to_string(o));
  return p.pow(static_cast<long long>(o / r));
}

bool is_even(const Perm& p) {
  std::size_t n = p.degree(), c = 0;
  std::vector<char> done(n, 0);
  for (point_t s = 0; s < n; ++s) {
    if (done[s]) continue;
    ++c;
    point_t x = s;
    do {
      done[x] = 1;
      x = p[x];
    } while (x != s);
  }
  return (n - c) % 2 == 0;
}

Perm canonical_perm(const CycleType& ct) {
  std::size_t n = ct.degree();
  std::vector<point_t> img(n);
  point_t at = 0;
  for (std::size_t L : ct.lengths()) {
    for (std::size_t j = 0; j < L; ++j) img[at + j] = static_cast<point_t>(at + (j + 1) % L);
    at += static_cast<point_t>(L);
  }
  return unchecked_perm(std::move(img));
}

}  // namespace spl
