#include "spreadlab/gf.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>

#include "gf_table.hpp"
#include "spreadlab/numeric.hpp"

namespace spl {

bool prime_power(std::uint32_t q, std::uint32_t& p, std::uint32_t& k) {
  if (q < 2) return false;
  std::uint32_t d = 2;
  while (static_cast<std::uint64_t>(d) * d <= q && q % d) ++d;
  if (q % d) d = q;
  p = d;
  k = 0;
  while (q % d == 0) {
    q /= d;
    ++k;
  }
  return q == 1;
}

Field::Field(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> mod)
    : p_(p), k_(k), q_(1), mod_(std::move(mod)) {
  for (std::uint32_t i = 0; i < k; ++i) q_ *= p;
  pw_.resize(k + 1, 1);
  for (std::uint32_t i = 1; i <= k; ++i) pw_[i] = pw_[i - 1] * p;
  exp_.assign(q_ - 1, 0);
  log_.assign(q_, 0);
  std::uint32_t gen;
  if (k == 1) {
    // least primitive root mod p
    gen = 1;
    for (std::uint32_t g = 1; g < p; ++g) {
      std::uint64_t x = 1;
      std::uint32_t ord = 0;
      do {
        x = x * g % p;
        ++ord;
      } while (x != 1);
      if (ord == p - 1) {
        gen = g;
        break;
      }
    }
  } else {
    gen = p;  // the class of t
  }
  std::vector<char> hit(q_, 0);
  std::uint32_t x = 1;
  for (std::uint32_t e = 0; e + 1 < q_; ++e) {
    if (hit[x]) throw std::logic_error("GF table modulus is not primitive for q=" + std::to_string(q_));
    hit[x] = 1;
    exp_[e] = x;
    log_[x] = e;
    // x <- x * gen
    if (k == 1) {
      x = static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * gen % p);
    } else {
      std::vector<std::uint32_t> c(k + 1, 0);
      std::uint32_t y = x;
      for (std::uint32_t i = 0; i < k; ++i) {
        c[i + 1] = y % p;
        y /= p;
      }
      // reduce t^k = -(c0 + c1 t + ...)
      std::uint32_t top = c[k];
      for (std::uint32_t i = 0; i < k; ++i) c[i] = (c[i] + (p - top) * mod_[i]) % p;
      x = 0;
      for (std::uint32_t i = k; i-- > 0;) x = x * p + c[i];
    }
  }
  if (x != 1) throw std::logic_error("GF table modulus is not primitive for q=" + std::to_string(q_));
  for (std::uint32_t a = 1; a < q_; ++a)
    if (std::gcd(log_[a], q_ - 1) == 1) {
      prim_ = a;
      break;
    }
}

FieldPtr Field::get(std::uint32_t p, std::uint32_t k) {
  if (!is_prime_u64(p)) throw std::invalid_argument("field: " + std::to_string(p) + " is not prime");
  if (k < 1) throw std::invalid_argument("field: degree must be at least 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > (1u << 20)) throw std::invalid_argument("field: p^k exceeds 2^20");
  }
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, FieldPtr> reg;
  std::lock_guard<std::mutex> lk(mu);
  auto it = reg.find({p, k});
  if (it != reg.end()) return it->second;
  std::vector<std::uint32_t> mod;
  if (k == 1) {
    mod = {0, 1};
  } else {
    for (const auto& e : detail::modulus_table())
      if (e.p == p && e.k == k) mod = e.coeffs;
    if (mod.empty()) throw std::logic_error("no modulus shipped for GF(" + std::to_string(q) + ")");
  }
  FieldPtr F(new Field(p, k, std::move(mod)));
  reg.emplace(std::make_pair(p, k), F);
  return F;
}

FieldPtr Field::of_order(std::uint32_t q) {
  std::uint32_t p, k;
  if (!prime_power(q, p, k)) throw std::invalid_argument("field: " + std::to_string(q) + " is not a prime power");
  return get(p, k);
}

std::uint32_t Field::add(std::uint32_t a, std::uint32_t b) const {
  if (p_ == 2) return a ^ b;
  if (k_ == 1) return (a + b) % p_;
  std::uint32_t r = 0;
  for (std::uint32_t i = 0; i < k_; ++i) {
    r += ((a % p_ + b % p_) % p_) * pw_[i];
    a /= p_;
    b /= p_;
  }
  return r;
}

std::uint32_t Field::neg(std::uint32_t a) const {
  if (p_ == 2) return a;
  if (k_ == 1) return (p_ - a) % p_;
  std::uint32_t r = 0;
  for (std::uint32_t i = 0; i < k_; ++i) {
    r += ((p_ - a % p_) % p_) * pw_[i];
    a /= p_;
  }
  return r;
}

std::uint32_t Field::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t Field::inv(std::uint32_t a) const {
  if (a == 0) throw std::domain_error("GF: inverse of zero");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

std::uint32_t Field::pow(std::uint32_t a, long long e) const {
  if (a == 0) {
    if (e < 0) throw std::domain_error("GF: negative power of zero");
    return e == 0 ? 1 : 0;
  }
  long long m = static_cast<long long>(q_ - 1);
  long long r = (static_cast<long long>(log_[a]) * (((e % m) + m) % m)) % m;
  return exp_[r];
}

std::uint32_t Field::log(std::uint32_t a) const {
  if (a == 0) throw std::domain_error("GF: log of zero");
  return log_[a];
}

std::uint64_t Field::mult_order(std::uint32_t a) const {
  if (a == 0) throw std::domain_error("GF: order of zero");
  return (q_ - 1) / std::gcd(log_[a], q_ - 1);
}

bool Field::is_square(std::uint32_t a) const {
  if (a == 0) throw std::domain_error("is_square: zero input");
  return p_ == 2 || log_[a] % 2 == 0;
}

std::uint32_t Field::frobenius(std::uint32_t a, std::uint32_t e) const {
  if (a == 0) return 0;
  std::uint64_t m = q_ - 1, f = 1;
  for (std::uint32_t i = 0; i < e % k_; ++i) f = f * p_ % m;
  if (m == 1) return a;
  return exp_[static_cast<std::uint64_t>(log_[a]) * f % m];
}

std::string Field::str(std::uint32_t a) const {
  if (k_ == 1 || a == 0) return std::to_string(a);
  std::string out;
  for (std::uint32_t i = 0; i < k_; ++i) {
    std::uint32_t c = a % p_;
    a /= p_;
    if (!c) continue;
    if (!out.empty()) out += '+';
    if (i == 0) {
      out += std::to_string(c);
    } else {
      if (c != 1) out += std::to_string(c) + "*";
      out += "t";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

std::uint32_t Field::parse(const std::string& text) const {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("GF: empty element text");
  bool has_t = s.find('t') != std::string::npos;
  if (!has_t) {
    unsigned long v = std::stoul(s);
    if (k_ == 1) return static_cast<std::uint32_t>(v % p_);
    if (v >= q_) throw std::invalid_argument("GF: integer form out of range");
    return static_cast<std::uint32_t>(v);
  }
  std::vector<std::uint32_t> c(k_, 0);
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t j = s.find('+', i);
    if (j == std::string::npos) j = s.size();
    std::string term = s.substr(i, j - i);
    i = j + 1;
    std::uint32_t coef = 1, deg = 0;
    auto tp = term.find('t');
    if (tp == std::string::npos) {
      coef = static_cast<std::uint32_t>(std::stoul(term));
    } else {
      if (tp > 0) {
        if (term[tp - 1] != '*') throw std::invalid_argument("GF: bad term \"" + term + "\"");
        coef = static_cast<std::uint32_t>(std::stoul(term.substr(0, tp - 1)));
      }
      deg = 1;
      if (tp + 1 < term.size()) {
        if (term[tp + 1] != '^') throw std::invalid_argument("GF: bad term \"" + term + "\"");
        deg = static_cast<std::uint32_t>(std::stoul(term.substr(tp + 2)));
      }
    }
    if (deg >= k_) throw std::invalid_argument("GF: degree too large in \"" + term + "\"");
    c[deg] = (c[deg] + coef) % p_;
  }
  std::uint32_t v = 0;
  for (std::uint32_t d = k_; d-- > 0;) v = v * p_ + c[d];
  return v;
}

FieldElem::FieldElem(FieldPtr F, std::uint32_t v) : F_(std::move(F)), v_(v) {
  if (!F_ || v_ >= F_->q()) throw std::invalid_argument("FieldElem: value out of range");
}

void FieldElem::same(const FieldElem& o) const {
  if (F_ != o.F_) throw field_mismatch("cross-field arithmetic");
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  same(o);
  return {F_, F_->add(v_, o.v_)};
}
FieldElem FieldElem::operator-(const FieldElem& o) const {
  same(o);
  return {F_, F_->sub(v_, o.v_)};
}
FieldElem FieldElem::operator*(const FieldElem& o) const {
  same(o);
  return {F_, F_->mul(v_, o.v_)};
}
FieldElem FieldElem::operator/(const FieldElem& o) const {
  same(o);
  return {F_, F_->div(v_, o.v_)};
}
FieldElem FieldElem::operator-() const { return {F_, F_->neg(v_)}; }
FieldElem FieldElem::inverse() const { return {F_, F_->inv(v_)}; }
FieldElem FieldElem::pow(long long e) const { return {F_, F_->pow(v_, e)}; }

FieldPtr field(std::uint32_t p, std::uint32_t k) { return Field::get(p, k); }
FieldElem primitive_element(const FieldPtr& F) { return {F, F->primitive()}; }
bool is_square(const FieldElem& a) { return a.field()->is_square(a.value()); }
FieldElem frobenius_twist(const FieldElem& a, std::uint32_t e) {
  return {a.field(), a.field()->frobenius(a.value(), e)};
}

}  // namespace spl
