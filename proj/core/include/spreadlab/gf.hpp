#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace spl {

// GF(p^k). Elements are encoded as c0 + c1*p + ... + c_{k-1}*p^{k-1}, which
// is also the canonical ordering used for "least" choices.
class Field {
 public:
  // shared instance per (p,k); moduli come from the shipped table
  static std::shared_ptr<const Field> get(std::uint32_t p, std::uint32_t k);
  static std::shared_ptr<const Field> of_order(std::uint32_t q);

  std::uint32_t p() const { return p_; }
  std::uint32_t k() const { return k_; }
  std::uint32_t q() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return mod_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    std::uint32_t s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }
  std::uint32_t pow(std::uint32_t a, long long e) const;
  // discrete log to the table generator (the root of the modulus)
  std::uint32_t log(std::uint32_t a) const;
  std::uint32_t exp(std::uint64_t e) const { return exp_[e % (q_ - 1)]; }
  std::uint64_t mult_order(std::uint32_t a) const;

  std::uint32_t primitive() const { return prim_; }
  bool is_square(std::uint32_t a) const;
  std::uint32_t frobenius(std::uint32_t a, std::uint32_t e) const;  // a^(p^e)

  std::string str(std::uint32_t a) const;
  std::uint32_t parse(const std::string& text) const;

 private:
  Field(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> mod);
  std::uint32_t p_, k_, q_;
  std::vector<std::uint32_t> mod_;
  std::vector<std::uint32_t> exp_, log_, pw_;
  std::uint32_t prim_ = 1;
};

using FieldPtr = std::shared_ptr<const Field>;

struct field_mismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// value type carrying its field
class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(FieldPtr F, std::uint32_t v);
  const FieldPtr& field() const { return F_; }
  std::uint32_t value() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator/(const FieldElem& o) const;
  FieldElem operator-() const;
  FieldElem inverse() const;
  FieldElem pow(long long e) const;
  bool operator==(const FieldElem& o) const { return F_ == o.F_ && v_ == o.v_; }
  bool operator!=(const FieldElem& o) const { return !(*this == o); }
  std::string str() const { return F_->str(v_); }

 private:
  void same(const FieldElem& o) const;
  FieldPtr F_;
  std::uint32_t v_ = 0;
};

FieldPtr field(std::uint32_t p, std::uint32_t k);
FieldElem primitive_element(const FieldPtr& F);
bool is_square(const FieldElem& a);
FieldElem frobenius_twist(const FieldElem& a, std::uint32_t e);

// q = p^k decomposition; returns false if q is not a prime power
bool prime_power(std::uint32_t q, std::uint32_t& p, std::uint32_t& k);

}  // namespace spl
