#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spl {

using point_t = std::uint32_t;

struct degree_mismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct parse_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Bijection of {0..n-1}, stored as the image of every point.
// Products act left to right: (x)(p*q) = ((x)p)q.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::size_t n);
  explicit Perm(std::vector<point_t> images);  // checks bijectivity

  static Perm identity(std::size_t n) { return Perm(n); }
  // cycles given with 1-based points, like the text format
  static Perm from_cycles(std::size_t n, const std::vector<std::vector<point_t>>& cycles);
  // "(1,2,3)(4,5)"; "()" is the identity. degree 0 means "largest point seen".
  static Perm parse(std::string_view text, std::size_t n = 0);

  std::size_t degree() const { return img_.size(); }
  point_t operator[](point_t x) const { return img_[x]; }
  point_t image(point_t x) const { return img_[x]; }
  const std::vector<point_t>& images() const { return img_; }

  bool is_identity() const;
  Perm inverse() const;
  Perm pow(long long e) const;
  // g^-1 * this * g
  Perm conj(const Perm& g) const;

  std::string str() const;  // cycle notation, 1-based
  std::size_t hash() const;

  friend bool operator==(const Perm& a, const Perm& b) { return a.img_ == b.img_; }
  friend bool operator!=(const Perm& a, const Perm& b) { return a.img_ != b.img_; }
  friend bool operator<(const Perm& a, const Perm& b) { return a.img_ < b.img_; }

 private:
  struct unchecked_t {};
  Perm(std::vector<point_t> images, unchecked_t) : img_(std::move(images)) {}
  friend Perm compose(const Perm& p, const Perm& q);
  friend Perm unchecked_perm(std::vector<point_t> images);

  std::vector<point_t> img_;
};

// trusted construction, no bijectivity check (hot paths)
Perm unchecked_perm(std::vector<point_t> images);

Perm compose(const Perm& p, const Perm& q);
inline Perm operator*(const Perm& p, const Perm& q) { return compose(p, q); }
inline Perm inverse(const Perm& p) { return p.inverse(); }

// multiset of (length, multiplicity), decreasing length
struct CycleType {
  std::vector<std::pair<std::size_t, std::size_t>> parts;

  std::size_t degree() const;
  std::string label() const;  // "[2^2,1^3]"
  static CycleType parse(std::string_view label);
  // flattened lengths, decreasing
  std::vector<std::size_t> lengths() const;
  friend bool operator==(const CycleType&, const CycleType&) = default;
  friend auto operator<=>(const CycleType&, const CycleType&) = default;
};

CycleType cycle_type(const Perm& p);
std::vector<std::vector<point_t>> cycles(const Perm& p, bool include_fixed = false);
std::uint64_t element_order(const Perm& p);
std::uint64_t element_order(const CycleType& ct);
Perm prime_order_power(const Perm& p, std::uint64_t r);
bool is_even(const Perm& p);

// canonical element of a cycle type: consecutive points, longest cycles first
Perm canonical_perm(const CycleType& ct);

struct PermHash {
  std::size_t operator()(const Perm& p) const { return p.hash(); }
};

}  // namespace spl
