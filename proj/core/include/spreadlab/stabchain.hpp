#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "spreadlab/numeric.hpp"
#include "spreadlab/perm.hpp"

namespace spl {

struct not_in_group : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// One level of a stabilizer chain. u[i] maps the base point to orbit[i].
struct ChainLevel {
  point_t base = 0;
  std::vector<Perm> gens;
  std::vector<point_t> orbit;
  std::vector<std::int32_t> pos;  // point -> index in orbit, -1 if absent
  std::vector<Perm> u, uinv;
};

enum class GroupKind { generic, symmetric, alternating };

class PermGroup {
 public:
  PermGroup() = default;

  // deterministic Schreier-Sims; base_prefix fixes the leading base points
  static PermGroup build(std::size_t degree, std::vector<Perm> gens,
                         const std::vector<point_t>& base_prefix = {});
  static PermGroup build(std::vector<Perm> gens, const std::vector<point_t>& base_prefix = {});
  // reassemble from stored base and strong generators (cache path)
  static PermGroup from_strong(std::size_t degree, std::vector<Perm> gens, std::vector<point_t> base,
                               std::vector<std::vector<Perm>> level_gens);

  std::size_t degree() const { return d_->degree; }
  const std::vector<Perm>& generators() const { return d_->gens; }
  const bigint& order() const { return d_->order; }
  std::uint64_t order_u64() const { return to_u64(d_->order); }
  GroupKind kind() const { return d_->kind; }

  std::size_t num_levels() const { return d_->levels.size(); }
  const ChainLevel& level(std::size_t i) const { return d_->levels[i]; }
  std::vector<point_t> base() const;

  bool contains(const Perm& p) const;
  bool is_transitive() const;
  std::vector<std::vector<point_t>> orbits() const;

  // position of g in the chain-coset order, and its inverse
  std::uint64_t rank(const Perm& g) const;
  Perm unrank(std::uint64_t r) const;
  // every element once, in rank order; throws cap_exceeded if |G| > cap
  void for_each_element(std::uint64_t cap, const std::function<void(const Perm&)>& fn) const;
  std::vector<Perm> elements(std::uint64_t cap) const;

  // uniform: independent uniform transversal choices at each level
  template <class Rng>
  Perm random_element(Rng& rng) const {
    Perm g = Perm::identity(degree());
    for (std::size_t l = num_levels(); l-- > 0;) {
      const auto& L = d_->levels[l];
      std::uniform_int_distribution<std::size_t> pick(0, L.orbit.size() - 1);
      g = g * L.u[pick(rng)];
    }
    return g;
  }

  std::uint64_t generator_hash() const;

 private:
  struct Data {
    std::size_t degree = 0;
    std::vector<Perm> gens;
    std::vector<ChainLevel> levels;
    bigint order = 1;
    GroupKind kind = GroupKind::generic;
  };
  std::shared_ptr<const Data> d_;
  static GroupKind detect_kind(std::size_t n, const bigint& order);
  friend class ChainBuilder;
};

// every element once as a raw image vector; level-0 transversal indices are
// striped over the threads, fn gets the thread id. No global order.
void for_each_element_parallel(const PermGroup& G, std::uint64_t cap, unsigned threads,
                               const std::function<void(const std::vector<point_t>&, unsigned)>& fn);

// generation test: is <x,y> the whole of G?
bool generates(const PermGroup& G, const Perm& x, const Perm& y);
// same, without the membership precondition checks (internal hot path)
bool generates_unchecked(const PermGroup& G, const Perm& x, const Perm& y);
// order of the subgroup generated by gens, reusing G's base order
bigint subgroup_order(const PermGroup& G, const std::vector<Perm>& gens);
PermGroup subgroup(const PermGroup& G, const std::vector<Perm>& gens);

struct ConjClassInfo {
  Perm rep;
  std::uint64_t order = 1;
  bigint size;
  std::string label;
};

enum class ClassMode { enumerate, cycle_type };

// class list plus an element -> class lookup
class ClassIndex {
 public:
  static ClassIndex build(const PermGroup& G, ClassMode mode, std::uint64_t cap = 2000000);
  static ClassIndex build_auto(const PermGroup& G, std::uint64_t cap = 2000000);

  const std::vector<ConjClassInfo>& classes() const { return classes_; }
  ClassMode mode() const { return mode_; }
  std::size_t class_of(const Perm& x) const;
  // enumerate mode only
  std::size_t class_of_rank(std::uint64_t r) const { return class_of_rank_.at(r); }
  const std::vector<std::uint32_t>& rank_classes() const { return class_of_rank_; }
  std::size_t find_label(const std::string& label) const;
  const PermGroup& group() const { return G_; }

 private:
  PermGroup G_;
  ClassMode mode_ = ClassMode::enumerate;
  std::vector<ConjClassInfo> classes_;
  std::vector<std::uint32_t> class_of_rank_;
  std::vector<CycleType> ctypes_;  // cycle-type mode
  std::vector<char> split_b_;      // cycle-type mode: class is the "b" half
  std::map<CycleType, std::pair<int, int>> by_type_;  // cycle type -> (a, b) class ids
};

std::vector<ConjClassInfo> conjugacy_classes(const PermGroup& G, ClassMode mode,
                                             std::uint64_t cap = 2000000);
std::vector<ConjClassInfo> prime_order_class_reps(const PermGroup& G, ClassMode mode,
                                                  std::uint64_t cap = 2000000);
bigint centralizer_order(const PermGroup& G, const Perm& x, std::uint64_t cap = 2000000);

// S_n / A_n analytics
bigint sn_centralizer_order(const CycleType& ct);
bool an_class_splits(const CycleType& ct);
bool is_even_type(const CycleType& ct);
// parity of a conjugator taking canonical_perm(type) to x
bool canonical_conjugator_even(const Perm& x);

// chain cache, file header "SPREADLAB-CHAIN v1"
std::string chain_cache_key(const std::vector<Perm>& gens);
void save_chain(const PermGroup& G, const std::string& path);
std::optional<PermGroup> load_chain(const std::string& path, const std::vector<Perm>& gens);
PermGroup build_cached(std::size_t degree, std::vector<Perm> gens, const std::string& cache_dir,
                       const std::vector<point_t>& base_prefix = {});

}  // namespace spl
