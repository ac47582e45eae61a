#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spreadlab/families.hpp"
#include "spreadlab/numeric.hpp"
#include "spreadlab/stabchain.hpp"

namespace spl {

using Bits = boost::dynamic_bitset<std::uint64_t>;

struct DomOptions {
  std::uint64_t budget = 200000000;  // generation tests
  std::uint64_t element_cap = 500000;
  std::uint64_t node_budget = 2000000000;  // cover search nodes
  unsigned threads = 1;
};

// Every element of a small G by rank, the breakers (one generator per cyclic
// subgroup of prime order) and per breaker the set N(x) of z with <x,z> != G.
class GenTable {
 public:
  static GenTable build(const PermGroup& G, const ClassIndex& CI, const DomOptions& opt = {});

  const PermGroup& group() const { return G_; }
  const ClassIndex& classes() const { return CI_; }
  std::size_t size() const { return elems_.size(); }
  const Perm& element(std::size_t r) const { return elems_[r]; }
  std::size_t identity_rank() const { return id_rank_; }
  std::size_t class_of(std::size_t r) const { return cls_[r]; }
  const std::vector<std::size_t>& class_members(std::size_t c) const { return members_[c]; }

  std::size_t num_breakers() const { return breakers_.size(); }
  std::size_t breaker_rank(std::size_t b) const { return breakers_[b]; }
  // G-orbit of the subgroup <x_b>, and the orbit's first breaker
  std::size_t breaker_orbit(std::size_t b) const { return orbit_[b]; }
  const std::vector<std::size_t>& orbit_reps() const { return orbit_reps_; }
  // bit r set iff <x_b, element(r)> != G
  const Bits& nongen(std::size_t b) const { return rows_[b]; }
  std::uint64_t tests_used() const { return tests_; }

 private:
  PermGroup G_;
  ClassIndex CI_;
  std::vector<Perm> elems_;
  std::size_t id_rank_ = 0;
  std::vector<std::uint32_t> cls_;
  std::vector<std::vector<std::size_t>> members_;
  std::vector<std::size_t> breakers_, orbit_, orbit_reps_;
  std::vector<Bits> rows_;
  std::uint64_t tests_ = 0;
};

// rows N(x) restricted to a candidate list; bit i refers to candidates[i]
struct NonGenMatrix {
  std::vector<std::size_t> candidates;  // element ranks
  std::vector<std::size_t> breakers;    // breaker indices
  std::vector<Bits> rows;
};
NonGenMatrix nongen_matrix(const GenTable& T, const std::vector<std::size_t>& candidates);

// exact minimum set cover
struct CoverProblem {
  std::size_t universe = 0;
  std::vector<Bits> sets;
  // sets one of which may be assumed in some optimal cover (symmetry); empty = all
  std::vector<std::size_t> first_choices;
};
struct CoverResult {
  bool found = false;  // a cover of size <= hi exists
  std::vector<std::size_t> chosen;  // indices into sets
  std::uint64_t nodes = 0;
  std::size_t reduced_universe = 0, reduced_sets = 0, components = 0;
};
// smallest cover of size in [lo, hi]; a smaller cover may be returned when one
// of size < lo exists. Dominated elements and sets are dropped first and
// independent parts are solved separately (lo and first_choices then only
// apply when a single part remains). Throws budget_exceeded past node_budget.
CoverResult min_cover(const CoverProblem& P, std::size_t lo, std::size_t hi, std::uint64_t node_budget);

struct ClassSpread {
  std::string label;
  std::int64_t u = 0;                 // minimum cover size of the class minus 1
  bool exact = true;                  // false: u is only an upper bound, at most the uniform spread
  std::vector<Perm> breaking_tuple;  // u+1 elements with no partner in the class
};

struct SpreadResult {
  std::int64_t value = 0;
  bool exact = true;
  std::vector<Perm> breaking_tuple;  // spread: value+1 elements with no common partner
  std::string witness_class;          // uniform spread: a class reaching the value
  std::vector<ClassSpread> per_class;
  std::uint64_t nodes = 0;
};

SpreadResult uniform_spread_exact(const GenTable& T, const DomOptions& opt = {});
// lower_hint: a known lower bound (e.g. the uniform spread), -1 for none
SpreadResult spread_exact(const GenTable& T, std::int64_t lower_hint = -1, const DomOptions& opt = {});

struct DomResult {
  std::size_t value = 0;
  bool exact = true;  // false: no set of size <= max_size, value = max_size + 1
  std::vector<Perm> witness;
  std::vector<std::string> witness_classes;
};
DomResult gamma_t(const GenTable& T, std::size_t max_size, const DomOptions& opt = {});
// max_size 0 means no cap
DomResult gamma_u(const GenTable& T, std::size_t max_size = 0, const DomOptions& opt = {});
// minimum UDS size inside one class, nullopt above max_size
std::optional<std::size_t> class_uds_size(const GenTable& T, std::size_t cls, std::size_t max_size,
                                          std::vector<Perm>* witness = nullptr, const DomOptions& opt = {});

// |{z in s^G : {s,z} is a TDS}| / |s^G|
rational p_gsc_exact(const GenTable& T, std::size_t cls);
// same without a table, for groups too big to tabulate
rational p_gsc_exact_direct(const PermGroup& G, const ClassIndex& CI, std::size_t cls, const DomOptions& opt = {});

// |S| for PSL2(q), q = 3 mod 4 prime: fewest involutions whose dihedral
// overgroups D_{q+1} cover all q(q-1)/2 conjugates
struct DihedralCover {
  std::uint32_t q = 0;
  std::size_t conjugates = 0, involutions = 0, per_involution = 0;
  std::size_t lower = 0, upper = 0;  // |S| in [lower, upper]
  bool exact = false;                 // lower == upper
  std::vector<Perm> witness;          // a cover of size upper
  std::uint64_t nodes = 0;
};
// refutes one size at a time, each attempt within opt.node_budget
DihedralCover psl2_dihedral_cover(std::uint32_t q, const DomOptions& opt = {});

struct MonteCarloResult {
  std::uint64_t trials = 0, successes = 0, seed = 0;
  double estimate = 0, ci_low = 0, ci_high = 0;  // Wilson 95%
};
MonteCarloResult p2_monte_carlo(const GroupSpec& spec, const std::string& label, std::uint64_t trials,
                                std::uint64_t seed, unsigned threads = 1);
// per-trial seed derivation
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

struct EllResult {
  std::size_t value = 0;
  bool exact = true;
  std::string method;  // clique, direct, probability
  std::vector<Perm> witness;
  std::string witness_class;
};
// direct search over every class, sets of size ell+1 .. max_size
EllResult gamma_u_ell(const GenTable& T, std::size_t ell, std::size_t max_size, const DomOptions& opt = {});
// unique-overgroup route: an (ell+1)-clique in the Saxl graph of G/H
std::optional<EllResult> gamma_u_ell_clique(const GroupSpec& spec, const std::string& label, std::size_t ell);
// equality from Q(G,s,2) = 1 - P_2 < 1/ell
std::optional<EllResult> gamma_u_ell_probability(const rational& p2, std::size_t ell);
// does S (within one class) cover every ell-tuple of breakers
bool is_uds_ell(const GenTable& T, const std::vector<std::size_t>& S, std::size_t ell);

// Binder-style witnesses for S_n, n >= 8 even
struct BinderCase {
  std::string name;  // 2a .. 2e, 3
  Perm x, y;
};
Perm binder_witness(std::size_t n, const Perm& x, const Perm& y);
std::vector<BinderCase> binder_normal_forms(std::size_t n);
// the construction checked against S_n; where it does not generate, the first
// conjugate z^(a,b) that does is kept as a repair
struct BinderCheck {
  BinderCase c;
  Perm z;
  bool paper_ok = false;
  std::optional<Perm> repaired;
};
std::vector<BinderCheck> check_binder(std::size_t n);
std::vector<Perm> sn_even_bk_witness_set(std::size_t n);
// B_k alone, 1 <= k < n
std::vector<Perm> sn_even_bk(std::size_t n, std::size_t k);

}  // namespace spl
