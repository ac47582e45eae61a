#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "spreadlab/families.hpp"
#include "spreadlab/numeric.hpp"
#include "spreadlab/stabchain.hpp"

namespace spl {

enum class ActionKind { coset, partition, subset };

struct ActionIndex;  // point lookup, internal

// G acting on N abstract points, point 0 is the base point.
// tree_parent/tree_gen form a BFS tree from point 0 under the generator images.
struct Action {
  ActionKind kind = ActionKind::coset;
  PermGroup parent;
  std::size_t N = 0;
  std::vector<Perm> gen_images;             // one per parent generator
  std::vector<Perm> transversal;            // coset: canonical rep of each coset
  std::vector<std::vector<point_t>> labels;  // partition: part id per point; subset: sorted members
  std::vector<std::uint32_t> tree_parent, tree_gen;
  bigint point_stabilizer_order;  // |G|/N when transitive
  bool transitive = true;
  std::shared_ptr<const ActionIndex> index;

  // group element taking point 0 to point i
  Perm tree_element(std::size_t i) const;
  // image of point i under a parent element
  std::size_t image(std::size_t i, const Perm& g) const;
};

using Multiset = std::vector<std::pair<std::uint64_t, std::uint64_t>>;  // (length, multiplicity)

// right cosets Hg, canonical rep = lexicographically least element of Hg
Action coset_action(const PermGroup& G, const std::vector<Perm>& H_gens, std::uint64_t cap = 5000000);
Action coset_action(const PermGroup& G, const DistinguishedSubgroup& H, std::uint64_t cap = 5000000);
// action on the orbit of one uniform partition / one m-subset of [n]
Action partition_action(const PermGroup& G, std::size_t l, std::uint64_t cap = 5000000);
Action subset_action(const PermGroup& G, std::size_t m, std::uint64_t cap = 5000000);

// Schreier generators at point 0, reduced by sifting
std::vector<Perm> point_stabilizer_generators(const Action& act);
// stabilizer orbit lengths including the trivial suborbit {point 0}
Multiset subdegrees(const Action& act);
std::uint64_t regular_orbit_count(const Action& act);
rational base_two_probability(const Action& act);

// adjacency bitsets
class Graph {
 public:
  explicit Graph(std::size_t n = 0);
  std::size_t size() const { return n_; }
  std::size_t words() const { return w_; }
  void add_edge(std::size_t u, std::size_t v);
  bool edge(std::size_t u, std::size_t v) const { return (adj_[u * w_ + v / 64] >> (v % 64)) & 1; }
  const std::uint64_t* row(std::size_t u) const { return &adj_[u * w_]; }
  std::uint64_t* row(std::size_t u) { return &adj_[u * w_]; }
  std::size_t degree(std::size_t u) const;
  std::size_t edge_count() const;
  // "u v" per line, 1-based, u < v
  void write_edge_list(std::ostream& os) const;

 private:
  std::size_t n_ = 0, w_ = 0;
  std::vector<std::uint64_t> adj_;
};

// alpha ~ beta iff the two point stabilizers meet trivially
Graph saxl_graph(const Action& act, std::size_t cap = 100000);
// exact search, k <= 6; returns the clique on success
std::optional<std::vector<std::size_t>> has_clique(const Graph& g, std::size_t k);

// partitions of [n] into l parts of size n/l, parts ordered by least element
struct UniformPartition {
  std::vector<std::vector<point_t>> parts;
};
bigint uniform_partition_count(std::size_t n, std::size_t l);
// fn receives part id per point; stream order is lexicographic on the canonical form
void for_each_uniform_partition(std::size_t n, std::size_t l,
                                const std::function<void(const std::vector<std::uint8_t>&)>& fn,
                                std::uint64_t cap = 10000000);
std::vector<UniformPartition> enumerate_uniform_partitions(std::size_t n, std::size_t l,
                                                           std::uint64_t cap = 10000000);
std::uint64_t partition_fix_count(const Perm& x, std::size_t n, std::size_t l, std::uint64_t cap = 10000000);
bool stabilizes_partition(const Perm& x, const std::vector<std::uint8_t>& part_of, std::size_t l);

}  // namespace spl
