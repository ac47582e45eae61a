#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spreadlab/families.hpp"
#include "spreadlab/numeric.hpp"
#include "spreadlab/stabchain.hpp"

namespace spl {

struct FprRow {
  std::size_t class_id = 0;
  std::string label;
  std::uint64_t order = 0;
  bigint meet;        // |x^G n H|
  bigint class_size;  // |x^G|
  rational fpr;
};

// one subgroup H of G, every prime-order class of G
struct FprTable {
  std::string subgroup;
  bigint subgroup_order;
  bigint prime_order_elements;  // in H
  std::vector<FprRow> rows;
  const FprRow& row(const std::string& label) const;
};

// enumerates H and sorts its prime-order elements into G-classes
FprTable fpr_table(const ClassIndex& CI, const DistinguishedSubgroup& H, std::uint64_t cap = 2000000,
                   unsigned threads = 1);

enum class CertKind { qhat, uniform_spread_lower, lemma_bd };
std::string cert_kind_name(CertKind k);

struct OvergroupEntry {
  std::string label;
  bigint order;
  std::uint64_t count = 1;
};

struct Certificate {
  CertKind kind = CertKind::qhat;
  std::string group, cls;
  std::vector<OvergroupEntry> overgroups;
  std::uint64_t c = 0;                 // c for qhat / lemma-bd
  std::optional<std::uint64_t> k_max;  // uniform-spread-lower, empty if unbounded
  rational value;
  std::string conclusion;
  bool holds = false;  // the conclusion was reached
};

// sum over prime-order classes of |x^G| (sum_H fpr(x,G/H))^c
Certificate qhat(const ClassIndex& CI, const std::string& group, const std::string& cls,
                 const std::vector<FprTable>& tables, std::uint64_t c);
// k_max = largest k with max_x sum_H fpr(x,G/H) < 1/k
Certificate uniform_spread_lower(const ClassIndex& CI, const std::string& group, const std::string& cls,
                                 const std::vector<FprTable>& tables);

// B^(1-c) (sum A)^c
rational lemma_bd_bound(const std::vector<rational>& A, const rational& B, std::uint64_t c);
Certificate lemma_bd_certificate(const std::string& group, const std::string& cls,
                                 const std::vector<rational>& A, const rational& B, std::uint64_t c);

// spec-level drivers: build G, its classes and one table per overgroup
struct FprOptions {
  std::uint64_t class_cap = 2000000;
  std::uint64_t subgroup_cap = 2000000;
  unsigned threads = 1;
  std::string cache_dir;
};
struct OvergroupTables {
  PermGroup G;
  ClassIndex CI;
  std::vector<FprTable> tables;
};
OvergroupTables overgroup_tables(const GroupSpec& spec, const std::string& label, const FprOptions& opt = {});
Certificate qhat(const GroupSpec& spec, const std::string& label, std::uint64_t c, const FprOptions& opt = {});
Certificate uniform_spread_lower(const GroupSpec& spec, const std::string& label, const FprOptions& opt = {});

// S_n on partitions into l parts of size n/l
rational partition_fpr(const Perm& x, std::size_t l);
rational closed_fpr_3cycle(std::size_t n, std::size_t l);
rational closed_fpr_half_odd(std::size_t n, std::size_t p, std::size_t k);
rational closed_fpr_half_even(std::size_t n, std::size_t k);

// piecewise bound for shape [p^k,1^(n-pk)] on l parts; in_hypothesis is
// false when n is below the lemma's range (n >= 8 odd p, n >= 14 for p = 2)
struct FprBound {
  rational value;
  std::string rule;
  bool in_hypothesis = true;
};
FprBound fpr_lemma_bound(std::size_t n, std::size_t l, std::size_t p, std::size_t k);

struct FprBoundCase {
  std::size_t n = 0, l = 0, p = 0, k = 0;
  rational fpr, bound, margin;
  std::string rule;
  bool in_hypothesis = true, holds = false;
};
struct FprBoundReport {
  std::vector<FprBoundCase> cases;
  bool passes = true;                // every in-hypothesis case holds
  std::size_t outside_failures = 0;  // failures below the lemma's n range
};
FprBoundReport verify_fpr_lemma_bounds(std::size_t n_lo, std::size_t n_hi);

struct ClosedFormCase {
  std::string formula;  // 3cycle, half_odd, half_even
  std::size_t n = 0, l = 0, p = 0, k = 0;
  rational closed, enumerated;
  bool equal = false;
};
std::vector<ClosedFormCase> check_closed_forms(std::size_t n_lo, std::size_t n_hi);

}  // namespace spl
