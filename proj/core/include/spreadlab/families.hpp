#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spreadlab/numeric.hpp"
#include "spreadlab/stabchain.hpp"

namespace spl {

enum class Family { S, A, PSL2, PGL2, PGammaL, PSL, Sz, Frob, M23 };

// "S:7", "A:13", "PSL2:11", "PGL2:9", "PGammaL:3:3", "PSL:3:4", "Sz:8",
// "Frob:7:1:3", "M23"
struct GroupSpec {
  Family family = Family::S;
  std::uint32_t n = 0;        // S, A
  std::uint32_t d = 0, q = 0;  // PSL2, PGL2 (d=2), PGammaL, PSL, Sz
  std::uint32_t p = 0, f = 0, k = 0;  // Frob

  static GroupSpec parse(const std::string& text);
  std::string str() const;
  // validation only, throws std::invalid_argument
  void validate() const;
};

struct DistinguishedSubgroup {
  std::string label;
  std::string role;  // torus-normalizer, field-extension, complement, ...
  std::vector<Perm> gens;
  bigint order;
};

// deterministic generators for the natural action
std::vector<Perm> family_generators(const GroupSpec& spec);
// expected |G| from the order formula
bigint family_order(const GroupSpec& spec);
// generators plus chain, checked against family_order
PermGroup construct(const GroupSpec& spec, const std::string& cache_dir = "");

// label menu: S/A "n-cycle" or "shape:[...]" (A_n split halves take a/b),
// PSL2/PGL2 "torus-plus" "torus-minus", PGammaL/PSL "singer",
// Sz "ovoid-torus", Frob "complement"
ConjClassInfo distinguished_class(const GroupSpec& spec, const std::string& label);
std::vector<std::string> distinguished_labels(const GroupSpec& spec);

// the overgroups of the distinguished representative, listed one by one
std::vector<DistinguishedSubgroup> maximal_overgroups(const GroupSpec& spec, const std::string& label);

// closed forms
std::int64_t f_spread_l2(std::uint32_t q);
rational g_p2_l2(std::uint32_t q);
rational p2_suzuki(std::uint32_t q);
rational p2_ree(std::uint32_t q);
rational p2_l3(std::uint32_t q, int eps);
std::vector<std::pair<std::uint64_t, std::uint64_t>> subdegrees_l2(std::uint32_t q);
std::int64_t u_lower_suzuki(std::uint32_t q);

struct SolublePrediction {
  std::uint64_t s, u, gamma_u;
  rational p2;
};
SolublePrediction soluble_predictions(std::uint32_t p, std::uint32_t f, std::uint32_t k);

}  // namespace spl
