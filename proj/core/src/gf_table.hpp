#pragma once

#include <cstdint>
#include <vector>

namespace spl::detail {

struct ModulusEntry {
  std::uint32_t p, k;
  std::vector<std::uint32_t> coeffs;  // c0 .. ck, monic
};

const std::vector<ModulusEntry>& modulus_table();

}  // namespace spl::detail
