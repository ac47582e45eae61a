#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "spreadlab/stabchain.hpp"

namespace spl {

namespace {

const char kHeader[] = "SPREADLAB-CHAIN v1\n";

void put_u64(std::ostream& os, std::uint64_t v) { os.write(reinterpret_cast<const char*>(&v), sizeof v); }

bool get_u64(std::istream& is, std::uint64_t& v) {
  return static_cast<bool>(is.read(reinterpret_cast<char*>(&v), sizeof v));
}

void put_perm(std::ostream& os, const Perm& p) {
  for (point_t v : p.images()) put_u64(os, v);
}

bool get_perm(std::istream& is, std::size_t n, Perm& out) {
  std::vector<point_t> img(n);
  for (auto& v : img) {
    std::uint64_t w;
    if (!get_u64(is, w) || w >= n) return false;
    v = static_cast<point_t>(w);
  }
  try {
    out = Perm(std::move(img));
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

}  // namespace

std::string chain_cache_key(const std::vector<Perm>& gens) {
  // FNV-1a over degree, generator count and all images
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(gens.size());
  for (const auto& g : gens) {
    mix(g.degree());
    for (point_t v : g.images()) mix(v);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void save_chain(const PermGroup& G, const std::string& path) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write chain cache " + tmp);
    os.write(kHeader, sizeof kHeader - 1);
    put_u64(os, G.degree());
    put_u64(os, G.generators().size());
    for (const auto& g : G.generators()) put_perm(os, g);
    put_u64(os, G.num_levels());
    for (std::size_t l = 0; l < G.num_levels(); ++l) {
      const auto& L = G.level(l);
      put_u64(os, L.base);
      put_u64(os, L.gens.size());
      for (const auto& g : L.gens) put_perm(os, g);
    }
    std::string ord = G.order().str();
    put_u64(os, ord.size());
    os.write(ord.data(), static_cast<std::streamsize>(ord.size()));
  }
  std::filesystem::rename(tmp, path);
}

std::optional<PermGroup> load_chain(const std::string& path, const std::vector<Perm>& gens) {
  std::ifstream is(path, std::ios::binary);
  if (!is) return std::nullopt;
  std::string head(sizeof kHeader - 1, '\0');
  if (!is.read(head.data(), static_cast<std::streamsize>(head.size())) || head != kHeader) return std::nullopt;
  std::uint64_t n, ng, nl;
  if (!get_u64(is, n) || !get_u64(is, ng) || ng != gens.size()) return std::nullopt;
  for (std::size_t i = 0; i < ng; ++i) {
    Perm g;
    if (!get_perm(is, n, g) || g != gens[i]) return std::nullopt;
  }
  if (!get_u64(is, nl) || nl > n) return std::nullopt;
  std::vector<point_t> base;
  std::vector<std::vector<Perm>> lg(nl);
  for (std::size_t l = 0; l < nl; ++l) {
    std::uint64_t b, k;
    if (!get_u64(is, b) || b >= n || !get_u64(is, k)) return std::nullopt;
    base.push_back(static_cast<point_t>(b));
    for (std::size_t j = 0; j < k; ++j) {
      Perm g;
      if (!get_perm(is, n, g)) return std::nullopt;
      lg[l].push_back(std::move(g));
    }
  }
  std::uint64_t len;
  if (!get_u64(is, len) || len > 4096) return std::nullopt;
  std::string ord(len, '\0');
  if (!is.read(ord.data(), static_cast<std::streamsize>(len))) return std::nullopt;
  PermGroup G = PermGroup::from_strong(n, gens, std::move(base), std::move(lg));
  if (G.order().str() != ord) return std::nullopt;
  for (const auto& g : gens)
    if (!G.contains(g)) return std::nullopt;
  return G;
}

PermGroup build_cached(std::size_t degree, std::vector<Perm> gens, const std::string& cache_dir,
                       const std::vector<point_t>& base_prefix) {
  if (cache_dir.empty()) return PermGroup::build(degree, std::move(gens), base_prefix);
  std::filesystem::create_directories(cache_dir);
  std::string path = (std::filesystem::path(cache_dir) / (chain_cache_key(gens) + ".chain")).string();
  if (auto G = load_chain(path, gens)) return *G;
  PermGroup G = PermGroup::build(degree, std::move(gens), base_prefix);
  save_chain(G, path);
  return G;
}

}  // namespace spl
