#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace hpath::detail {

// Portable across standard libraries, unlike std::uniform_int_distribution.
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t bound) {
  return static_cast<std::size_t>(rng() % bound);
}

template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng, std::size_t first = 0,
             std::size_t last = static_cast<std::size_t>(-1)) {
  if (last > v.size()) last = v.size();
  for (std::size_t i = last; i > first + 1; --i) {
    std::size_t j = first + uniform_index(rng, i - first);
    std::swap(v[i - 1], v[j]);
  }
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace hpath::detail
