#pragma once

#include <cstdint>
#include <cstdlib>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace fkn::test {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

/// FKN_SEED overrides the pinned seed.
inline std::uint64_t seed() {
  if (const char *s = std::getenv("FKN_SEED"))
    return std::stoull(s);
  return kDefaultSeed;
}

inline std::mt19937_64 &rng() {
  static std::mt19937_64 g(seed());
  return g;
}

inline std::uint32_t uniform(std::uint32_t lo, std::uint32_t hi) {
  return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng());
}

using Poly = std::vector<std::int64_t>;

inline Poly poly_mul(const Poly &a, const Poly &b) {
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] += a[i] * b[j];
  return c;
}

/// 1 + t^h + ... + t^{(k-1)h}.
inline Poly geometric(std::uint32_t k, std::uint32_t h) {
  Poly p((k - 1) * h + 1, 0);
  for (std::uint32_t e = 0; e < k; ++e)
    p[e * h] = 1;
  return p;
}

/// Polynomials in several variables keyed by exponent vectors.
using MultiPoly = std::map<std::vector<std::uint32_t>, std::int64_t>;

inline MultiPoly multi_mul(const MultiPoly &a, const MultiPoly &b) {
  MultiPoly c;
  for (const auto &[ea, ca] : a)
    for (const auto &[eb, cb] : b) {
      auto e = ea;
      for (std::size_t i = 0; i < e.size(); ++i)
        e[i] += eb[i];
      c[e] += ca * cb;
    }
  return c;
}

} // namespace fkn::test
