#pragma once

// Seeded random generators for property tests.

#include <random>

#include "cmloc/poly.hpp"
#include "cmloc/scalar.hpp"

namespace gen {

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240611);
  return engine;
}

inline int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline cmloc::Mat matrix(std::size_t rows, std::size_t cols, std::uint32_t p, int density = 70) {
  cmloc::Mat m(rows, cols, p);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (uniform(0, 99) < density)
        m.at(i, j) = static_cast<std::uint32_t>(uniform(0, static_cast<int>(p) - 1));
  return m;
}

inline cmloc::Vec vec(std::size_t n, std::uint32_t p) {
  cmloc::Vec v(n);
  for (auto& x : v) x = static_cast<std::uint32_t>(uniform(0, static_cast<int>(p) - 1));
  return v;
}

inline cmloc::Poly poly(std::size_t nvars, std::uint32_t p, int max_deg, int terms) {
  cmloc::Poly f(nvars, p);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> e(nvars, 0);
    int budget = uniform(0, max_deg);
    for (std::size_t i = 0; i < nvars && budget > 0; ++i) {
      int take = (i + 1 == nvars) ? budget : uniform(0, budget);
      e[i] = take;
      budget -= take;
    }
    f.add_term(cmloc::Monomial(e), static_cast<std::uint32_t>(uniform(1, static_cast<int>(p) - 1)));
  }
  return f;
}

}  // namespace gen
