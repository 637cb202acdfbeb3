#pragma once

#include "gkz/gkz.hpp"

#include <string>
#include <utility>

namespace fixture {

using gkz::Configuration;
using gkz::IntVec;

inline auto unit_simplex(std::size_t d) -> Configuration {
  std::vector<IntVec> cols;
  for (std::size_t i = 0; i < d; ++i) cols.push_back(gkz::unit_vec(d, i));
  return gkz::validate(cols);
}

inline auto noncm2x4() -> Configuration { return gkz::validate({{1, 0}, {1, 1}, {0, 2}, {0, 3}}); }

inline auto family(std::size_t d, long b) -> Configuration { return gkz::build({d, b}); }

struct Named {
  std::string name;
  Configuration a;
};

// Configurations with d <= 3, cheap enough for brute-force oracles.
inline auto small() -> std::vector<Named> {
  return {
      {"unit2", unit_simplex(2)},
      {"unit3", unit_simplex(3)},
      {"noncm2x4", noncm2x4()},
      {"noncm2x5", gkz::build_noncm_example(2, 5)},
      {"pyramid3", gkz::build_noncm_example(3, 5)},
      {"A32", family(3, 2)},
      {"A33", family(3, 3)},
      {"A34", family(3, 4)},
      {"interior", gkz::validate({{1, 0, 0}, {0, 1, 0}, {1, 1, 1}, {0, 0, 1}})},
      {"square_cone", gkz::validate({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}})},
      {"twisted", gkz::validate({{1, 0}, {2, 3}, {1, 2}})},
  };
}

} // namespace fixture
