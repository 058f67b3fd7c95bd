#pragma once

#include <complex>

#include "crownlab/numkernel.hpp"

namespace testing {

inline double max_gap(const crownlab::ComplexMatrix& a, const crownlab::ComplexMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

inline crownlab::ComplexMatrix rotation(double theta) {
  return {{std::cos(theta), -std::sin(theta)}, {std::sin(theta), std::cos(theta)}};
}

}  // namespace testing
