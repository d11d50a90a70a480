#include "perifrac/grid.hpp"

#include <numbers>
#include <string>

#include "perifrac/errors.hpp"

namespace perifrac {

PeriodicGrid::PeriodicGrid(int n) : n_(n) {
  if (n < 8 || n % 2 != 0) {
    throw InvalidGrid("grid size must be even and at least 8, got " + std::to_string(n));
  }
  spacing_ = 2.0 * std::numbers::pi / n;
  nodes_.resize(n);
  for (int j = 0; j < n; ++j) nodes_[j] = 2.0 * std::numbers::pi * j / n;
}

}  // namespace perifrac
