#pragma once

#include <functional>
#include <vector>

#include "perifrac/errors.hpp"

namespace perifrac {

// Uniform collocation grid on [0, 2pi) with nodes x_j = 2pi j / n.
// n must be even (the wavenumber layout is k = -n/2 .. n/2-1) and at least 8.
class PeriodicGrid {
  public:
    explicit PeriodicGrid(int n);

    int size() const { return n_; }
    double node(int j) const { return nodes_[static_cast<size_t>(j)]; }
    const std::vector<double>& nodes() const { return nodes_; }
    double spacing() const { return spacing_; }

    // Grids compare by resolution; node sets coincide for equal n.
    friend bool operator==(const PeriodicGrid& a, const PeriodicGrid& b) {
        return a.n_ == b.n_;
    }
    friend bool operator!=(const PeriodicGrid& a, const PeriodicGrid& b) {
        return a.n_ != b.n_;
    }

  private:
    int n_;
    double spacing_;
    std::vector<double> nodes_;
};

inline PeriodicGrid make_grid(int n) { return PeriodicGrid(n); }

} // namespace perifrac
