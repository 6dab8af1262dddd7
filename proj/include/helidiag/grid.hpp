// Periodic grids on the torus [0,2pi)^d, d = 2 or 3.
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace helidiag {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Uniform periodic grid: `n` points per axis (power of two, >= 8), period 2*pi.
class Grid {
  public:
    Grid(int dim, int points_per_axis);

    int dim() const { return dim_; }
    int n() const { return n_; }
    std::size_t size() const { return size_; }
    double spacing() const { return kTwoPi / n_; }
    double cell_volume() const;
    double volume() const;  // (2*pi)^dim

    /// Signed integer wavenumber for FFT index k on one axis
    /// (k <= n/2 maps to k, otherwise k-n; index n/2 is the Nyquist mode).
    int wavenumber(int k) const { return k <= n_ / 2 ? k : k - n_; }
    int nyquist() const { return n_ / 2; }

    /// Per-axis indices of a flat row-major index (last axis fastest).
    std::array<int, 3> unflatten(std::size_t flat) const;
    std::size_t flatten(const std::array<int, 3>& idx) const;

    /// Physical coordinate of index i along one axis.
    double coord(int i) const { return spacing() * i; }

    bool operator==(const Grid& other) const {
        return dim_ == other.dim_ && n_ == other.n_;
    }
    bool operator!=(const Grid& other) const { return !(*this == other); }

  private:
    int dim_;
    int n_;
    std::size_t size_;
};

}  // namespace helidiag
