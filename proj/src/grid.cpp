#include "helidiag/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace helidiag {

namespace {
bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}

Grid::Grid(int dim, int points_per_axis) : dim_(dim), n_(points_per_axis) {
    if (dim != 2 && dim != 3)
        throw std::invalid_argument("Grid: dim must be 2 or 3, got " + std::to_string(dim));
    if (points_per_axis < 8)
        throw std::invalid_argument("Grid: need >= 8 points per axis, got " +
                                    std::to_string(points_per_axis));
    if (!is_power_of_two(points_per_axis))
        throw std::invalid_argument("Grid: points per axis must be a power of two, got " +
                                    std::to_string(points_per_axis));
    size_ = 1;
    for (int a = 0; a < dim_; ++a) size_ *= static_cast<std::size_t>(n_);
}

double Grid::cell_volume() const {
    double h = spacing();
    double v = 1.0;
    for (int a = 0; a < dim_; ++a) v *= h;
    return v;
}

double Grid::volume() const {
    double v = 1.0;
    for (int a = 0; a < dim_; ++a) v *= kTwoPi;
    return v;
}

std::array<int, 3> Grid::unflatten(std::size_t flat) const {
    std::array<int, 3> idx{0, 0, 0};
    for (int a = dim_ - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(flat % n_);
        flat /= n_;
    }
    return idx;
}

std::size_t Grid::flatten(const std::array<int, 3>& idx) const {
    std::size_t flat = 0;
    for (int a = 0; a < dim_; ++a) flat = flat * n_ + static_cast<std::size_t>(idx[a]);
    return flat;
}

}  // namespace helidiag
