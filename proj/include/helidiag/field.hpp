// Sampled scalar and vector fields with dual physical/spectral representation.
//
// Fourier convention: the forward transform carries 1/N^d so coefficients
// equal Fourier-series coefficients, f(x) = sum_xi fhat(xi) e^{i xi.x}.
// Plancherel then reads ||f||_{L^2}^2 = (2pi)^d sum_xi |fhat(xi)|^2.
#pragma once

#include <complex>
#include <span>
#include <vector>

#include "helidiag/grid.hpp"

namespace helidiag {

enum class Representation { physical, spectral };

class ScalarField {
  public:
    /// Zero field in the given representation.
    explicit ScalarField(const Grid& grid, Representation rep = Representation::physical);

    static ScalarField from_samples(const Grid& grid, std::vector<double> values);
    static ScalarField from_spectrum(const Grid& grid, std::vector<std::complex<double>> coeffs);

    const Grid& grid() const { return grid_; }
    Representation rep() const { return rep_; }
    bool is_physical() const { return rep_ == Representation::physical; }
    bool is_spectral() const { return rep_ == Representation::spectral; }

    /// Physical samples; only valid when is_physical().
    std::span<const double> values() const;
    std::span<double> values();

    /// Spectral coefficients; only valid when is_spectral().
    std::span<const std::complex<double>> coeffs() const;
    std::span<std::complex<double>> coeffs();

    ScalarField& operator+=(const ScalarField& other);
    ScalarField& operator-=(const ScalarField& other);
    ScalarField& operator*=(double c);

  private:
    Grid grid_;
    Representation rep_;
    std::vector<double> phys_;
    std::vector<std::complex<double>> spec_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double c, ScalarField f);

class VectorField {
  public:
    VectorField(const Grid& grid, Representation rep = Representation::physical);
    explicit VectorField(std::vector<ScalarField> components);

    const Grid& grid() const { return components_.front().grid(); }
    int dim() const { return static_cast<int>(components_.size()); }
    Representation rep() const { return components_.front().rep(); }

    const ScalarField& operator[](int a) const { return components_[a]; }
    ScalarField& operator[](int a) { return components_[a]; }

    VectorField& operator+=(const VectorField& other);
    VectorField& operator-=(const VectorField& other);
    VectorField& operator*=(double c);

  private:
    std::vector<ScalarField> components_;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double c, VectorField v);

/// Time-stamped snapshots on a shared grid; times strictly increasing.
template <class FieldT>
struct TimeSeries {
    std::vector<double> times;
    std::vector<FieldT> snapshots;

    void push(double t, FieldT snap) {
        if (!times.empty() && t <= times.back())
            throw std::invalid_argument("TimeSeries: times must be strictly increasing");
        if (!snapshots.empty() && snap.grid() != snapshots.front().grid())
            throw std::invalid_argument("TimeSeries: snapshots must share one grid");
        times.push_back(t);
        snapshots.push_back(std::move(snap));
    }
    std::size_t size() const { return times.size(); }
};

using ScalarSeries = TimeSeries<ScalarField>;
using VectorSeries = TimeSeries<VectorField>;

}  // namespace helidiag
