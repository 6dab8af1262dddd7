// Thin FFTW front end for d-dimensional complex transforms.
#pragma once

#include <complex>
#include <vector>

#include "helidiag/grid.hpp"

namespace helidiag::fft {

/// out = DFT(in) / N^d  (analysis; coefficients are Fourier-series coefficients).
void forward(int dim, int n, const std::complex<double>* in, std::complex<double>* out);

/// out = sum_xi in(xi) e^{+i xi.x}  (synthesis; no scaling).
void inverse(int dim, int n, const std::complex<double>* in, std::complex<double>* out);

void forward(const Grid& grid, const std::vector<std::complex<double>>& in,
             std::vector<std::complex<double>>& out);
void inverse(const Grid& grid, const std::vector<std::complex<double>>& in,
             std::vector<std::complex<double>>& out);

}  // namespace helidiag::fft
