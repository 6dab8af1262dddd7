#include "helidiag/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace helidiag::fft {

namespace {

// Plans are created once per (dim, n, sign) with FFTW_UNALIGNED so they can be
// executed on any caller buffer. Planning is serialized (FFTW requirement);
// execution via fftw_execute_dft is re-entrant.
struct PlanCache {
    std::mutex mutex;
    std::map<std::tuple<int, int, int>, fftw_plan> plans;

    fftw_plan get(int dim, int n, int sign) {
        std::scoped_lock lock(mutex);
        auto key = std::make_tuple(dim, n, sign);
        auto it = plans.find(key);
        if (it != plans.end()) return it->second;

        std::size_t total = 1;
        for (int a = 0; a < dim; ++a) total *= static_cast<std::size_t>(n);
        fftw_complex* buf = fftw_alloc_complex(total);
        int dims[3] = {n, n, n};
        fftw_plan p = fftw_plan_dft(dim, dims, buf, buf, sign,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(buf);
        if (!p) throw std::runtime_error("fft: FFTW planning failed");
        plans.emplace(key, p);
        return p;
    }
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

}  // namespace

void forward(int dim, int n, const std::complex<double>* in, std::complex<double>* out) {
    fftw_plan p = cache().get(dim, n, FFTW_FORWARD);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
    std::size_t total = 1;
    for (int a = 0; a < dim; ++a) total *= static_cast<std::size_t>(n);
    const double scale = 1.0 / static_cast<double>(total);
    for (std::size_t i = 0; i < total; ++i) out[i] *= scale;
}

void inverse(int dim, int n, const std::complex<double>* in, std::complex<double>* out) {
    fftw_plan p = cache().get(dim, n, FFTW_BACKWARD);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

void forward(const Grid& grid, const std::vector<std::complex<double>>& in,
             std::vector<std::complex<double>>& out) {
    out.resize(in.size());
    forward(grid.dim(), grid.n(), in.data(), out.data());
}

void inverse(const Grid& grid, const std::vector<std::complex<double>>& in,
             std::vector<std::complex<double>>& out) {
    out.resize(in.size());
    inverse(grid.dim(), grid.n(), in.data(), out.data());
}

}  // namespace helidiag::fft
