#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "helidiag/fld_io.hpp"
#include "helidiag/spectral.hpp"
#include "test_support.hpp"

using namespace helidiag;
using namespace helidiag::testing;

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(Grid(1, 16), std::invalid_argument);
    CHECK_THROWS_AS(Grid(4, 16), std::invalid_argument);
    CHECK_THROWS_AS(Grid(2, 12), std::invalid_argument);  // not a power of two
    CHECK_THROWS_AS(Grid(2, 4), std::invalid_argument);   // below 8
    Grid g(3, 8);
    CHECK(g.size() == 512);
    CHECK(g.cell_volume() == doctest::Approx(std::pow(kTwoPi / 8, 3)));
}

TEST_CASE("transform: zero field stays zero") {
    Grid g(2, 16);
    ScalarField zero(g);
    auto spec = to_spectral(zero);
    for (auto c : spec.coeffs()) CHECK(std::abs(c) == 0.0);
}

TEST_CASE("transform: cos(x1) against the direct DFT oracle on 8^2") {
    Grid g(2, 8);
    ScalarField f = sample(g, [](double x, double, double) { return std::cos(x); });
    auto oracle = direct_dft(g, f.values());
    ScalarField spec = to_spectral(f);
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(std::abs(spec.coeffs()[i] - oracle[i]) < 1e-13);
        if (std::abs(spec.coeffs()[i]) > 1e-12) ++nonzero;
    }
    CHECK(nonzero == 2);
    // coefficients 1/2 at xi = (+-1, 0)
    CHECK(std::abs(spec.coeffs()[g.flatten({1, 0, 0})] - 0.5) < 1e-13);
    CHECK(std::abs(spec.coeffs()[g.flatten({7, 0, 0})] - 0.5) < 1e-13);
}

TEST_CASE("transform: round trip on a seeded random field") {
    Grid g(3, 16);
    ScalarField f = to_physical(random_band_limited(g, 6, 42));
    ScalarField round = to_physical(to_spectral(f));
    CHECK(max_abs_diff(f, round) <= 1e-12 * std::max(1.0, max_abs(f)));
}

TEST_CASE("transform: Plancherel identity") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        Grid g(2, 32);
        ScalarField f = to_physical(random_band_limited(g, 12, seed));
        double l2 = lp_norm(f, 2.0);
        long double sum = 0.0L;
        for (auto c : to_spectral(f).coeffs()) sum += std::norm(c);
        double spectral_l2 = std::sqrt(static_cast<double>(sum) * g.volume());
        CHECK(l2 == doctest::Approx(spectral_l2).epsilon(1e-12));
    }
}

TEST_CASE("derivative: exact on band-limited fields") {
    Grid g(2, 32);
    ScalarField s1 = sample(g, [](double x, double, double) { return std::sin(x); });
    ScalarField c1 = sample(g, [](double x, double, double) { return std::cos(x); });
    CHECK(max_abs_diff(derivative(s1, 0), c1) <= 1e-12);

    // x2-independent field has zero d/dx2
    CHECK(max_abs(derivative(s1, 1)) <= 1e-13);

    // symbolic oracle: d1 (sin 3x cos 2y) = 3 cos 3x cos 2y
    ScalarField f = sample(g, [](double x, double y, double) { return std::sin(3 * x) * std::cos(2 * y); });
    ScalarField expected =
        sample(g, [](double x, double y, double) { return 3 * std::cos(3 * x) * std::cos(2 * y); });
    CHECK(max_abs_diff(derivative(f, 0), expected) <= 1e-12);

    CHECK_THROWS_AS(derivative(s1, 2), std::invalid_argument);
}

TEST_CASE("curl: gradient fields are curl-free and ABC is Beltrami") {
    Grid g(3, 16);
    ScalarField psi = to_physical(random_band_limited(g, 5, 7));
    VectorField grad_psi = gradient(psi);
    CHECK(max_abs_diff(curl(grad_psi), VectorField(g)) <= 1e-12);

    VectorField abc = sample_vector(
        g, {[](double, double y, double z) { return std::sin(z) + std::cos(y); },
            [](double x, double, double z) { return std::sin(x) + std::cos(z); },
            [](double x, double y, double) { return std::sin(y) + std::cos(x); }});
    CHECK(max_abs_diff(curl(abc), abc) <= 1e-12);

    // d=2 scalar curl oracle
    Grid g2(2, 16);
    VectorField v2 = sample_vector(g2, {[](double, double y, double) { return -std::sin(y); },
                                        [](double x, double, double) { return std::sin(x); }});
    ScalarField expected =
        sample(g2, [](double x, double y, double) { return std::cos(x) + std::cos(y); });
    CHECK(max_abs_diff(curl2d(v2), expected) <= 1e-12);
}

TEST_CASE("divergence: oracles and div(curl) = 0") {
    Grid g(3, 16);
    VectorField v = sample_vector(g, {[](double x, double, double) { return std::sin(x); },
                                      [](double, double, double) { return 0.0; },
                                      [](double, double, double) { return 0.0; }});
    ScalarField expected = sample(g, [](double x, double, double) { return std::cos(x); });
    CHECK(max_abs_diff(divergence(v), expected) <= 1e-12);

    VectorField w(g);
    for (int a = 0; a < 3; ++a) w[a] = to_physical(random_band_limited(g, 5, 10 + a));
    CHECK(max_abs(divergence(curl(w))) <= 1e-12);

    // Taylor-Green is divergence-free
    VectorField tg = sample_vector(
        g, {[](double x, double y, double z) { return std::sin(x) * std::cos(y) * std::cos(z); },
            [](double x, double y, double z) { return -std::cos(x) * std::sin(y) * std::cos(z); },
            [](double, double, double) { return 0.0; }});
    CHECK(max_abs(divergence(tg)) <= 1e-12);
}

TEST_CASE("leray projection") {
    Grid g(3, 16);
    VectorField w(g);
    for (int a = 0; a < 3; ++a) w[a] = to_physical(random_band_limited(g, 5, 20 + a));
    VectorField solenoidal = curl(w);  // divergence-free input
    CHECK(max_abs_diff(leray_project(solenoidal), solenoidal) <= 1e-12);

    // pure gradient maps to zero (mean mode preserved)
    ScalarField psi = random_band_limited(g, 5, 23);
    VectorField grad_psi = gradient(psi);
    CHECK(max_abs_diff(leray_project(grad_psi), VectorField(g)) <= 1e-12);

    VectorField v(g);
    for (int a = 0; a < 3; ++a) v[a] = to_physical(random_band_limited(g, 6, 30 + a));
    VectorField once = leray_project(v);
    VectorField twice = leray_project(once);
    CHECK(max_abs_diff(once, twice) <= 1e-13);
    CHECK(max_abs(divergence(once)) <= 1e-12);
}

TEST_CASE("lp_norm") {
    Grid g(3, 8);
    ScalarField c = sample(g, [](double, double, double) { return -2.5; });
    for (double p : {1.0, 2.0, 3.0}) {
        CHECK(lp_norm(c, p) == doctest::Approx(2.5 * std::pow(g.volume(), 1.0 / p)).epsilon(1e-13));
    }
    CHECK(lp_norm(c, std::numeric_limits<double>::infinity()) == doctest::Approx(2.5));

    // quadrature oracle: ||sin x1||_{L^2(T^2)}^2 = (2pi)^2 / 2
    Grid g2(2, 32);
    ScalarField s = sample(g2, [](double x, double, double) { return std::sin(x); });
    CHECK(lp_norm(s, 2.0) == doctest::Approx(std::sqrt(g2.volume() / 2.0)).epsilon(1e-13));

    // L^inf is the max sample
    ScalarField r = to_physical(random_band_limited(g2, 10, 5));
    double maxabs = 0.0;
    for (double v : r.values()) maxabs = std::max(maxabs, std::abs(v));
    CHECK(lp_norm(r, std::numeric_limits<double>::infinity()) == doctest::Approx(maxabs));

    // homogeneity
    ScalarField r3 = 3.7 * r;
    CHECK(lp_norm(r3, 3.0) == doctest::Approx(3.7 * lp_norm(r, 3.0)).epsilon(1e-13));

    CHECK_THROWS_AS(lp_norm(r, 0.5), std::invalid_argument);
}

TEST_CASE("shift") {
    Grid g(2, 32);
    ScalarField f = to_physical(random_band_limited(g, 10, 77));
    CHECK(max_abs_diff(shift(f, {0.0, 0.0}), f) <= 1e-13);

    ScalarField s = sample(g, [](double x, double, double) { return std::sin(x); });
    ScalarField expected = sample(g, [](double x, double, double) { return -std::cos(x); });
    CHECK(max_abs_diff(shift(s, {M_PI / 2, 0.0}), expected) <= 1e-12);

    CHECK(max_abs_diff(shift(f, {kTwoPi, 0.0}), f) <= 1e-12);

    // derivative commutes with shift (both Fourier multipliers)
    std::vector<double> y{0.37, -1.21};
    CHECK(max_abs_diff(derivative(shift(f, y), 0), shift(derivative(f, 0), y)) <= 1e-11);
}

TEST_CASE("FLD1 round trip") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "helidiag_fld_test";
    fs::create_directories(dir);

    Grid g(2, 16);
    ScalarField f = to_physical(random_band_limited(g, 6, 99));
    std::string path = (dir / "scalar.fld").string();
    write_fld(path, f);
    CHECK(max_abs_diff(read_fld(path).scalar(), f) == 0.0);

    Grid g3(3, 8);
    VectorField v(g3);
    for (int a = 0; a < 3; ++a) v[a] = to_physical(random_band_limited(g3, 3, 100 + a));
    std::string vpath = (dir / "vector.fld").string();
    write_fld(vpath, v);
    CHECK(max_abs_diff(read_fld(vpath).vector(), v) == 0.0);

    CHECK_THROWS(read_fld((dir / "missing.fld").string()));
    fs::remove_all(dir);
}

TEST_CASE("resample preserves band-limited fields") {
    Grid g(2, 16);
    ScalarField f = to_physical(random_band_limited(g, 6, 3));
    ScalarField fine = to_physical(resample(f, 32));
    // the fine field agrees with f at the shared nodes
    Grid gf(2, 32);
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto idx = g.unflatten(i);
        std::array<int, 3> fi{idx[0] * 2, idx[1] * 2, 0};
        CHECK(f.values()[i] == doctest::Approx(fine.values()[gf.flatten(fi)]).epsilon(1e-12));
    }
}
