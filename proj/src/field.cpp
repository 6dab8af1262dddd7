#include "helidiag/field.hpp"

#include <cmath>
#include <stdexcept>

namespace helidiag {

ScalarField::ScalarField(const Grid& grid, Representation rep) : grid_(grid), rep_(rep) {
    if (rep == Representation::physical)
        phys_.assign(grid.size(), 0.0);
    else
        spec_.assign(grid.size(), {0.0, 0.0});
}

ScalarField ScalarField::from_samples(const Grid& grid, std::vector<double> values) {
    if (values.size() != grid.size())
        throw std::invalid_argument("ScalarField: sample count does not match grid");
    for (double v : values)
        if (!std::isfinite(v))
            throw std::invalid_argument("ScalarField: physical values must be finite");
    ScalarField f(grid, Representation::physical);
    f.phys_ = std::move(values);
    return f;
}

ScalarField ScalarField::from_spectrum(const Grid& grid,
                                       std::vector<std::complex<double>> coeffs) {
    if (coeffs.size() != grid.size())
        throw std::invalid_argument("ScalarField: coefficient count does not match grid");
    ScalarField f(grid, Representation::spectral);
    f.spec_ = std::move(coeffs);
    return f;
}

std::span<const double> ScalarField::values() const {
    if (!is_physical()) throw std::logic_error("ScalarField::values: field is spectral");
    return phys_;
}
std::span<double> ScalarField::values() {
    if (!is_physical()) throw std::logic_error("ScalarField::values: field is spectral");
    return phys_;
}
std::span<const std::complex<double>> ScalarField::coeffs() const {
    if (!is_spectral()) throw std::logic_error("ScalarField::coeffs: field is physical");
    return spec_;
}
std::span<std::complex<double>> ScalarField::coeffs() {
    if (!is_spectral()) throw std::logic_error("ScalarField::coeffs: field is physical");
    return spec_;
}

namespace {
void require_compatible(const ScalarField& a, const ScalarField& b) {
    if (a.grid() != b.grid())
        throw std::invalid_argument("ScalarField: operands on different grids");
    if (a.rep() != b.rep())
        throw std::invalid_argument("ScalarField: operands in different representations");
}
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
    require_compatible(*this, other);
    if (is_physical())
        for (std::size_t i = 0; i < phys_.size(); ++i) phys_[i] += other.phys_[i];
    else
        for (std::size_t i = 0; i < spec_.size(); ++i) spec_[i] += other.spec_[i];
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
    require_compatible(*this, other);
    if (is_physical())
        for (std::size_t i = 0; i < phys_.size(); ++i) phys_[i] -= other.phys_[i];
    else
        for (std::size_t i = 0; i < spec_.size(); ++i) spec_[i] -= other.spec_[i];
    return *this;
}

ScalarField& ScalarField::operator*=(double c) {
    if (is_physical())
        for (double& v : phys_) v *= c;
    else
        for (auto& v : spec_) v *= c;
    return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double c, ScalarField f) { return f *= c; }

VectorField::VectorField(const Grid& grid, Representation rep) {
    components_.reserve(grid.dim());
    for (int a = 0; a < grid.dim(); ++a) components_.emplace_back(grid, rep);
}

VectorField::VectorField(std::vector<ScalarField> components)
    : components_(std::move(components)) {
    if (components_.empty()) throw std::invalid_argument("VectorField: no components");
    const Grid& g = components_.front().grid();
    if (static_cast<int>(components_.size()) != g.dim())
        throw std::invalid_argument("VectorField: component count must equal grid dim");
    for (const auto& c : components_) {
        if (c.grid() != g)
            throw std::invalid_argument("VectorField: components on different grids");
        if (c.rep() != components_.front().rep())
            throw std::invalid_argument("VectorField: mixed representations");
    }
}

VectorField& VectorField::operator+=(const VectorField& other) {
    for (int a = 0; a < dim(); ++a) components_[a] += other[a];
    return *this;
}
VectorField& VectorField::operator-=(const VectorField& other) {
    for (int a = 0; a < dim(); ++a) components_[a] -= other[a];
    return *this;
}
VectorField& VectorField::operator*=(double c) {
    for (auto& comp : components_) comp *= c;
    return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double c, VectorField v) { return v *= c; }

}  // namespace helidiag
