// FLD1 field files: 8-byte magic "FLD1\0\0\0\0", little-endian u32 dim,
// u32 per-axis sizes (dim entries), u32 component count, then row-major
// float64 physical values per component.
#pragma once

#include <string>

#include "helidiag/field.hpp"

namespace helidiag {

void write_fld(const std::string& path, const ScalarField& f);
void write_fld(const std::string& path, const VectorField& v);

/// Reads a FLD1 file; 1 component gives a ScalarField wrapped in a
/// single-entry vector-or-scalar result.
struct FldContents {
    int components = 0;
    Grid grid{2, 8};
    std::vector<ScalarField> fields;

    ScalarField scalar() const;
    VectorField vector() const;
};

FldContents read_fld(const std::string& path);

}  // namespace helidiag
