#include "helidiag/fld_io.hpp"

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "helidiag/spectral.hpp"

namespace helidiag {

namespace {

constexpr char kMagic[8] = {'F', 'L', 'D', '1', 0, 0, 0, 0};

void put_u32(std::ostream& out, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff),
                          static_cast<unsigned char>((v >> 24) & 0xff)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw std::runtime_error("FLD1: truncated header");
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void write_header(std::ostream& out, const Grid& g, std::uint32_t components) {
    out.write(kMagic, 8);
    put_u32(out, static_cast<std::uint32_t>(g.dim()));
    for (int a = 0; a < g.dim(); ++a) put_u32(out, static_cast<std::uint32_t>(g.n()));
    put_u32(out, components);
}

void write_component(std::ostream& out, const ScalarField& f) {
    const ScalarField fp = to_physical(f);
    auto v = fp.values();
    out.write(reinterpret_cast<const char*>(v.data()),
              static_cast<std::streamsize>(v.size() * sizeof(double)));
}

// temp file + rename so readers never see a partial file
class AtomicWriter {
  public:
    explicit AtomicWriter(const std::string& path)
        : final_(path), temp_(path + ".tmp"), out_(temp_, std::ios::binary) {
        if (!out_) throw std::runtime_error("FLD1: cannot open " + temp_ + " for writing");
    }
    std::ofstream& stream() { return out_; }
    void commit() {
        out_.close();
        if (!out_) throw std::runtime_error("FLD1: write failed for " + temp_);
        std::filesystem::rename(temp_, final_);
    }

  private:
    std::string final_, temp_;
    std::ofstream out_;
};

}  // namespace

void write_fld(const std::string& path, const ScalarField& f) {
    AtomicWriter w(path);
    write_header(w.stream(), f.grid(), 1);
    write_component(w.stream(), f);
    w.commit();
}

void write_fld(const std::string& path, const VectorField& v) {
    AtomicWriter w(path);
    write_header(w.stream(), v.grid(), static_cast<std::uint32_t>(v.dim()));
    for (int a = 0; a < v.dim(); ++a) write_component(w.stream(), v[a]);
    w.commit();
}

ScalarField FldContents::scalar() const {
    if (components != 1)
        throw std::runtime_error("FLD1: expected 1 component, file has " +
                                 std::to_string(components));
    return fields.front();
}

VectorField FldContents::vector() const {
    if (components != grid.dim())
        throw std::runtime_error("FLD1: expected " + std::to_string(grid.dim()) +
                                 " components, file has " + std::to_string(components));
    return VectorField(fields);
}

FldContents read_fld(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("FLD1: cannot open " + path);
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kMagic, 8) != 0)
        throw std::runtime_error("FLD1: bad magic in " + path);
    const std::uint32_t dim = get_u32(in);
    if (dim != 2 && dim != 3) throw std::runtime_error("FLD1: unsupported dim in " + path);
    std::uint32_t n = 0;
    for (std::uint32_t a = 0; a < dim; ++a) {
        std::uint32_t na = get_u32(in);
        if (a == 0)
            n = na;
        else if (na != n)
            throw std::runtime_error("FLD1: axes must have equal sizes in " + path);
    }
    const std::uint32_t components = get_u32(in);

    FldContents out;
    out.grid = Grid(static_cast<int>(dim), static_cast<int>(n));
    out.components = static_cast<int>(components);
    for (std::uint32_t c = 0; c < components; ++c) {
        std::vector<double> vals(out.grid.size());
        in.read(reinterpret_cast<char*>(vals.data()),
                static_cast<std::streamsize>(vals.size() * sizeof(double)));
        if (!in) throw std::runtime_error("FLD1: truncated data in " + path);
        out.fields.push_back(ScalarField::from_samples(out.grid, std::move(vals)));
    }
    return out;
}

}  // namespace helidiag
