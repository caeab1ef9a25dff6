#include "ffharm/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>

namespace ffharm {

const char* side_name(Side s) { return s == Side::primal ? "primal" : "dual"; }

std::uint64_t grid_size_checked(const FiniteField& f, int d, std::uint64_t guard) {
    if (d < 1) throw Error("BadDimension", "dimension must be >= 1");
    std::uint64_t n = 1;
    for (int j = 0; j < d; ++j) {
        if (n > guard / f.q())
            throw Error("GridTooLarge", "q^d exceeds the memory guard");
        n *= f.q();
    }
    return n;
}

GridFunction::GridFunction(FieldPtr field, int d, Side side)
    : field_(std::move(field)), d_(d), side_(side) {
    values_.assign(grid_size_checked(*field_, d_), cplx(0.0, 0.0));
}

std::uint64_t GridFunction::encode(std::span<const std::uint32_t> coords) const {
    std::uint64_t idx = 0;
    for (int j = d_ - 1; j >= 0; --j) idx = idx * field_->q() + coords[std::size_t(j)];
    return idx;
}

void GridFunction::decode(std::uint64_t index, std::span<std::uint32_t> coords) const {
    for (int j = 0; j < d_; ++j) {
        coords[std::size_t(j)] = std::uint32_t(index % field_->q());
        index /= field_->q();
    }
}

double weighted_lp_norm(std::span<const cplx> values, double weight, double p) {
    if (p < 1.0) throw Error("BadExponent", "p must be >= 1");
    if (std::isinf(p)) {
        double m = 0.0;
        for (const cplx& v : values) m = std::max(m, std::abs(v));
        return m;
    }
    double acc = 0.0;
    if (p == 2.0) {
        for (const cplx& v : values) acc += std::norm(v);
    } else if (p == 1.0) {
        for (const cplx& v : values) acc += std::abs(v);
    } else {
        for (const cplx& v : values) acc += std::pow(std::abs(v), p);
    }
    return std::pow(weight * acc, 1.0 / p);
}

double GridFunction::lp_norm(double p) const {
    double weight = side_ == Side::primal ? 1.0 / double(size()) : 1.0;
    return weighted_lp_norm(values_, weight, p);
}

cplx GridFunction::inner(const GridFunction& other) const {
    if (side_ != other.side_ || size() != other.size())
        throw Error("SideMismatch", "pairing requires matching side and size");
    cplx acc = 0.0;
    for (std::uint64_t i = 0; i < size(); ++i) acc += values_[i] * std::conj(other.values_[i]);
    if (side_ == Side::primal) acc /= double(size());
    return acc;
}

void GridFunction::write_csv(std::ostream& os) const {
    os << "index,re,im\n";
    char buf[96];
    for (std::uint64_t i = 0; i < size(); ++i) {
        std::snprintf(buf, sizeof buf, "%llu,%.17g,%.17g\n",
                      static_cast<unsigned long long>(i), values_[i].real(), values_[i].imag());
        os << buf;
    }
}

namespace {
constexpr char kMagic[4] = {'F', 'F', 'G', 'F'};

template <typename T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::istream& is) {
    T v;
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}
}  // namespace

void GridFunction::write_binary(std::ostream& os) const {
    os.write(kMagic, 4);
    put<std::uint32_t>(os, 1);  // format version
    put<std::uint64_t>(os, field_->q());
    put<std::uint32_t>(os, std::uint32_t(field_->p()));
    put<std::uint32_t>(os, std::uint32_t(field_->n()));
    put<std::uint32_t>(os, std::uint32_t(d_));
    put<std::uint8_t>(os, side_ == Side::primal ? 0 : 1);
    for (int i = 0; i < 7; ++i) put<std::uint8_t>(os, 0);
    for (const cplx& v : values_) {
        put<double>(os, v.real());
        put<double>(os, v.imag());
    }
}

GridFunction GridFunction::read_binary(std::istream& is, FieldPtr field_hint) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw Error("BadFormat", "not a grid-function dump");
    auto version = get<std::uint32_t>(is);
    if (version != 1) throw Error("BadFormat", "unsupported dump version");
    auto q = get<std::uint64_t>(is);
    auto p = get<std::uint32_t>(is);
    auto n = get<std::uint32_t>(is);
    auto d = get<std::uint32_t>(is);
    auto side = get<std::uint8_t>(is);
    for (int i = 0; i < 7; ++i) get<std::uint8_t>(is);

    FieldPtr field = field_hint;
    if (!field || field->q() != q) field = build_field(long(p), int(n));
    if (field->q() != q || std::uint32_t(field->p()) != p || std::uint32_t(field->n()) != n)
        throw Error("BadFormat", "dump header is inconsistent");

    GridFunction g(field, int(d), side == 0 ? Side::primal : Side::dual);
    for (std::uint64_t i = 0; i < g.size(); ++i) {
        double re = get<double>(is);
        double im = get<double>(is);
        g[i] = cplx(re, im);
    }
    if (!is) throw Error("BadFormat", "truncated dump");
    return g;
}

}
