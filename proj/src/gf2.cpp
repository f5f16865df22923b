#include "cocube/gf2.hpp"

#include <sstream>
#include <stdexcept>

namespace cocube::gf2 {

namespace {

void check_dim(unsigned dim) {
    if (dim == 0 || dim > kMaxDim) {
        throw std::invalid_argument("gf2: dimension must be in 1.." + std::to_string(kMaxDim) +
                                    ", got " + std::to_string(dim));
    }
}

}  // namespace

Z2Elem::Z2Elem(unsigned value, unsigned dim) {
    check_dim(dim);
    if (value >= (1u << dim)) {
        throw std::invalid_argument("gf2: value " + std::to_string(value) +
                                    " out of range for dimension " + std::to_string(dim));
    }
    value_ = static_cast<std::uint8_t>(value);
    dim_ = static_cast<std::uint8_t>(dim);
}

BilinearForm::BilinearForm(unsigned dim, std::array<std::uint8_t, kMaxDim> rows)
    : dim_(static_cast<std::uint8_t>(dim)), rows_(rows) {}

BilinearForm BilinearForm::standard(unsigned dim) {
    check_dim(dim);
    std::array<std::uint8_t, kMaxDim> rows{};
    for (unsigned t = 0; t < dim; ++t) rows[t] = static_cast<std::uint8_t>(1u << t);
    return BilinearForm(dim, rows);
}

BilinearForm BilinearForm::from_rows(unsigned dim, std::array<std::uint8_t, kMaxDim> rows) {
    check_dim(dim);
    const unsigned mask = (1u << dim) - 1;
    for (unsigned t = 0; t < kMaxDim; ++t) {
        if (t >= dim ? rows[t] != 0 : (rows[t] & ~mask) != 0) {
            throw std::invalid_argument("gf2: Gram matrix row out of range");
        }
    }
    return BilinearForm(dim, rows);
}

bool BilinearForm::is_standard() const noexcept { return *this == standard(dim_); }

unsigned BilinearForm::operator()(unsigned x, unsigned y) const noexcept {
    // x^T G y: bit t of G y is <row_t, y>.
    unsigned gy = 0;
    for (unsigned t = 0; t < dim_; ++t) gy |= dot(rows_[t], y) << t;
    return dot(x, gy);
}

std::string BilinearForm::describe() const {
    std::ostringstream out;
    out << "gram[";
    for (unsigned t = 0; t < dim_; ++t) out << (t ? "," : "") << unsigned{rows_[t]};
    out << "]";
    return out.str();
}

unsigned inner(Z2Elem x, Z2Elem y) {
    if (x.dim() != y.dim()) throw std::invalid_argument("gf2: inner product dimension mismatch");
    return dot(x.value(), y.value());
}

unsigned inner(Z2Elem x, Z2Elem y, const BilinearForm& form) {
    if (x.dim() != y.dim() || x.dim() != form.dim()) {
        throw std::invalid_argument("gf2: inner product dimension mismatch");
    }
    return form(x.value(), y.value());
}

std::uint16_t orth_mask(unsigned x, const BilinearForm& form) {
    std::uint16_t mask = 0;
    for (unsigned y = 0; y < (1u << form.dim()); ++y) {
        if (form(x, y) == 0) mask |= static_cast<std::uint16_t>(1u << y);
    }
    return mask;
}

std::vector<Z2Elem> orth(Z2Elem x) {
    std::vector<Z2Elem> out;
    for (unsigned y = 0; y < (1u << x.dim()); ++y) {
        if (dot(x.value(), y) == 0) out.emplace_back(y, x.dim());
    }
    return out;
}

GF2Map GF2Map::identity(unsigned dim) {
    check_dim(dim);
    std::array<std::uint8_t, kMaxDim> images{};
    for (unsigned t = 0; t < dim; ++t) images[t] = static_cast<std::uint8_t>(1u << t);
    return GF2Map(dim, images);
}

GF2Map GF2Map::from_images(unsigned dim, std::vector<unsigned> basis_images) {
    check_dim(dim);
    if (basis_images.size() != dim) {
        throw std::invalid_argument("gf2: expected " + std::to_string(dim) + " basis images");
    }
    std::array<std::uint8_t, kMaxDim> images{};
    for (unsigned t = 0; t < dim; ++t) {
        if (basis_images[t] >= (1u << dim)) throw std::invalid_argument("gf2: basis image out of range");
        images[t] = static_cast<std::uint8_t>(basis_images[t]);
    }
    return GF2Map(dim, images);
}

GF2Map GF2Map::from_table(unsigned dim, const std::vector<unsigned>& values) {
    check_dim(dim);
    if (values.size() != (1u << dim)) throw std::invalid_argument("gf2: table has wrong size");
    std::vector<unsigned> basis;
    for (unsigned t = 0; t < dim; ++t) basis.push_back(values[1u << t]);
    GF2Map map = from_images(dim, basis);
    for (unsigned x = 0; x < values.size(); ++x) {
        if (map.apply(x) != values[x]) {
            throw std::invalid_argument("gf2: table is not linear at " + std::to_string(x));
        }
    }
    return map;
}

unsigned GF2Map::apply(unsigned x) const noexcept {
    unsigned y = 0;
    for (unsigned t = 0; t < dim_; ++t) {
        if ((x >> t) & 1u) y ^= images_[t];
    }
    return y;
}

Z2Elem GF2Map::apply(Z2Elem x) const {
    if (x.dim() != dim_) throw std::invalid_argument("gf2: map applied to wrong dimension");
    return Z2Elem(apply(x.value()), dim_);
}

std::vector<unsigned> GF2Map::table() const {
    std::vector<unsigned> out(1u << dim_);
    for (unsigned x = 0; x < out.size(); ++x) out[x] = apply(x);
    return out;
}

unsigned rank_of(const std::vector<unsigned>& vectors) noexcept {
    // Reduced basis keyed by leading bit.
    std::array<unsigned, 32> pivot{};
    unsigned rank = 0;
    for (unsigned v : vectors) {
        for (int bit = 31; bit >= 0 && v != 0; --bit) {
            if (((v >> bit) & 1u) == 0) continue;
            if (pivot[bit] == 0) {
                pivot[bit] = v;
                ++rank;
                v = 0;
            } else {
                v ^= pivot[bit];
            }
        }
    }
    return rank;
}

unsigned GF2Map::rank() const noexcept {
    return rank_of(std::vector<unsigned>(images_.begin(), images_.begin() + dim_));
}

GF2Map GF2Map::inverse() const {
    // Row-reduce [A | I] where column t of A is images_[t]. Work with the
    // augmented columns as pairs (image, tag) and eliminate on the image side.
    std::array<unsigned, kMaxDim> col{};
    std::array<unsigned, kMaxDim> tag{};
    for (unsigned t = 0; t < dim_; ++t) {
        col[t] = images_[t];
        tag[t] = 1u << t;
    }
    // After elimination col[t] becomes the unit vector e_t and tag[t] records
    // which combination of original basis vectors maps to e_t.
    for (unsigned bit = 0; bit < dim_; ++bit) {
        unsigned pivot = dim_;
        for (unsigned t = bit; t < dim_; ++t) {
            if ((col[t] >> bit) & 1u) {
                pivot = t;
                break;
            }
        }
        if (pivot == dim_) throw std::domain_error("gf2: map is singular: " + to_string());
        std::swap(col[bit], col[pivot]);
        std::swap(tag[bit], tag[pivot]);
        for (unsigned t = 0; t < dim_; ++t) {
            if (t != bit && ((col[t] >> bit) & 1u)) {
                col[t] ^= col[bit];
                tag[t] ^= tag[bit];
            }
        }
    }
    std::array<std::uint8_t, kMaxDim> images{};
    for (unsigned t = 0; t < dim_; ++t) images[t] = static_cast<std::uint8_t>(tag[t]);
    return GF2Map(dim_, images);
}

GF2Map GF2Map::transpose() const {
    std::array<std::uint8_t, kMaxDim> images{};
    for (unsigned row = 0; row < dim_; ++row) {
        for (unsigned t = 0; t < dim_; ++t) {
            // A[row][t] = bit row of images_[t]; transpose swaps indices.
            if ((images_[t] >> row) & 1u) images[row] |= static_cast<std::uint8_t>(1u << t);
        }
    }
    return GF2Map(dim_, images);
}

GF2Map GF2Map::after(const GF2Map& other) const {
    if (other.dim_ != dim_) throw std::invalid_argument("gf2: composing maps of different dimension");
    std::array<std::uint8_t, kMaxDim> images{};
    for (unsigned t = 0; t < dim_; ++t) images[t] = static_cast<std::uint8_t>(apply(other.images_[t]));
    return GF2Map(dim_, images);
}

std::string GF2Map::to_string() const {
    std::ostringstream out;
    for (unsigned t = 0; t < dim_; ++t) {
        out << (t ? "," : "") << (1u << t) << "->" << unsigned{images_[t]};
    }
    return out.str();
}

bool is_regular(const GF2Map& map) noexcept { return map.is_regular(); }

std::vector<GF2Map> enumerate_regular(unsigned dim) {
    check_dim(dim);
    const unsigned size = 1u << dim;
    std::vector<GF2Map> out;
    std::vector<unsigned> images;
    // Depth-first: the t-th image must avoid the span of the earlier ones.
    auto extend = [&](auto&& self) -> void {
        if (images.size() == dim) {
            out.push_back(GF2Map::from_images(dim, images));
            return;
        }
        for (unsigned v = 1; v < size; ++v) {
            images.push_back(v);
            if (rank_of(images) == images.size()) self(self);
            images.pop_back();
        }
    };
    extend(extend);
    return out;
}

}  // namespace cocube::gf2
