#pragma once

// Arithmetic over Z_2^m for m <= 4.
//
// An integer b_{m-1}...b_1 b_0 is the vector (b_0, ..., b_{m-1}); the basis
// element 2^t is the t-th unit vector and XOR is the group law.

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace cocube::gf2 {

inline constexpr unsigned kMaxDim = 4;

/// Parity of the bitwise AND: the standard inner product on raw bit vectors.
[[nodiscard]] constexpr unsigned dot(unsigned x, unsigned y) noexcept {
    return static_cast<unsigned>(std::popcount(x & y)) & 1u;
}

class Z2Elem {
public:
    Z2Elem(unsigned value, unsigned dim);

    [[nodiscard]] unsigned value() const noexcept { return value_; }
    [[nodiscard]] unsigned dim() const noexcept { return dim_; }

    friend bool operator==(const Z2Elem&, const Z2Elem&) = default;

private:
    std::uint8_t value_;
    std::uint8_t dim_;
};

/// A bilinear form on Z_2^m given by its Gram matrix: <x,y> = x^T G y.
///
/// The standard form has G = I. Other Gram matrices exist so that the
/// verification pipeline can be run against a deliberately wrong bit
/// convention.
class BilinearForm {
public:
    static BilinearForm standard(unsigned dim);
    /// Gram matrix from its rows; row t is a bit mask over columns.
    static BilinearForm from_rows(unsigned dim, std::array<std::uint8_t, kMaxDim> rows);

    [[nodiscard]] unsigned dim() const noexcept { return dim_; }
    [[nodiscard]] bool is_standard() const noexcept;
    [[nodiscard]] unsigned operator()(unsigned x, unsigned y) const noexcept;
    [[nodiscard]] std::string describe() const;

    friend bool operator==(const BilinearForm&, const BilinearForm&) = default;

private:
    BilinearForm(unsigned dim, std::array<std::uint8_t, kMaxDim> rows);

    std::uint8_t dim_;
    std::array<std::uint8_t, kMaxDim> rows_;
};

/// Inner product of two elements of the same dimension; throws on mismatch.
[[nodiscard]] unsigned inner(Z2Elem x, Z2Elem y);
[[nodiscard]] unsigned inner(Z2Elem x, Z2Elem y, const BilinearForm& form);

/// {y : <x,y> = 0} in ascending order. x = 0 gives the whole space.
[[nodiscard]] std::vector<Z2Elem> orth(Z2Elem x);
/// Same as orth() on raw values, returned as a bit mask over Z_2^m.
[[nodiscard]] std::uint16_t orth_mask(unsigned x, const BilinearForm& form);

/// Linear map Z_2^m -> Z_2^m given by the images of the basis 1, 2, ..., 2^(m-1).
class GF2Map {
public:
    static GF2Map identity(unsigned dim);
    static GF2Map from_images(unsigned dim, std::vector<unsigned> basis_images);
    /// Builds the map from its values on all 2^m points; throws std::invalid_argument
    /// if those values are not XOR-linear.
    static GF2Map from_table(unsigned dim, const std::vector<unsigned>& values);

    [[nodiscard]] unsigned dim() const noexcept { return dim_; }
    [[nodiscard]] unsigned image_of_basis(unsigned t) const { return images_.at(t); }
    [[nodiscard]] unsigned apply(unsigned x) const noexcept;
    [[nodiscard]] Z2Elem apply(Z2Elem x) const;
    /// Values on all 2^m points, indexed by the argument.
    [[nodiscard]] std::vector<unsigned> table() const;

    [[nodiscard]] unsigned rank() const noexcept;
    [[nodiscard]] bool is_regular() const noexcept { return rank() == dim_; }
    /// Gaussian elimination on the basis images; throws std::domain_error if singular.
    [[nodiscard]] GF2Map inverse() const;
    /// Transpose with respect to the standard inner product.
    [[nodiscard]] GF2Map transpose() const;

    /// (*this after other)(x) = this->apply(other.apply(x)).
    [[nodiscard]] GF2Map after(const GF2Map& other) const;

    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const GF2Map&, const GF2Map&) = default;
    friend auto operator<=>(const GF2Map&, const GF2Map&) = default;

private:
    GF2Map(unsigned dim, std::array<std::uint8_t, kMaxDim> images) : dim_(dim), images_(images) {}

    std::uint8_t dim_;
    std::array<std::uint8_t, kMaxDim> images_;
};

[[nodiscard]] bool is_regular(const GF2Map& map) noexcept;

/// All invertible maps on Z_2^m in lexicographic order of basis images.
/// There are prod_t (2^m - 2^t) of them.
[[nodiscard]] std::vector<GF2Map> enumerate_regular(unsigned dim);

/// Rank of a set of vectors.
[[nodiscard]] unsigned rank_of(const std::vector<unsigned>& vectors) noexcept;

}  // namespace cocube::gf2
