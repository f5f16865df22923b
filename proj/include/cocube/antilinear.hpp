#pragma once

// Antilinear and Fano permutations of Z_2^3 = {0..7}.
//
// A permutation p is antilinear when p(0) = 0 and no Fano line {x,y,z}
// (distinct nonzero, x ^ y ^ z = 0) is mapped to a Fano line. Its signature is
// the map x -> XOR of p(y) over y in the orthogonal complement of x; the Fano
// permutations are the antilinear ones with identity signature.

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cocube/gf2.hpp"

namespace cocube {

class Perm8 {
public:
    using Table = std::array<std::uint8_t, 8>;

    static Perm8 identity();
    /// Throws std::invalid_argument unless `images` is a bijection on {0..7}.
    static Perm8 from_images(const Table& images);
    /// Cycle notation over the digits 0-7 with fixed points omitted, e.g. "(13)(26)(45)".
    /// "()" and "" denote the identity. Throws on malformed input or repeated symbols.
    static Perm8 parse_cycles(std::string_view text);
    /// Eight image digits, e.g. "02341567".
    static Perm8 parse_images(std::string_view text);

    [[nodiscard]] unsigned operator()(unsigned x) const { return images_.at(x); }
    [[nodiscard]] const Table& images() const noexcept { return images_; }

    [[nodiscard]] Perm8 inverse() const;
    /// (*this after other)(x) = (*this)(other(x)).
    [[nodiscard]] Perm8 after(const Perm8& other) const;

    [[nodiscard]] std::string to_cycles() const;
    [[nodiscard]] std::string to_image_string() const;

    friend bool operator==(const Perm8&, const Perm8&) = default;
    friend auto operator<=>(const Perm8&, const Perm8&) = default;

private:
    explicit Perm8(const Table& images) : images_(images) {}
    Table images_{};
};

/// The seven lines of the Fano plane as x-perp minus zero, for x = 1..7 in order.
/// Under a non-standard form the "lines" are whatever the form's complements are.
[[nodiscard]] std::array<std::array<std::uint8_t, 3>, 7> fano_lines(
    const gf2::BilinearForm& form = gf2::BilinearForm::standard(3));

[[nodiscard]] bool is_antilinear(const Perm8& p);

/// Signature as a linear map. Throws std::invalid_argument if p(0) != 0 and
/// std::logic_error if the pointwise signature fails to be linear.
[[nodiscard]] gf2::GF2Map signature(const Perm8& p,
                                    const gf2::BilinearForm& form = gf2::BilinearForm::standard(3));
/// Pointwise signature on a raw table (need not be a permutation).
[[nodiscard]] std::array<unsigned, 8> signature_values(const Perm8::Table& table,
                                                       const gf2::BilinearForm& form = gf2::BilinearForm::standard(3));

[[nodiscard]] bool is_fano(const Perm8& p, const gf2::BilinearForm& form = gf2::BilinearForm::standard(3));

/// All permutations fixing 0, in lexicographic order of image tables.
[[nodiscard]] std::vector<Perm8> permutations_fixing_zero();

/// Filters the 5040 permutations fixing 0; sorted. `workers` splits the scan.
[[nodiscard]] std::vector<Perm8> enumerate_antilinear(unsigned workers = 1);
[[nodiscard]] std::vector<Perm8> enumerate_fano(const gf2::BilinearForm& form = gf2::BilinearForm::standard(3));
/// Independent generator: a Fano permutation is fixed by p(1), p(2), p(4); the
/// remaining values follow from the identity-signature equations. Candidates are
/// pruned with <x,p(x)> = 1 and <x,p(y)> ^ <y,p(x)> = 1 before being checked.
[[nodiscard]] std::vector<Perm8> enumerate_fano_from_basis();

struct Factorization {
    gf2::GF2Map linear;
    Perm8 fano;
};

/// p = linear after fano with linear = signature(p). Throws unless p is antilinear.
[[nodiscard]] Factorization factorize(const Perm8& p,
                                      const gf2::BilinearForm& form = gf2::BilinearForm::standard(3));
/// Applies a linear map after a permutation: x -> map(p(x)).
[[nodiscard]] Perm8 compose(const gf2::GF2Map& map, const Perm8& p);

/// <x,p(y)> ^ <y,p(x)> for a Fano p and distinct nonzero x, y. Throws on a
/// precondition violation.
[[nodiscard]] unsigned check_orth_pair(const Perm8& p, unsigned x, unsigned y,
                                       const gf2::BilinearForm& form = gf2::BilinearForm::standard(3));

}  // namespace cocube
