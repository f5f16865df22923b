#pragma once

// Subspaces of the edge space built from Z_2^m edge colourings, and the checks
// that relate colourings to triangle-free (cube) complements.

#include <cstdint>
#include <vector>

#include "cocube/antilinear.hpp"
#include "cocube/certificate.hpp"
#include "cocube/gf2.hpp"
#include "cocube/graphs.hpp"

namespace cocube {

class EdgeColoring {
public:
    /// All edges colored 0.
    EdgeColoring(unsigned n, unsigned m);
    /// One color per slot in slot order.
    EdgeColoring(unsigned n, unsigned m, std::vector<std::uint8_t> colors);

    [[nodiscard]] unsigned n() const noexcept { return n_; }
    [[nodiscard]] unsigned m() const noexcept { return m_; }
    [[nodiscard]] unsigned color(unsigned i, unsigned j) const { return colors_.at(edge_slot(i, j)); }
    [[nodiscard]] unsigned color_of_slot(unsigned slot) const { return colors_.at(slot); }
    void set_color(unsigned i, unsigned j, unsigned c);
    [[nodiscard]] const std::vector<std::uint8_t>& colors() const noexcept { return colors_; }

    friend bool operator==(const EdgeColoring&, const EdgeColoring&) = default;

private:
    std::uint8_t n_;
    std::uint8_t m_;
    std::vector<std::uint8_t> colors_;
};

/// A set of 2^dim edge sets indexed by Z_2^dim with member(a) ^ member(b) = member(a ^ b).
/// `rank` is the dimension actually spanned; it is below `dim` for a degenerate basis.
class Subspace {
public:
    /// Span of the given basis, member(k) = XOR of basis[t] over bits t of k.
    static Subspace from_basis(std::vector<EdgeSet> basis);

    [[nodiscard]] unsigned n() const noexcept { return n_; }
    [[nodiscard]] unsigned dim() const noexcept { return static_cast<unsigned>(basis_.size()); }
    [[nodiscard]] unsigned rank() const noexcept { return rank_; }
    [[nodiscard]] bool degenerate() const noexcept { return rank_ < dim(); }
    [[nodiscard]] const std::vector<EdgeSet>& basis() const noexcept { return basis_; }
    [[nodiscard]] const EdgeSet& member(unsigned k) const { return members_.at(k); }
    [[nodiscard]] const std::vector<EdgeSet>& members() const noexcept { return members_; }
    [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }

private:
    Subspace() = default;
    unsigned n_ = 0;
    unsigned rank_ = 0;
    std::vector<EdgeSet> basis_;
    std::vector<EdgeSet> members_;
};

/// C(i,j) = p(i ^ j) on K_8 with vertices Z_2^3. Throws if p(0) != 0.
[[nodiscard]] EdgeColoring coloring_from_perm(const Perm8& p);

/// v_k(i,j) = <C(i,j), k> for k in Z_2^m.
[[nodiscard]] Subspace subspace_from_coloring(const EdgeColoring& c);
[[nodiscard]] Subspace subspace_from_coloring(const EdgeColoring& c, const gf2::BilinearForm& form);

/// Colouring whose t-th color bit is basis[t]: the inverse of subspace_from_coloring.
[[nodiscard]] EdgeColoring coloring_from_basis(const std::vector<EdgeSet>& basis);

/// "lemma-V": every nonzero member of a 3-dim subspace of K_8 has a cube as complement.
/// Both the fast cube test and the isomorphism search must agree.
[[nodiscard]] Certificate verify_cocube(const Subspace& s);

/// "noext-triangle-regularity": for m = 3, each triangle's three edge colours are
/// linearly independent.
[[nodiscard]] Certificate check_triangle_regularity(const EdgeColoring& c);

/// "noext-n-bound": every vertex sees distinct nonzero colours, so n - 1 <= 2^m - 1.
[[nodiscard]] Certificate derive_n_bound(const EdgeColoring& c);

}  // namespace cocube
