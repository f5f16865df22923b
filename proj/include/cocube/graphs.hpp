#pragma once

// Subgraphs of K_n (n <= 12) as indicator vectors over the C(n,2) edge slots.
// Edge (i,j) with i < j occupies slot j(j-1)/2 + i.

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cocube {

inline constexpr unsigned kMaxVertices = 12;

[[nodiscard]] constexpr unsigned slot_count(unsigned n) noexcept { return n * (n - 1) / 2; }

/// Slot of the edge {i,j}; order of arguments does not matter.
[[nodiscard]] constexpr unsigned edge_slot(unsigned i, unsigned j) noexcept {
    if (i > j) std::swap(i, j);
    return j * (j - 1) / 2 + i;
}

struct Edge {
    unsigned u;
    unsigned v;
    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Inverse of edge_slot.
[[nodiscard]] Edge slot_edge(unsigned slot) noexcept;

class EdgeSet {
public:
    using Adjacency = std::array<std::uint16_t, kMaxVertices>;

    EdgeSet() = default;
    explicit EdgeSet(unsigned n);

    static EdgeSet complete(unsigned n);
    static EdgeSet from_edges(unsigned n, const std::vector<Edge>& edges);
    /// Low 64 slots from `low`, remaining slots from `high`; bits beyond C(n,2) must be zero.
    static EdgeSet from_words(unsigned n, std::uint64_t low, std::uint64_t high = 0);
    /// Parses the canonical "n:hex" form produced by canonical().
    static EdgeSet parse(std::string_view text);

    [[nodiscard]] unsigned n() const noexcept { return n_; }
    [[nodiscard]] unsigned slots() const noexcept { return slot_count(n_); }
    [[nodiscard]] std::uint64_t low_word() const noexcept { return lo_; }
    [[nodiscard]] std::uint64_t high_word() const noexcept { return hi_; }

    [[nodiscard]] bool test_slot(unsigned slot) const noexcept;
    [[nodiscard]] bool has_edge(unsigned i, unsigned j) const noexcept { return test_slot(edge_slot(i, j)); }
    void set_slot(unsigned slot, bool on = true);
    void set_edge(unsigned i, unsigned j, bool on = true) { set_slot(edge_slot(i, j), on); }

    [[nodiscard]] unsigned edge_count() const noexcept;
    [[nodiscard]] bool empty() const noexcept { return lo_ == 0 && hi_ == 0; }
    [[nodiscard]] std::vector<Edge> edges() const;
    [[nodiscard]] Adjacency adjacency() const noexcept;
    [[nodiscard]] unsigned degree(unsigned v) const noexcept;

    /// Subset test: every edge of *this is in other.
    [[nodiscard]] bool subset_of(const EdgeSet& other) const;

    EdgeSet& operator^=(const EdgeSet& other);
    EdgeSet& operator&=(const EdgeSet& other);
    EdgeSet& operator|=(const EdgeSet& other);
    friend EdgeSet operator^(EdgeSet a, const EdgeSet& b) { return a ^= b; }
    friend EdgeSet operator&(EdgeSet a, const EdgeSet& b) { return a &= b; }
    friend EdgeSet operator|(EdgeSet a, const EdgeSet& b) { return a |= b; }

    friend bool operator==(const EdgeSet&, const EdgeSet&) = default;
    /// Orders by n, then by the slot-weighted integer value (slot s has weight 2^s).
    friend std::strong_ordering operator<=>(const EdgeSet& a, const EdgeSet& b) noexcept {
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        if (auto c = a.hi_ <=> b.hi_; c != 0) return c;
        return a.lo_ <=> b.lo_;
    }

    /// "n:hex": ceil(C(n,2)/8) bytes, byte k holds slots 8k..8k+7 (slot 8k in
    /// the least significant bit), each byte as two lowercase hex digits, byte 0 first.
    [[nodiscard]] std::string canonical() const;

private:
    void check_compatible(const EdgeSet& other) const;

    std::uint8_t n_ = 0;
    std::uint64_t lo_ = 0;
    std::uint64_t hi_ = 0;
};

struct Triangle {
    unsigned a;
    unsigned b;
    unsigned c;

    /// Throws unless a < b < c.
    Triangle(unsigned a, unsigned b, unsigned c);

    [[nodiscard]] EdgeSet edges(unsigned n) const;
    [[nodiscard]] std::string to_string() const;
    friend bool operator==(const Triangle&, const Triangle&) = default;
    friend auto operator<=>(const Triangle&, const Triangle&) = default;
};

[[nodiscard]] EdgeSet complement(const EdgeSet& g);
[[nodiscard]] EdgeSet symdiff(const EdgeSet& g1, const EdgeSet& g2);
[[nodiscard]] EdgeSet intersect(const EdgeSet& g1, const EdgeSet& g2);
/// Edges and non-edges on which both graphs coincide: complement of the symmetric difference.
[[nodiscard]] EdgeSet agree(const EdgeSet& g1, const EdgeSet& g2);

[[nodiscard]] bool has_triangle(const EdgeSet& g) noexcept;
/// Returns some triangle of g if one exists.
[[nodiscard]] bool find_triangle(const EdgeSet& g, Triangle* out);
/// 2-colorability; isolated vertices are ignored.
[[nodiscard]] bool is_bipartite(const EdgeSet& g) noexcept;

/// The standard 3-cube on vertex set Z_2^3: i ~ j iff i xor j is in {1,2,4}.
[[nodiscard]] EdgeSet standard_cube();
/// O(1)-style check for Q_3 on n = 8: 12 edges, 3-regular, bipartite.
[[nodiscard]] bool is_cube(const EdgeSet& g);
/// Explicit isomorphism search against standard_cube(). Stores the vertex map
/// (g-vertex -> cube vertex) in *mapping when found.
[[nodiscard]] bool is_cube_by_isomorphism(const EdgeSet& g, std::array<unsigned, 8>* mapping = nullptr);

/// All C(n,3) triangles in lexicographic order.
[[nodiscard]] std::vector<Triangle> triangles_of(unsigned n);

[[nodiscard]] EdgeSet cycle_graph(unsigned n, const std::vector<unsigned>& cycle);

}  // namespace cocube
