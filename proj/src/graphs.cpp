#include "cocube/graphs.hpp"

#include <bit>
#include <stdexcept>

namespace cocube {

namespace {

constexpr std::uint64_t low_mask(unsigned bits) noexcept {
    return bits >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
}

constexpr char kHex[] = "0123456789abcdef";

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

Edge slot_edge(unsigned slot) noexcept {
    unsigned j = 1;
    while ((j + 1) * j / 2 <= slot) ++j;
    return {slot - j * (j - 1) / 2, j};
}

EdgeSet::EdgeSet(unsigned n) : n_(static_cast<std::uint8_t>(n)) {
    if (n > kMaxVertices) throw std::invalid_argument("EdgeSet: at most 12 vertices supported");
}

EdgeSet EdgeSet::complete(unsigned n) {
    EdgeSet g(n);
    const unsigned s = slot_count(n);
    g.lo_ = low_mask(s);
    g.hi_ = s > 64 ? low_mask(s - 64) : 0;
    return g;
}

EdgeSet EdgeSet::from_edges(unsigned n, const std::vector<Edge>& edges) {
    EdgeSet g(n);
    for (const auto& e : edges) {
        if (e.u == e.v || e.u >= n || e.v >= n) {
            throw std::invalid_argument("EdgeSet: invalid edge {" + std::to_string(e.u) + "," +
                                        std::to_string(e.v) + "}");
        }
        g.set_edge(e.u, e.v);
    }
    return g;
}

EdgeSet EdgeSet::from_words(unsigned n, std::uint64_t low, std::uint64_t high) {
    EdgeSet g(n);
    const EdgeSet all = complete(n);
    if ((low & ~all.lo_) != 0 || (high & ~all.hi_) != 0) {
        throw std::invalid_argument("EdgeSet: bits set beyond C(n,2) slots");
    }
    g.lo_ = low;
    g.hi_ = high;
    return g;
}

EdgeSet EdgeSet::parse(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos || colon == 0) throw std::invalid_argument("EdgeSet: expected n:hex");
    unsigned n = 0;
    for (char c : text.substr(0, colon)) {
        if (c < '0' || c > '9') throw std::invalid_argument("EdgeSet: bad vertex count");
        n = n * 10 + static_cast<unsigned>(c - '0');
        if (n > kMaxVertices) throw std::invalid_argument("EdgeSet: at most 12 vertices supported");
    }
    const auto hex = text.substr(colon + 1);
    const unsigned bytes = (slot_count(n) + 7) / 8;
    if (hex.size() != 2 * bytes) throw std::invalid_argument("EdgeSet: hex string has wrong length");
    EdgeSet g(n);
    for (unsigned k = 0; k < bytes; ++k) {
        const int hi = hex_value(hex[2 * k]);
        const int lo = hex_value(hex[2 * k + 1]);
        if (hi < 0 || lo < 0) throw std::invalid_argument("EdgeSet: bad hex digit");
        const unsigned byte = static_cast<unsigned>(hi * 16 + lo);
        for (unsigned b = 0; b < 8; ++b) {
            if (((byte >> b) & 1u) == 0) continue;
            const unsigned slot = 8 * k + b;
            if (slot >= g.slots()) throw std::invalid_argument("EdgeSet: bits set beyond C(n,2) slots");
            g.set_slot(slot);
        }
    }
    return g;
}

bool EdgeSet::test_slot(unsigned slot) const noexcept {
    return slot < 64 ? ((lo_ >> slot) & 1u) != 0 : ((hi_ >> (slot - 64)) & 1u) != 0;
}

void EdgeSet::set_slot(unsigned slot, bool on) {
    if (slot >= slots()) throw std::out_of_range("EdgeSet: slot out of range");
    std::uint64_t& word = slot < 64 ? lo_ : hi_;
    const std::uint64_t bit = std::uint64_t{1} << (slot % 64);
    word = on ? (word | bit) : (word & ~bit);
}

unsigned EdgeSet::edge_count() const noexcept {
    return static_cast<unsigned>(std::popcount(lo_) + std::popcount(hi_));
}

std::vector<Edge> EdgeSet::edges() const {
    std::vector<Edge> out;
    for (unsigned s = 0; s < slots(); ++s) {
        if (test_slot(s)) out.push_back(slot_edge(s));
    }
    return out;
}

EdgeSet::Adjacency EdgeSet::adjacency() const noexcept {
    Adjacency adj{};
    unsigned slot = 0;
    for (unsigned j = 1; j < n_; ++j) {
        for (unsigned i = 0; i < j; ++i, ++slot) {
            if (test_slot(slot)) {
                adj[i] |= static_cast<std::uint16_t>(1u << j);
                adj[j] |= static_cast<std::uint16_t>(1u << i);
            }
        }
    }
    return adj;
}

unsigned EdgeSet::degree(unsigned v) const noexcept {
    return static_cast<unsigned>(std::popcount(adjacency()[v]));
}

bool EdgeSet::subset_of(const EdgeSet& other) const {
    check_compatible(other);
    return (lo_ & ~other.lo_) == 0 && (hi_ & ~other.hi_) == 0;
}

void EdgeSet::check_compatible(const EdgeSet& other) const {
    if (n_ != other.n_) {
        throw std::invalid_argument("EdgeSet: vertex count mismatch (" + std::to_string(n_) + " vs " +
                                    std::to_string(other.n_) + ")");
    }
}

EdgeSet& EdgeSet::operator^=(const EdgeSet& other) {
    check_compatible(other);
    lo_ ^= other.lo_;
    hi_ ^= other.hi_;
    return *this;
}

EdgeSet& EdgeSet::operator&=(const EdgeSet& other) {
    check_compatible(other);
    lo_ &= other.lo_;
    hi_ &= other.hi_;
    return *this;
}

EdgeSet& EdgeSet::operator|=(const EdgeSet& other) {
    check_compatible(other);
    lo_ |= other.lo_;
    hi_ |= other.hi_;
    return *this;
}

std::string EdgeSet::canonical() const {
    std::string out = std::to_string(n_) + ":";
    const unsigned bytes = (slots() + 7) / 8;
    for (unsigned k = 0; k < bytes; ++k) {
        unsigned byte = 0;
        for (unsigned b = 0; b < 8; ++b) {
            const unsigned slot = 8 * k + b;
            if (slot < slots() && test_slot(slot)) byte |= 1u << b;
        }
        out += kHex[byte >> 4];
        out += kHex[byte & 15u];
    }
    return out;
}

Triangle::Triangle(unsigned a_, unsigned b_, unsigned c_) : a(a_), b(b_), c(c_) {
    if (!(a < b && b < c)) throw std::invalid_argument("Triangle: vertices must satisfy a < b < c");
}

EdgeSet Triangle::edges(unsigned n) const {
    if (c >= n) throw std::invalid_argument("Triangle: vertex out of range");
    return EdgeSet::from_edges(n, {{a, b}, {a, c}, {b, c}});
}

std::string Triangle::to_string() const {
    return "{" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "}";
}

EdgeSet complement(const EdgeSet& g) { return g ^ EdgeSet::complete(g.n()); }

EdgeSet symdiff(const EdgeSet& g1, const EdgeSet& g2) { return g1 ^ g2; }

EdgeSet intersect(const EdgeSet& g1, const EdgeSet& g2) { return g1 & g2; }

EdgeSet agree(const EdgeSet& g1, const EdgeSet& g2) { return complement(g1 ^ g2); }

bool find_triangle(const EdgeSet& g, Triangle* out) {
    const auto adj = g.adjacency();
    for (unsigned a = 0; a < g.n(); ++a) {
        // Only look at neighbours above a so each triangle is found at its least vertex.
        unsigned upper = adj[a] & ~((2u << a) - 1);
        while (upper) {
            const unsigned b = static_cast<unsigned>(std::countr_zero(upper));
            upper &= upper - 1;
            const unsigned common = adj[a] & adj[b] & ~((2u << b) - 1);
            if (common) {
                if (out) *out = Triangle(a, b, static_cast<unsigned>(std::countr_zero(common)));
                return true;
            }
        }
    }
    return false;
}

bool has_triangle(const EdgeSet& g) noexcept {
    const auto adj = g.adjacency();
    for (unsigned a = 0; a < g.n(); ++a) {
        unsigned nb = adj[a];
        while (nb) {
            const unsigned b = static_cast<unsigned>(std::countr_zero(nb));
            nb &= nb - 1;
            if (adj[a] & adj[b]) return true;
        }
    }
    return false;
}

bool is_bipartite(const EdgeSet& g) noexcept {
    const auto adj = g.adjacency();
    const unsigned n = g.n();
    unsigned unseen = (1u << n) - 1;
    while (unseen) {
        const unsigned root = static_cast<unsigned>(std::countr_zero(unseen));
        // Layered BFS over bit masks; side[0] and side[1] alternate by layer parity.
        unsigned side[2] = {1u << root, 0};
        unsigned frontier = 1u << root;
        unsigned parity = 0;
        unseen &= ~frontier;
        while (frontier) {
            unsigned next = 0;
            unsigned f = frontier;
            while (f) {
                const unsigned v = static_cast<unsigned>(std::countr_zero(f));
                f &= f - 1;
                next |= adj[v];
            }
            parity ^= 1u;
            if (next & side[parity ^ 1u]) return false;
            frontier = next & unseen;
            side[parity] |= next;
            unseen &= ~next;
        }
    }
    return true;
}

EdgeSet standard_cube() {
    EdgeSet g(8);
    for (unsigned i = 0; i < 8; ++i) {
        for (unsigned t : {1u, 2u, 4u}) {
            if (i < (i ^ t)) g.set_edge(i, i ^ t);
        }
    }
    return g;
}

bool is_cube(const EdgeSet& g) {
    if (g.n() != 8 || g.edge_count() != 12) return false;
    const auto adj = g.adjacency();
    for (unsigned v = 0; v < 8; ++v) {
        if (std::popcount(adj[v]) != 3) return false;
    }
    return is_bipartite(g);
}

bool is_cube_by_isomorphism(const EdgeSet& g, std::array<unsigned, 8>* mapping) {
    if (g.n() != 8 || g.edge_count() != 12) return false;
    const auto gadj = g.adjacency();
    const auto cadj = standard_cube().adjacency();
    std::array<unsigned, 8> map{};
    unsigned used = 0;
    // Assign g-vertices 0..7 in order; every already-mapped pair must keep adjacency.
    auto extend = [&](auto&& self, unsigned v) -> bool {
        if (v == 8) return true;
        for (unsigned q = 0; q < 8; ++q) {
            if ((used >> q) & 1u) continue;
            if (std::popcount(gadj[v]) != std::popcount(cadj[q])) continue;
            bool ok = true;
            for (unsigned u = 0; u < v && ok; ++u) {
                const bool ge = (gadj[v] >> u) & 1u;
                const bool ce = (cadj[q] >> map[u]) & 1u;
                ok = ge == ce;
            }
            if (!ok) continue;
            map[v] = q;
            used |= 1u << q;
            if (self(self, v + 1)) return true;
            used &= ~(1u << q);
        }
        return false;
    };
    if (!extend(extend, 0)) return false;
    if (mapping) *mapping = map;
    return true;
}

std::vector<Triangle> triangles_of(unsigned n) {
    if (n > kMaxVertices) throw std::invalid_argument("triangles_of: at most 12 vertices supported");
    std::vector<Triangle> out;
    for (unsigned a = 0; a < n; ++a) {
        for (unsigned b = a + 1; b < n; ++b) {
            for (unsigned c = b + 1; c < n; ++c) out.emplace_back(a, b, c);
        }
    }
    return out;
}

EdgeSet cycle_graph(unsigned n, const std::vector<unsigned>& cycle) {
    std::vector<Edge> edges;
    for (std::size_t k = 0; k < cycle.size(); ++k) edges.push_back({cycle[k], cycle[(k + 1) % cycle.size()]});
    return EdgeSet::from_edges(n, edges);
}

}  // namespace cocube
