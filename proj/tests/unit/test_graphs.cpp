#include <doctest.h>

#include <stdexcept>

#include <numeric>
#include <random>

#include "cocube/graphs.hpp"

using namespace cocube;

namespace {

EdgeSet random_graph(unsigned n, std::mt19937_64& rng) {
    EdgeSet g(n);
    for (unsigned s = 0; s < g.slots(); ++s) g.set_slot(s, rng() & 1u);
    return g;
}

EdgeSet random_edges(unsigned n, unsigned count, std::mt19937_64& rng) {
    std::vector<unsigned> slots(slot_count(n));
    std::iota(slots.begin(), slots.end(), 0u);
    std::shuffle(slots.begin(), slots.end(), rng);
    EdgeSet g(n);
    for (unsigned k = 0; k < count; ++k) g.set_slot(slots[k]);
    return g;
}

}  // namespace

TEST_CASE("slot order") {
    CHECK(edge_slot(0, 1) == 0);
    CHECK(edge_slot(0, 2) == 1);
    CHECK(edge_slot(1, 2) == 2);
    CHECK(edge_slot(6, 7) == 27);
    CHECK(edge_slot(7, 6) == 27);
    for (unsigned s = 0; s < slot_count(12); ++s) {
        const auto e = slot_edge(s);
        CHECK(e.u < e.v);
        CHECK(edge_slot(e.u, e.v) == s);
    }
}

TEST_CASE("canonical text form") {
    const auto t = Triangle(0, 1, 2).edges(8);
    CHECK(t.canonical() == "8:07000000");
    CHECK(EdgeSet::parse("8:07000000") == t);
    CHECK(EdgeSet::complete(8).canonical() == "8:ffffff0f");
    std::mt19937_64 rng(3);
    for (unsigned n : {3u, 8u, 9u, 12u}) {
        for (int k = 0; k < 50; ++k) {
            const auto g = random_graph(n, rng);
            CHECK(EdgeSet::parse(g.canonical()) == g);
        }
    }
    CHECK_THROWS((void)EdgeSet::parse("8:ffffffff"));
    CHECK_THROWS((void)EdgeSet::parse("garbage"));
}

TEST_CASE("complement") {
    CHECK(complement(EdgeSet(8)) == EdgeSet::complete(8));
    CHECK(complement(EdgeSet(8)).edge_count() == 28);
    std::mt19937_64 rng(1);
    for (int k = 0; k < 100; ++k) {
        const auto g = random_graph(8, rng);
        CHECK(complement(complement(g)) == g);
    }
    CHECK(complement(random_edges(8, 16, rng)).edge_count() == 12);
}

TEST_CASE("symdiff and agree") {
    std::mt19937_64 rng(2);
    const EdgeSet empty(8);
    for (int k = 0; k < 200; ++k) {
        const auto a = random_graph(8, rng);
        const auto b = random_graph(8, rng);
        const auto c = random_graph(8, rng);
        CHECK(symdiff(a, a) == empty);
        CHECK(symdiff(a, empty) == a);
        CHECK(symdiff(symdiff(a, b), c) == symdiff(a, symdiff(b, c)));
        CHECK(symdiff(a, b) == symdiff(b, a));
        CHECK(agree(a, a) == EdgeSet::complete(8));
        CHECK(agree(a, complement(a)) == empty);
        CHECK(intersect(a, b).subset_of(agree(a, b)));
        CHECK(agree(a, b) == (intersect(a, b) | intersect(complement(a), complement(b))));
    }
    // Triangle plus a disjoint 16-edge graph.
    const auto t = Triangle(0, 1, 2).edges(8);
    auto v = complement(t);
    unsigned removed = 0;
    for (unsigned s = 0; s < 28 && v.edge_count() > 16; ++s) {
        if (v.test_slot(s)) {
            v.set_slot(s, false);
            ++removed;
        }
    }
    REQUIRE(v.edge_count() == 16);
    CHECK(symdiff(t, v).edge_count() == 19);
    CHECK_THROWS_AS((void)symdiff(EdgeSet(8), EdgeSet(7)), std::invalid_argument);
    CHECK_THROWS_AS((void)agree(EdgeSet(8), EdgeSet(9)), std::invalid_argument);
}

TEST_CASE("triangles and bipartiteness") {
    CHECK(has_triangle(Triangle(0, 1, 2).edges(8)));
    CHECK_FALSE(has_triangle(standard_cube()));
    CHECK(is_bipartite(standard_cube()));
    CHECK_FALSE(is_bipartite(cycle_graph(5, {0, 1, 2, 3, 4})));
    CHECK(is_bipartite(cycle_graph(8, {0, 3, 5, 7})));
    CHECK(is_bipartite(EdgeSet(8)));
    Triangle found(0, 1, 2);
    CHECK(find_triangle(EdgeSet::from_edges(8, {{3, 5}, {5, 7}, {3, 7}, {0, 1}}), &found));
    CHECK(found == Triangle(3, 5, 7));
    CHECK_FALSE(find_triangle(standard_cube(), &found));
}

TEST_CASE("has_triangle implies not bipartite, exhaustive for n <= 5") {
    for (unsigned n = 3; n <= 5; ++n) {
        const unsigned slots = slot_count(n);
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << slots); ++bits) {
            const auto g = EdgeSet::from_words(n, bits);
            if (has_triangle(g)) REQUIRE_FALSE(is_bipartite(g));
        }
    }
    std::mt19937_64 rng(4);
    for (int k = 0; k < 5000; ++k) {
        const auto g = random_graph(12, rng);
        if (has_triangle(g)) CHECK_FALSE(is_bipartite(g));
    }
}

TEST_CASE("bipartite against a brute-force 2-colouring on n = 5") {
    const unsigned n = 5;
    for (std::uint64_t bits = 0; bits < (1u << slot_count(n)); ++bits) {
        const auto g = EdgeSet::from_words(n, bits);
        bool colourable = false;
        for (unsigned side = 0; side < (1u << n) && !colourable; ++side) {
            bool ok = true;
            for (const auto& e : g.edges()) ok = ok && (((side >> e.u) ^ (side >> e.v)) & 1u);
            colourable = ok;
        }
        REQUIRE(is_bipartite(g) == colourable);
    }
}

TEST_CASE("cube recognition") {
    CHECK(is_cube(standard_cube()));
    CHECK(is_cube_by_isomorphism(standard_cube()));
    auto k4 = EdgeSet(8);
    for (unsigned i = 0; i < 4; ++i) {
        for (unsigned j = i + 1; j < 4; ++j) k4.set_edge(i, j);
    }
    CHECK_FALSE(is_cube(k4));
    CHECK_FALSE(is_cube_by_isomorphism(k4));
    // Wagner graph: 12 edges, 3-regular, triangle-free, not bipartite.
    auto wagner = cycle_graph(8, {0, 1, 2, 3, 4, 5, 6, 7});
    for (unsigned i = 0; i < 4; ++i) wagner.set_edge(i, i + 4);
    CHECK(wagner.edge_count() == 12);
    CHECK_FALSE(has_triangle(wagner));
    CHECK_FALSE(is_cube(wagner));
    CHECK_FALSE(is_cube_by_isomorphism(wagner));
    CHECK_FALSE(is_cube(EdgeSet::complete(7)));
}

TEST_CASE("cube fast path agrees with the isomorphism oracle") {
    std::mt19937_64 rng(12345);
    std::array<unsigned, 8> perm{};
    std::iota(perm.begin(), perm.end(), 0u);
    for (int k = 0; k < 2000; ++k) {
        std::shuffle(perm.begin(), perm.end(), rng);
        EdgeSet g(8);
        for (const auto& e : standard_cube().edges()) g.set_edge(perm[e.u], perm[e.v]);
        std::array<unsigned, 8> mapping{};
        REQUIRE(is_cube(g));
        REQUIRE(is_cube_by_isomorphism(g, &mapping));
        for (const auto& e : g.edges()) CHECK(standard_cube().has_edge(mapping[e.u], mapping[e.v]));
    }
    unsigned cubes = 0;
    for (int k = 0; k < 100000; ++k) {
        const auto g = random_edges(8, 12, rng);
        const bool fast = is_cube(g);
        cubes += fast;
        REQUIRE(fast == is_cube_by_isomorphism(g));
        if (fast) CHECK((g.edge_count() == 12 && !has_triangle(g) && is_bipartite(g)));
    }
    MESSAGE("random 12-edge cubes: " << cubes);
}

TEST_CASE("triangles_of") {
    CHECK(triangles_of(8).size() == 56);
    CHECK(triangles_of(3).size() == 1);
    CHECK(triangles_of(9).size() == 84);
    const auto ts = triangles_of(8);
    CHECK(std::is_sorted(ts.begin(), ts.end()));
    CHECK(ts.front() == Triangle(0, 1, 2));
    for (const auto& t : ts) CHECK(t.edges(8).edge_count() == 3);
    CHECK_THROWS((void)Triangle(2, 1, 3));
}
