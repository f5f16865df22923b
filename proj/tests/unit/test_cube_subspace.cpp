#include <doctest.h>

#include <stdexcept>

#include <random>

#include "cocube/cube_subspace.hpp"

using namespace cocube;

namespace {

Subspace v1234() { return subspace_from_coloring(coloring_from_perm(Perm8::parse_cycles("(1234)"))); }

}  // namespace

TEST_CASE("coloring_from_perm") {
    const auto c = coloring_from_perm(Perm8::parse_cycles("(1234)"));
    CHECK(c.color(0, 1) == 2);
    CHECK(c.color(1, 0) == 2);
    for (unsigned v = 0; v < 8; ++v) {
        unsigned seen = 0;
        for (unsigned u = 0; u < 8; ++u) {
            if (u != v) seen |= 1u << c.color(u, v);
        }
        CHECK(seen == 0xfe);
    }
    CHECK_THROWS_AS((void)coloring_from_perm(Perm8::parse_cycles("(01)")), std::invalid_argument);
}

TEST_CASE("subspace_from_coloring") {
    const auto s = v1234();
    CHECK(s.dim() == 3);
    CHECK(s.rank() == 3);
    CHECK(s.member(0).empty());
    for (unsigned k = 1; k < 8; ++k) CHECK(s.member(k).edge_count() == 16);
    for (unsigned a = 0; a < 8; ++a) {
        for (unsigned b = 0; b < 8; ++b) {
            CHECK((s.member(a) ^ s.member(b)) == s.member(a ^ b));
            CHECK(agree(s.member(a), s.member(b)) == complement(s.member(a ^ b)));
        }
    }
    // Degenerate colourings are reported through rank, not rejected.
    EdgeColoring flat(8, 3);
    for (unsigned j = 1; j < 8; ++j) {
        for (unsigned i = 0; i < j; ++i) flat.set_color(i, j, 1);
    }
    const auto d = subspace_from_coloring(flat);
    CHECK(d.degenerate());
    CHECK(d.rank() == 1);
}

TEST_CASE("verify_cocube") {
    const auto cert = verify_cocube(v1234());
    CHECK(cert.ok());
    CHECK(cert.counters["cubes"] == 7);

    const auto bad = verify_cocube(subspace_from_coloring(coloring_from_perm(Perm8::identity())));
    CHECK(bad.status == Status::falsified);
    REQUIRE_FALSE(bad.witnesses.empty());
    CHECK(bad.witnesses[0].contains("k"));
    CHECK(bad.witnesses[0].contains("triangle"));
    CHECK_THROWS_AS((void)verify_cocube(Subspace::from_basis({EdgeSet(8)})), std::invalid_argument);
}

TEST_CASE("every antilinear permutation gives a co-cube subspace, with independent neighbourhoods") {
    for (const auto& p : enumerate_antilinear()) {
        const auto s = subspace_from_coloring(coloring_from_perm(p));
        REQUIRE(s.rank() == 3);
        REQUIRE(verify_cocube(s).ok());
        const auto inv = p.inverse();
        for (unsigned k = 1; k < 8; ++k) {
            // N = p^-1(k-perp minus 0).
            std::vector<unsigned> nbhd;
            for (unsigned y = 1; y < 8; ++y) {
                if (gf2::dot(k, y) == 0) nbhd.push_back(inv(y));
            }
            REQUIRE(nbhd.size() == 3);
            REQUIRE(gf2::rank_of(nbhd) == 3);
        }
    }
}

TEST_CASE("basis round trip") {
    std::mt19937_64 rng(9);
    for (int k = 0; k < 100; ++k) {
        std::vector<EdgeSet> basis;
        for (int t = 0; t < 3; ++t) basis.push_back(EdgeSet::from_words(8, rng() & EdgeSet::complete(8).low_word()));
        const auto c = coloring_from_basis(basis);
        const auto s = subspace_from_coloring(c);
        CHECK(s.basis() == basis);
        CHECK(coloring_from_basis(s.basis()) == c);
    }
    const auto v = v1234();
    CHECK(subspace_from_coloring(coloring_from_basis(v.basis())).members() == v.members());
}

TEST_CASE("triangle regularity") {
    CHECK(check_triangle_regularity(coloring_from_perm(Perm8::parse_cycles("(1234)"))).ok());
    for (const auto& p : enumerate_fano()) CHECK(check_triangle_regularity(coloring_from_perm(p)).ok());
    EdgeColoring constant(8, 3);
    for (unsigned j = 1; j < 8; ++j) {
        for (unsigned i = 0; i < j; ++i) constant.set_color(i, j, 5);
    }
    const auto bad = check_triangle_regularity(constant);
    CHECK(bad.status == Status::falsified);
    CHECK(bad.witnesses[0].contains("triangle"));
    // Regular triangles force distinct nonzero colours at every vertex.
    CHECK(derive_n_bound(coloring_from_perm(Perm8::parse_cycles("(1234)"))).ok());
}

TEST_CASE("n bound") {
    CHECK(derive_n_bound(coloring_from_perm(Perm8::parse_cycles("(1234)"))).ok());
    EdgeColoring tri(3, 3, {1, 2, 4});
    CHECK(check_triangle_regularity(tri).ok());
    CHECK(derive_n_bound(tri).ok());
    // Any colouring of K9 fails by pigeonhole.
    std::mt19937_64 rng(5);
    for (int k = 0; k < 50; ++k) {
        EdgeColoring c(9, 3);
        for (unsigned j = 1; j < 9; ++j) {
            for (unsigned i = 0; i < j; ++i) c.set_color(i, j, 1 + rng() % 7);
        }
        CHECK(derive_n_bound(c).status == Status::falsified);
    }
}
