#include <doctest.h>

#include <stdexcept>

#include <set>

#include "cocube/antilinear.hpp"
#include "cocube/pipeline.hpp"

using namespace cocube;

TEST_CASE("cycle parsing and printing") {
    const auto p = Perm8::parse_cycles("(1234)");
    CHECK(p.to_image_string() == "02341567");
    CHECK(p.to_cycles() == "(1234)");
    CHECK(Perm8::parse_cycles("(13)(26)(45)").to_image_string() == "03615427");
    CHECK(Perm8::parse_cycles("()") == Perm8::identity());
    CHECK(Perm8::parse_cycles("") == Perm8::identity());
    CHECK(Perm8::parse_images("02341567") == p);
    CHECK_THROWS_AS((void)Perm8::parse_cycles("(12)(21)"), std::invalid_argument);
    CHECK_THROWS_AS((void)Perm8::parse_cycles("(1223)"), std::invalid_argument);
    CHECK_THROWS_AS((void)Perm8::parse_cycles("(128)"), std::invalid_argument);
    CHECK_THROWS_AS((void)Perm8::parse_cycles("(12"), std::invalid_argument);
    CHECK_THROWS_AS((void)Perm8::parse_cycles("12"), std::invalid_argument);
    CHECK_THROWS_AS((void)Perm8::from_images({0, 1, 1, 3, 4, 5, 6, 7}), std::invalid_argument);
    for (const auto& q : permutations_fixing_zero()) REQUIRE(Perm8::parse_cycles(q.to_cycles()) == q);
}

TEST_CASE("is_antilinear examples") {
    CHECK(is_antilinear(Perm8::parse_cycles("(1234)")));
    CHECK_FALSE(is_antilinear(Perm8::identity()));
    CHECK_FALSE(is_antilinear(Perm8::parse_cycles("(01)")));
}

TEST_CASE("antilinearity is closed under inversion") {
    for (const auto& p : permutations_fixing_zero()) REQUIRE(is_antilinear(p) == is_antilinear(p.inverse()));
}

TEST_CASE("signature examples") {
    const auto sig = signature(Perm8::parse_cycles("(1234)"));
    CHECK(sig.apply(1) == 4);
    CHECK(sig.apply(2) == 6);
    CHECK(sig.apply(4) == 5);
    const auto lines = fano_lines();
    const auto p = Perm8::parse_cycles("(1234)");
    const std::array<unsigned, 7> expected{4, 6, 2, 5, 1, 3, 7};
    for (unsigned x = 1; x < 8; ++x) {
        const auto& l = lines[x - 1];
        CHECK((p(l[0]) ^ p(l[1]) ^ p(l[2])) == expected[x - 1]);
    }
    CHECK(signature(Perm8::parse_cycles("(135647)")) == gf2::GF2Map::identity(3));
    for (const auto& q : permutations_fixing_zero()) REQUIRE(signature_values(q.images())[0] == 0);
    CHECK_THROWS_AS((void)signature(Perm8::parse_cycles("(01)")), std::invalid_argument);
}

TEST_CASE("signature is linear on every permutation fixing 0") {
    const auto all = permutations_fixing_zero();
    CHECK(all.size() == 5040);
    for (const auto& p : all) {
        const auto s = signature_values(p.images());
        for (unsigned x = 0; x < 8; ++x) {
            for (unsigned y = 0; y < 8; ++y) REQUIRE(s[x ^ y] == (s[x] ^ s[y]));
        }
        if (is_antilinear(p)) REQUIRE(signature(p).is_regular());
    }
}

TEST_CASE("fano examples") {
    CHECK(is_fano(Perm8::parse_cycles("(135647)")));
    CHECK(is_fano(Perm8::parse_cycles("(13)(26)(45)")));
    CHECK_FALSE(is_fano(Perm8::parse_cycles("(1234)")));
    // Misprinted list entry: antilinear but its signature is not the identity.
    const auto misprint = Perm8::parse_cycles("(174652)");
    CHECK(is_antilinear(misprint));
    CHECK_FALSE(is_fano(misprint));
    CHECK(Perm8::parse_cycles("(174653)") == Perm8::parse_cycles("(135647)").inverse());
}

TEST_CASE("fano enumeration: brute force, basis generator and reference list agree") {
    const auto brute = enumerate_fano();
    CHECK(brute.size() == 8);
    CHECK(brute == enumerate_fano_from_basis());
    CHECK(brute == reference_fano());
    for (const auto& p : brute) {
        for (unsigned x = 1; x < 8; ++x) CHECK(gf2::dot(x, p(x)) == 1);
    }
}

TEST_CASE("check_orth_pair") {
    const auto p = Perm8::parse_cycles("(135647)");
    CHECK(check_orth_pair(p, 1, 2) == 1);
    for (const auto& f : enumerate_fano()) {
        for (unsigned x = 1; x < 8; ++x) {
            for (unsigned y = x + 1; y < 8; ++y) CHECK(check_orth_pair(f, x, y) == 1);
        }
    }
    CHECK_THROWS_AS((void)check_orth_pair(p, 3, 3), std::invalid_argument);
    CHECK_THROWS_AS((void)check_orth_pair(p, 0, 3), std::invalid_argument);
    CHECK_THROWS_AS((void)check_orth_pair(Perm8::parse_cycles("(1234)"), 1, 2), std::invalid_argument);
}

TEST_CASE("antilinear enumeration and factorization") {
    const auto anti = enumerate_antilinear();
    CHECK(anti.size() == 1344);
    CHECK(anti == enumerate_antilinear(4));
    CHECK(std::binary_search(anti.begin(), anti.end(), Perm8::parse_cycles("(1234)")));
    const auto fano = enumerate_fano();
    CHECK(anti.size() == gf2::enumerate_regular(3).size() * fano.size());

    const auto f = factorize(Perm8::parse_cycles("(1234)"));
    CHECK(f.linear == gf2::GF2Map::from_images(3, {4, 6, 5}));
    CHECK(f.linear.inverse() == gf2::GF2Map::from_images(3, {5, 3, 1}));
    CHECK(f.fano == Perm8::parse_cycles("(13)(26)(45)"));

    for (const auto& phi : fano) {
        const auto g = factorize(phi);
        CHECK(g.linear == gf2::GF2Map::identity(3));
        CHECK(g.fano == phi);
    }
    std::set<std::pair<std::string, Perm8>> pairs;
    for (const auto& p : anti) {
        REQUIRE(is_antilinear(p));
        const auto g = factorize(p);
        REQUIRE(compose(g.linear, g.fano) == p);
        REQUIRE(is_fano(g.fano));
        pairs.insert({g.linear.to_string(), g.fano});
    }
    CHECK(pairs.size() == 1344);
    CHECK_THROWS_AS((void)factorize(Perm8::identity()), std::invalid_argument);
}
