#include <doctest.h>

#include <stdexcept>

#include <random>

#include "cocube/useful_sets.hpp"

using namespace cocube;

namespace {

Subspace v1234() { return subspace_from_coloring(coloring_from_perm(Perm8::parse_cycles("(1234)"))); }

EdgeSet random_graph(std::mt19937_64& rng) { return EdgeSet::from_words(8, rng() & EdgeSet::complete(8).low_word()); }

}  // namespace

TEST_CASE("candidate sets") {
    const auto v = CandidateSet::from_subspace(v1234());
    CHECK(v.size() == 8);
    CHECK(v.log_size() == 3);
    CHECK_THROWS((void)CandidateSet(8, {EdgeSet(8), EdgeSet::complete(8)}));
    std::vector<EdgeSet> dup(8, EdgeSet(8));
    CHECK_THROWS((void)CandidateSet(8, dup));
}

TEST_CASE("usefulness examples") {
    const auto v = CandidateSet::from_subspace(v1234());
    CHECK(is_useful(v));
    std::mt19937_64 rng(1);
    for (int k = 0; k < 20; ++k) CHECK(is_useful(v.translate(random_graph(rng))));

    // Empty graph plus seven supersets of a common triangle.
    const auto t = Triangle(0, 1, 2).edges(8);
    std::vector<EdgeSet> members{EdgeSet(8)};
    for (unsigned k = 1; k < 8; ++k) {
        auto g = t;
        g.set_slot(2 + k);  // slots 0-2 are the triangle
        members.push_back(g);
    }
    CHECK_FALSE(is_useful(CandidateSet(8, members)));

    std::vector<EdgeSet> big;
    for (unsigned k = 0; k < 32; ++k) big.push_back(EdgeSet::from_words(8, k));
    CHECK_THROWS_AS((void)is_useful(CandidateSet(8, big)), std::domain_error);
}

TEST_CASE("span") {
    const auto v = CandidateSet::from_subspace(v1234());
    const auto same = span(v);
    CHECK(same.size() == 8);
    std::mt19937_64 rng(2);
    for (int k = 0; k < 5; ++k) {
        const auto w = random_graph(rng);
        const auto shifted = v.translate(w);
        const auto s = span(shifted);
        CHECK(s.size() == 16);
        CHECK(is_useful(shifted));
        CHECK(is_useful(s));
        CHECK(verify_useful_span(shifted, random_graph(rng)).ok());
    }
}

TEST_CASE("closure property") {
    CHECK(closure_holds(iset_weight_one_two()));
    CHECK(closure_holds(0xfffe));
    CHECK_FALSE(closure_holds(0));
    ISet expected = 0;
    for (unsigned x : {1u, 2u, 4u, 8u, 3u, 5u, 6u, 9u, 10u, 12u}) expected |= static_cast<ISet>(1u << x);
    CHECK(iset_weight_one_two() == expected);
}

TEST_CASE("I-set classification, fast and slow paths") {
    const auto direct = classify_isets_direct(2);
    const auto orbit = classify_isets_orbit();
    CHECK(direct.scanned == 32768);
    CHECK(direct.closure_sets == orbit.closure_sets);
    CHECK(direct.classes == orbit.classes);
    const auto i0 = iset_weight_one_two();
    const auto at = std::lower_bound(direct.closure_sets.begin(), direct.closure_sets.end(), i0);
    REQUIRE(at != direct.closure_sets.end());
    REQUIRE(*at == i0);
    CHECK(direct.classes[at - direct.closure_sets.begin()] == ISetClass::equivalent_to_i0);
    for (auto c : direct.classes) CHECK(c != ISetClass::neither);
    const auto cert = classify_isets(2);
    CHECK(cert.ok());
    CHECK(cert.counters["scanned"] == 32768);
}

TEST_CASE("apply_map moves I0 to an equivalent set") {
    const auto maps = gf2::enumerate_regular(4);
    const auto i0 = iset_weight_one_two();
    for (std::size_t k = 0; k < maps.size(); k += 997) {
        const auto image = apply_map(maps[k], i0);
        CHECK(std::popcount(image) == std::popcount(i0));
        CHECK(closure_holds(image));
    }
}

TEST_CASE("useful coset cap") {
    const auto v = CandidateSet::from_subspace(v1234());
    const auto tri = FamilySpec::triangulumvirate(8, Triangle(0, 1, 2), EdgeSet::from_edges(8, {{0, 1}}));
    UsefulCapOptions opts;
    opts.samples = 5000;
    const auto cert = coset_cap_for_useful(v, tri, opts);
    CHECK(cert.ok());
    CHECK(cert.counters["cap"] == 1);

    const auto big = span(v.translate(EdgeSet::from_edges(8, {{0, 1}})));
    const auto cert2 = coset_cap_for_useful(big, tri, opts);
    CHECK(cert2.ok());
    CHECK(cert2.counters["cap"] == 2);

    // A whole translate of V is not agreeing and exceeds the cap.
    const auto bad = coset_cap_for_useful(v, FamilySpec::explicit_list(8, v.translate(EdgeSet::from_edges(8, {{2, 3}})).members()), opts);
    CHECK(bad.status == Status::falsified);
}
