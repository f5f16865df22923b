#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <random>
#include <set>

#include "cocube/coloring_search.hpp"
#include "cocube/useful_sets.hpp"

using namespace cocube;

namespace {

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("cocube_test_" + name + ".json");
}

}  // namespace

TEST_CASE("problem construction") {
    const auto n9 = n9_problem();
    CHECK(n9.n() == 9);
    CHECK(n9.m() == 4);
    CHECK(n9.constraints().size() == 10);
    CHECK(n9.symmetries().size() == 120);
    CHECK(n9.symmetries().front() == std::vector<std::uint8_t>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15});
    CHECK(n8_control_problem().symmetries().size() == 168);
    CHECK(n9.edge_order().size() == 36);
    CHECK(n9.edge_order()[0] == Edge{0, 1});
    CHECK(n9.edge_order()[1] == Edge{0, 2});
    CHECK(n9.edge_order()[2] == Edge{1, 2});
    CHECK_THROWS((void)ColoringProblem(9, 4, {16}));
    CHECK_THROWS((void)ColoringProblem(13, 4, {1}));
}

TEST_CASE("symmetries preserve the constraint set under transposition") {
    const auto p = n9_problem();
    const ISet i0 = iset_weight_one_two();
    for (const auto& table : p.symmetries()) {
        std::vector<unsigned> values(table.begin(), table.end());
        const auto lt = gf2::GF2Map::from_table(4, values).transpose();
        CHECK(apply_map(lt, i0) == i0);
    }
}

TEST_CASE("allowed table matches the triangle rule") {
    const auto p = n9_problem();
    for (unsigned x = 0; x < 16; ++x) {
        for (unsigned y = 0; y < 16; ++y) {
            for (unsigned z = 0; z < 16; ++z) {
                bool ok = true;
                for (unsigned s : p.constraints()) {
                    if (gf2::dot(x, s) == 0 && gf2::dot(y, s) == 0 && gf2::dot(z, s) == 0) ok = false;
                }
                REQUIRE(p.triangle_ok(x, y, z) == ok);
            }
        }
    }
}

TEST_CASE("n8 control: first triangle-regular colouring need not be co-cube") {
    ColoringSearchOptions opts;
    opts.stop_at_first = true;
    const auto raw = coloring_search(n8_control_problem(), opts);
    REQUIRE(raw.found);
    CHECK(n8_control_problem().valid(*raw.coloring));
    CHECK(check_triangle_regularity(*raw.coloring).ok());

    const auto out = n8_control_search({});
    REQUIRE(out.found);
    CHECK(out.rejected > 0);
    CHECK(verify_cocube(subspace_from_coloring(*out.coloring)).ok());
    const auto cert = coloring_certificate(n8_control_problem(), out);
    CHECK(cert.ok());
    CHECK(cert.claim_id == "n8-control");
}

TEST_CASE("solutions do not depend on worker count") {
    ColoringSearchOptions one;
    ColoringSearchOptions three;
    three.workers = 3;
    const auto a = n8_control_search(one);
    const auto b = n8_control_search(three);
    CHECK(a.coloring == b.coloring);
    CHECK(a.branches == b.branches);
}

TEST_CASE("symmetry breaking agrees with the unreduced search on small instances") {
    std::mt19937_64 rng(5);
    int sat = 0;
    int unsat = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const unsigned n = 5 + static_cast<unsigned>(rng() % 2);
        std::vector<unsigned> s;
        for (unsigned x = 1; x < 16; ++x) {
            if (rng() % 3 == 0) s.push_back(x);
        }
        if (s.empty()) continue;
        const ColoringProblem p(n, 4, s);
        ColoringSearchOptions reduced;
        reduced.stop_at_first = true;
        ColoringSearchOptions full = reduced;
        full.symmetry_breaking = false;
        const auto a = coloring_search(p, reduced);
        const auto b = coloring_search(p, full);
        REQUIRE(a.found == b.found);
        if (a.found) CHECK(p.valid(*a.coloring));
        (a.found ? sat : unsat) += 1;
    }
    MESSAGE("sat " << sat << ", unsat " << unsat);
    // K9 over Z_2^3 with every constraint is UNSAT (n <= 8), both ways.
    const ColoringProblem k9(9, 3, {1, 2, 3, 4, 5, 6, 7});
    CHECK_FALSE(coloring_search(k9, {}).found);
    ColoringSearchOptions k9_full;
    k9_full.symmetry_breaking = false;
    const auto unreduced = coloring_search(k9, k9_full);
    CHECK(unreduced.complete);
    CHECK_FALSE(unreduced.found);
}

namespace {

using ColorSet = std::set<std::vector<std::uint8_t>>;

ColorSet all_solutions(const ColoringProblem& p, bool symmetry) {
    ColorSet out;
    std::mutex mu;
    ColoringSearchOptions o;
    o.symmetry_breaking = symmetry;
    o.accept = [&](const EdgeColoring& c) {
        std::lock_guard lock(mu);
        out.insert(c.colors());
        return false;
    };
    (void)coloring_search(p, o);
    return out;
}

}  // namespace

TEST_CASE("reduced solutions reach every solution under the symmetry group") {
    // Closing the canonical solutions under vertex relabelling x linear maps
    // must give exactly the full solution set.
    std::vector<unsigned> i0;
    for (unsigned x = 1; x < 16; ++x) {
        if ((iset_weight_one_two() >> x) & 1) i0.push_back(x);
    }
    const std::vector<ColoringProblem> cases{ColoringProblem(4, 3, {1, 2, 3, 4, 5, 6, 7}), ColoringProblem(4, 4, i0)};
    for (const auto& p : cases) {
        const auto reduced = all_solutions(p, true);
        const auto full = all_solutions(p, false);
        REQUIRE(!full.empty());
        CHECK(reduced.size() < full.size());
        ColorSet closure;
        std::vector<unsigned> perm(p.n());
        for (const auto& c : reduced) {
            std::iota(perm.begin(), perm.end(), 0u);
            do {
                for (const auto& l : p.symmetries()) {
                    std::vector<std::uint8_t> d(c.size());
                    for (unsigned j = 1; j < p.n(); ++j) {
                        for (unsigned i = 0; i < j; ++i) d[edge_slot(perm[i], perm[j])] = l[c[edge_slot(i, j)]];
                    }
                    closure.insert(std::move(d));
                }
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        CHECK(closure == full);
    }
}

TEST_CASE("n9 search is UNSAT and resumes to the same totals") {
    const auto path = temp_path("n9");
    std::filesystem::remove(path);
    ColoringSearchOptions opts;
    opts.workers = 2;
    const auto full = n9_search(opts);
    CHECK(full.complete);
    CHECK_FALSE(full.found);
    CHECK(coloring_certificate(n9_problem(), full).ok());

    ColoringSearchOptions part = opts;
    part.checkpoint = path;
    part.max_branches = full.branches / 3;
    const auto first = n9_search(part);
    CHECK_FALSE(first.complete);
    CHECK(coloring_certificate(n9_problem(), first).status == Status::error);
    REQUIRE(std::filesystem::exists(path));

    ColoringSearchOptions rest = opts;
    rest.checkpoint = path;
    rest.resume = true;
    const auto second = n9_search(rest);
    CHECK(second.complete);
    CHECK_FALSE(second.found);
    CHECK(second.branches_resumed == first.branches_done);
    CHECK(second.nodes == full.nodes);
    std::filesystem::remove(path);
}

TEST_CASE("corrupt or mismatched checkpoints are rejected") {
    const auto path = temp_path("corrupt");
    {
        std::ofstream out(path);
        out << "{ not json";
    }
    ColoringSearchOptions opts;
    opts.checkpoint = path;
    opts.resume = true;
    CHECK_THROWS_AS((void)n8_control_search(opts), CheckpointError);

    // A checkpoint written by the K8 run does not fit the K9 run.
    std::filesystem::remove(path);
    ColoringSearchOptions write;
    write.checkpoint = path;
    (void)n8_control_search(write);
    CHECK_THROWS_AS((void)n9_search(opts), CheckpointError);

    // Out-of-range branch index.
    std::ifstream in(path);
    Json j;
    in >> j;
    in.close();
    j["branches"].push_back({{"index", 100000}, {"nodes", 1}, {"rejected", 0}, {"solution", nullptr}});
    std::ofstream(path) << j.dump();
    CHECK_THROWS_AS((void)n8_control_search(opts), CheckpointError);
    std::filesystem::remove(path);
}
