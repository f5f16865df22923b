#include "cocube/families.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "cocube/parallel.hpp"

namespace cocube {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_n(const FamilySpec& f, const EdgeSet& g) {
    if (f.n() != g.n()) throw std::invalid_argument("family: vertex count mismatch");
}

EdgeSet random_graph(unsigned n, std::mt19937_64& rng) {
    const EdgeSet all = EdgeSet::complete(n);
    const std::uint64_t lo = rng() & all.low_word();
    const std::uint64_t hi = rng() & all.high_word();
    return EdgeSet::from_words(n, lo, hi);
}

unsigned cap_for(const Subspace& s) {
    if (s.rank() < 3) throw std::invalid_argument("coset cap: subspace must have rank >= 3");
    return 1u << (s.rank() - 3);
}

struct CosetResult {
    unsigned count = 0;
    std::optional<Json> violation;
    std::optional<Json> bad_agreement;
};

CosetResult inspect_coset(const FamilySpec& f, const Subspace& s, const EdgeSet& g, unsigned cap) {
    CosetResult r;
    const bool cube_expected = s.n() == 8 && s.dim() == 3;
    std::vector<EdgeSet> hits;
    for (const auto& v : s.members()) {
        const EdgeSet h = g ^ v;
        if (family_contains(f, h)) hits.push_back(h);
    }
    r.count = static_cast<unsigned>(hits.size());
    for (std::size_t a = 0; a < s.size() && !r.bad_agreement; ++a) {
        for (std::size_t b = a + 1; b < s.size(); ++b) {
            const EdgeSet agreement = agree(g ^ s.member(a), g ^ s.member(b));
            const bool ok = cube_expected ? is_cube(agreement) : is_bipartite(agreement);
            if (!ok) {
                r.bad_agreement = Json{{"coset", coset_of(g, s).canonical()}, {"a", a}, {"b", b},
                                       {"agreement", agreement.canonical()}};
                break;
            }
        }
    }
    if (hits.size() > cap) {
        Json members = Json::array();
        for (const auto& h : hits) members.push_back(h.canonical());
        r.violation = Json{{"coset", coset_of(g, s).canonical()}, {"members_in_family", members}, {"cap", cap}};
    }
    return r;
}

void record(Certificate& cert, const std::vector<CosetResult>& results, unsigned cap) {
    unsigned max_count = 0;
    std::uint64_t saturated = 0;
    std::uint64_t bad_agreements = 0;
    for (const auto& r : results) {
        max_count = std::max(max_count, r.count);
        saturated += r.count == cap ? 1 : 0;
        if (r.violation) cert.falsify(*r.violation);
        if (r.bad_agreement) {
            ++bad_agreements;
            cert.falsify(*r.bad_agreement);
        }
    }
    cert.counters["cosets_checked"] = results.size();
    cert.counters["max_members_in_coset"] = max_count;
    cert.counters["cosets_at_cap"] = saturated;
    cert.counters["non_bipartite_same_coset_agreements"] = bad_agreements;
    cert.counters["cap"] = cap;
}

}  // namespace

FamilySpec FamilySpec::junta(unsigned n, Triangle t) {
    if (t.c >= n) throw std::invalid_argument("junta: triangle outside K_n");
    return FamilySpec(n, Junta{t});
}

FamilySpec FamilySpec::triangulumvirate(unsigned n, Triangle t, EdgeSet kernel) {
    if (t.c >= n || kernel.n() != n) throw std::invalid_argument("triangulumvirate: vertex count mismatch");
    if (!kernel.subset_of(t.edges(n))) throw std::invalid_argument("triangulumvirate: kernel must be a subset of T");
    return FamilySpec(n, Triangulumvirate{t, kernel});
}

FamilySpec FamilySpec::explicit_list(unsigned n, std::vector<EdgeSet> members) {
    for (const auto& g : members) {
        if (g.n() != n) throw std::invalid_argument("explicit family: vertex count mismatch");
    }
    std::sort(members.begin(), members.end());
    if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
        throw std::invalid_argument("explicit family: duplicate member");
    }
    return FamilySpec(n, ExplicitFamily{std::move(members)});
}

std::string FamilySpec::describe() const {
    return std::visit(Overloaded{
                          [&](const Junta& j) { return "junta" + j.triangle.to_string(); },
                          [&](const Triangulumvirate& t) {
                              return "triangulumvirate" + t.triangle.to_string() + "/" + t.kernel.canonical();
                          },
                          [&](const ExplicitFamily& e) { return "explicit[" + std::to_string(e.members.size()) + "]"; },
                      },
                      kind_);
}

std::string to_string(PairMode mode) {
    std::string s = mode.structure == Structure::triangle ? "triangle" : "non-bipartite";
    return s + (mode.relation == Relation::intersecting ? "-intersecting" : "-agreeing");
}

bool family_contains(const FamilySpec& f, const EdgeSet& g) {
    check_n(f, g);
    return std::visit(Overloaded{
                          [&](const Junta& j) { return j.triangle.edges(f.n()).subset_of(g); },
                          [&](const Triangulumvirate& t) { return (g & t.triangle.edges(f.n())) == t.kernel; },
                          [&](const ExplicitFamily& e) {
                              return std::binary_search(e.members.begin(), e.members.end(), g);
                          },
                      },
                      f.kind());
}

std::uint64_t family_size(const FamilySpec& f) {
    if (const auto* e = std::get_if<ExplicitFamily>(&f.kind())) return e->members.size();
    return std::uint64_t{1} << (slot_count(f.n()) - 3);
}

std::uint64_t family_size_by_enumeration(const FamilySpec& f) {
    const unsigned slots = slot_count(f.n());
    if (slots > 24) throw std::invalid_argument("family_size_by_enumeration: too many edges");
    std::uint64_t count = 0;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << slots); ++bits) {
        count += family_contains(f, EdgeSet::from_words(f.n(), bits)) ? 1 : 0;
    }
    return count;
}

bool structure_holds(const EdgeSet& g, Structure s) noexcept {
    return s == Structure::triangle ? has_triangle(g) : !is_bipartite(g);
}

bool pair_ok(const EdgeSet& g1, const EdgeSet& g2, PairMode mode) {
    const EdgeSet joint = mode.relation == Relation::intersecting ? intersect(g1, g2) : agree(g1, g2);
    return structure_holds(joint, mode.structure);
}

EdgeSet coset_of(const EdgeSet& g, const Subspace& s) {
    if (g.n() != s.n()) throw std::invalid_argument("coset_of: vertex count mismatch");
    EdgeSet best = g ^ s.member(0);
    for (const auto& v : s.members()) best = std::min(best, g ^ v);
    return best;
}

Certificate verify_coset_cap(const FamilySpec& f, const Subspace& s, const CosetCapOptions& opts) {
    Stopwatch clock;
    if (f.n() != s.n()) throw std::invalid_argument("verify_coset_cap: vertex count mismatch");
    auto cert = Certificate::begin("thm-main-coset-cap");
    const unsigned cap = cap_for(s);
    cert.inputs["family"] = f.describe();
    cert.inputs["samples"] = opts.samples;
    cert.inputs["n"] = f.n();
    cert.inputs["dim"] = s.dim();
    cert.seed = opts.seed;

    std::vector<EdgeSet> probes;
    std::mt19937_64 rng(opts.seed);
    probes.reserve(opts.samples);
    for (std::uint64_t k = 0; k < opts.samples; ++k) probes.push_back(random_graph(f.n(), rng));
    if (const auto* e = std::get_if<ExplicitFamily>(&f.kind())) {
        std::vector<EdgeSet> cosets;
        for (const auto& g : e->members) cosets.push_back(coset_of(g, s));
        std::sort(cosets.begin(), cosets.end());
        cosets.erase(std::unique(cosets.begin(), cosets.end()), cosets.end());
        cert.counters["member_cosets"] = cosets.size();
        probes.insert(probes.end(), cosets.begin(), cosets.end());
    }

    std::vector<CosetResult> results(probes.size());
    parallel_for(probes.size(), opts.workers, [&](std::size_t k) { results[k] = inspect_coset(f, s, probes[k], cap); });
    record(cert, results, cap);
    cert.conclude();
    cert.elapsed_ms = clock.elapsed_ms();
    return cert;
}

Certificate verify_coset_cap_exhaustive(const FamilySpec& f, const Subspace& s) {
    Stopwatch clock;
    const unsigned slots = slot_count(f.n());
    if (slots > 24) throw std::invalid_argument("verify_coset_cap_exhaustive: too many edges");
    if (f.n() != s.n()) throw std::invalid_argument("verify_coset_cap_exhaustive: vertex count mismatch");
    auto cert = Certificate::begin("thm-main-coset-cap");
    const unsigned cap = cap_for(s);
    cert.inputs["family"] = f.describe();
    cert.inputs["n"] = f.n();
    cert.inputs["dim"] = s.dim();
    cert.inputs["exhaustive"] = true;
    std::vector<CosetResult> results;
    std::uint64_t covered = 0;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << slots); ++bits) {
        const EdgeSet g = EdgeSet::from_words(f.n(), bits);
        if (coset_of(g, s) != g) continue;
        results.push_back(inspect_coset(f, s, g, cap));
        covered += results.back().count;
    }
    record(cert, results, cap);
    cert.counters["family_members_covered"] = covered;
    cert.conclude();
    cert.elapsed_ms = clock.elapsed_ms();
    return cert;
}

Subspace k4_matching_subspace() {
    return Subspace::from_basis({
        EdgeSet::from_edges(4, {{0, 1}, {2, 3}}),
        EdgeSet::from_edges(4, {{0, 2}, {1, 3}}),
        EdgeSet::from_edges(4, {{0, 3}, {1, 2}}),
    });
}

}  // namespace cocube
