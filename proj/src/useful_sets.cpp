#include "cocube/useful_sets.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <random>
#include <set>
#include <stdexcept>

#include "cocube/parallel.hpp"

namespace cocube {

namespace {

bool triangle_free_agreement(const EdgeSet& a, const EdgeSet& b) { return !has_triangle(agree(a, b)); }

constexpr ISet kNonzero = 0xFFFE;

// The nonzero part of each 3-dim subspace of Z_2^4, i.e. of each hyperplane s-perp.
std::vector<ISet> hyperplane_masks() {
    std::vector<ISet> out;
    for (unsigned s = 1; s < 16; ++s) {
        ISet mask = 0;
        for (unsigned x = 1; x < 16; ++x) {
            if (gf2::dot(s, x) == 0) mask |= static_cast<ISet>(1u << x);
        }
        out.push_back(mask);
    }
    return out;
}

bool contains_hyperplane(ISet i, const std::vector<ISet>& hyperplanes) {
    return std::any_of(hyperplanes.begin(), hyperplanes.end(), [&](ISet h) { return (h & i) == h; });
}

// Any three independent x, y, z in I whose whole span (minus 0) lies in I.
bool contains_subspace_by_triples(ISet i) {
    for (unsigned x = 1; x < 16; ++x) {
        if (!((i >> x) & 1u)) continue;
        for (unsigned y = x + 1; y < 16; ++y) {
            if (!((i >> y) & 1u)) continue;
            for (unsigned z = y + 1; z < 16; ++z) {
                if (!((i >> z) & 1u) || gf2::rank_of({x, y, z}) != 3) continue;
                bool inside = true;
                for (unsigned c = 1; c < 8 && inside; ++c) {
                    const unsigned v = ((c & 1u) ? x : 0u) ^ ((c & 2u) ? y : 0u) ^ ((c & 4u) ? z : 0u);
                    inside = (i >> v) & 1u;
                }
                if (inside) return true;
            }
        }
    }
    return false;
}

std::vector<ISet> closure_sets() {
    std::vector<ISet> out;
    for (unsigned bits = 0; bits < (1u << 15); ++bits) {
        const ISet i = static_cast<ISet>(bits << 1);
        if (closure_holds(i)) out.push_back(i);
    }
    return out;
}

}  // namespace

CandidateSet::CandidateSet(unsigned n, std::vector<EdgeSet> members) : n_(n), members_(std::move(members)) {
    const auto size = members_.size();
    if (size < 8 || !std::has_single_bit(size)) {
        throw std::invalid_argument("CandidateSet: size must be a power of two >= 8, got " + std::to_string(size));
    }
    for (const auto& g : members_) {
        if (g.n() != n_) throw std::invalid_argument("CandidateSet: vertex count mismatch");
    }
    auto sorted = members_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("CandidateSet: members must be distinct");
    }
}

CandidateSet CandidateSet::from_subspace(const Subspace& s) {
    if (s.degenerate()) throw std::invalid_argument("CandidateSet: degenerate subspace has repeated members");
    return CandidateSet(s.n(), s.members());
}

unsigned CandidateSet::log_size() const noexcept { return static_cast<unsigned>(std::countr_zero(members_.size())); }

CandidateSet CandidateSet::translate(const EdgeSet& w) const {
    std::vector<EdgeSet> out;
    for (const auto& g : members_) out.push_back(g ^ w);
    return CandidateSet(n_, std::move(out));
}

bool is_useful(const CandidateSet& cs) {
    const auto& v = cs.members();
    const std::size_t size = v.size();
    const unsigned m = cs.log_size();
    if (m > 4) throw std::domain_error("is_useful: only sets of size 8 or 16 are supported");
    // good[a][b]: the agreement of members a and b is triangle-free.
    std::vector<std::vector<char>> good(size, std::vector<char>(size, 0));
    for (std::size_t a = 0; a < size; ++a) {
        for (std::size_t b = a + 1; b < size; ++b) good[a][b] = good[b][a] = triangle_free_agreement(v[a], v[b]);
    }
    if (m == 3) {
        for (std::size_t a = 0; a < size; ++a) {
            for (std::size_t b = a + 1; b < size; ++b) {
                if (!good[a][b]) return false;
            }
        }
        return true;
    }
    for (std::size_t a = 0; a < size; ++a) {
        for (std::size_t b = a + 1; b < size; ++b) {
            for (std::size_t c = b + 1; c < size; ++c) {
                if (!good[a][b] && !good[a][c] && !good[b][c]) return false;
            }
        }
    }
    return true;
}

CandidateSet span(const CandidateSet& cs) {
    std::set<EdgeSet> closed{EdgeSet(cs.n())};
    for (const auto& g : cs.members()) {
        std::vector<EdgeSet> added;
        for (const auto& h : closed) added.push_back(h ^ g);
        closed.insert(added.begin(), added.end());
    }
    return CandidateSet(cs.n(), std::vector<EdgeSet>(closed.begin(), closed.end()));
}

ISet iset_weight_one_two() {
    ISet i = 0;
    for (unsigned x = 1; x < 16; ++x) {
        const int w = std::popcount(x);
        if (w == 1 || w == 2) i |= static_cast<ISet>(1u << x);
    }
    return i;
}

bool closure_holds(ISet i) {
    const ISet outside = static_cast<ISet>(~i & kNonzero);
    for (unsigned x = 1; x < 16; ++x) {
        if (!((outside >> x) & 1u)) continue;
        for (unsigned y = x + 1; y < 16; ++y) {
            if (((outside >> y) & 1u) && !((i >> (x ^ y)) & 1u)) return false;
        }
    }
    return true;
}

ISet apply_map(const gf2::GF2Map& map, ISet i) {
    ISet out = 0;
    for (unsigned x = 0; x < 16; ++x) {
        if ((i >> x) & 1u) out |= static_cast<ISet>(1u << map.apply(x));
    }
    return out;
}

ISetClassification classify_isets_direct(unsigned workers) {
    ISetClassification out;
    out.scanned = 1u << 15;
    out.closure_sets = closure_sets();
    const auto hyperplanes = hyperplane_masks();
    const auto maps = gf2::enumerate_regular(4);
    const ISet i0 = iset_weight_one_two();
    out.classes.assign(out.closure_sets.size(), ISetClass::neither);
    parallel_for(out.closure_sets.size(), workers, [&](std::size_t k) {
        const ISet i = out.closure_sets[k];
        if (contains_hyperplane(i, hyperplanes)) {
            out.classes[k] = ISetClass::contains_subspace;
            return;
        }
        for (const auto& l : maps) {
            if (apply_map(l, i0) == i) {
                out.classes[k] = ISetClass::equivalent_to_i0;
                return;
            }
        }
    });
    return out;
}

ISetClassification classify_isets_orbit() {
    ISetClassification out;
    out.scanned = 1u << 15;
    out.closure_sets = closure_sets();
    // Transvections e_i -> e_i + e_j generate GL(4,2).
    std::vector<gf2::GF2Map> generators;
    for (unsigned i = 0; i < 4; ++i) {
        for (unsigned j = 0; j < 4; ++j) {
            if (i == j) continue;
            std::vector<unsigned> images{1, 2, 4, 8};
            images[i] ^= 1u << j;
            generators.push_back(gf2::GF2Map::from_images(4, images));
        }
    }
    std::set<ISet> orbit{iset_weight_one_two()};
    std::deque<ISet> queue{iset_weight_one_two()};
    while (!queue.empty()) {
        const ISet cur = queue.front();
        queue.pop_front();
        for (const auto& g : generators) {
            const ISet next = apply_map(g, cur);
            if (orbit.insert(next).second) queue.push_back(next);
        }
    }
    for (const ISet i : out.closure_sets) {
        if (contains_subspace_by_triples(i)) {
            out.classes.push_back(ISetClass::contains_subspace);
        } else if (orbit.count(i)) {
            out.classes.push_back(ISetClass::equivalent_to_i0);
        } else {
            out.classes.push_back(ISetClass::neither);
        }
    }
    return out;
}

Certificate classify_isets(unsigned workers) {
    Stopwatch clock;
    auto cert = Certificate::begin("isets-classification");
    const auto direct = classify_isets_direct(workers);
    const auto orbit = classify_isets_orbit();
    cert.inputs["universe"] = "subsets of the 15 nonzero elements of Z_2^4";
    cert.inputs["i0"] = iset_weight_one_two();
    std::uint64_t with_subspace = 0;
    std::uint64_t like_i0 = 0;
    for (std::size_t k = 0; k < direct.closure_sets.size(); ++k) {
        const ISet i = direct.closure_sets[k];
        if (direct.classes[k] == ISetClass::neither) cert.falsify({{"iset", i}, {"reason", "unclassified"}});
        with_subspace += direct.classes[k] == ISetClass::contains_subspace ? 1 : 0;
        like_i0 += direct.classes[k] == ISetClass::equivalent_to_i0 ? 1 : 0;
    }
    if (orbit.closure_sets != direct.closure_sets || orbit.classes != direct.classes) {
        for (std::size_t k = 0; k < std::min(orbit.classes.size(), direct.classes.size()); ++k) {
            if (orbit.classes[k] != direct.classes[k]) {
                cert.falsify({{"iset", direct.closure_sets[k]}, {"reason", "fast and slow classification disagree"}});
            }
        }
        if (orbit.closure_sets.size() != direct.closure_sets.size()) {
            cert.falsify({{"reason", "closure set lists differ in length"}});
        }
    }
    cert.counters["scanned"] = direct.scanned;
    cert.counters["closure_sets"] = direct.closure_sets.size();
    cert.counters["contain_3dim_subspace"] = with_subspace;
    cert.counters["equivalent_to_i0"] = like_i0;
    cert.conclude();
    cert.elapsed_ms = clock.elapsed_ms();
    return cert;
}

Certificate coset_cap_for_useful(const CandidateSet& cs, const FamilySpec& f, const UsefulCapOptions& opts) {
    Stopwatch clock;
    if (f.n() != cs.n()) throw std::invalid_argument("coset_cap_for_useful: vertex count mismatch");
    if (!is_useful(cs)) throw std::invalid_argument("coset_cap_for_useful: candidate set is not useful for triangles");
    auto cert = Certificate::begin("useful-coset-cap");
    const unsigned cap = 1u << (cs.log_size() - 3);
    cert.inputs["family"] = f.describe();
    cert.inputs["set_size"] = cs.size();
    cert.inputs["samples"] = opts.samples;
    cert.seed = opts.seed;

    std::vector<EdgeSet> shifts;
    std::mt19937_64 rng(opts.seed);
    const EdgeSet all = EdgeSet::complete(cs.n());
    for (std::uint64_t k = 0; k < opts.samples; ++k) {
        const auto lo = rng() & all.low_word();
        const auto hi = rng() & all.high_word();
        shifts.push_back(EdgeSet::from_words(cs.n(), lo, hi));
    }
    if (const auto* e = std::get_if<ExplicitFamily>(&f.kind())) {
        for (const auto& h : e->members) {
            for (const auto& c : cs.members()) shifts.push_back(h ^ c);
        }
    }
    unsigned max_count = 0;
    for (const auto& g : shifts) {
        unsigned count = 0;
        for (const auto& c : cs.members()) count += family_contains(f, g ^ c) ? 1 : 0;
        max_count = std::max(max_count, count);
        if (count > cap) cert.falsify({{"shift", g.canonical()}, {"members_in_family", count}, {"cap", cap}});
    }
    cert.counters["translates_checked"] = shifts.size();
    cert.counters["max_members_in_translate"] = max_count;
    cert.counters["cap"] = cap;
    cert.conclude();
    cert.elapsed_ms = clock.elapsed_ms();
    return cert;
}

Certificate verify_useful_span(const CandidateSet& cs, const EdgeSet& w) {
    Stopwatch clock;
    auto cert = Certificate::begin("useful-span");
    cert.inputs["set_size"] = cs.size();
    cert.inputs["translate"] = w.canonical();
    const bool base = is_useful(cs);
    const bool shifted = is_useful(cs.translate(w));
    const auto spanned = span(cs);
    const bool spanned_ok = spanned.log_size() <= 4 ? is_useful(spanned) : false;
    cert.counters["useful"] = base;
    cert.counters["translate_useful"] = shifted;
    cert.counters["span_size"] = spanned.size();
    cert.counters["span_useful"] = spanned_ok;
    if (!base) cert.falsify({{"reason", "input set is not useful"}});
    if (shifted != base) cert.falsify({{"reason", "usefulness changed under translation"}});
    if (base && !spanned_ok) cert.falsify({{"reason", "span of a useful set is not useful"}});
    cert.conclude();
    cert.elapsed_ms = clock.elapsed_ms();
    return cert;
}

}  // namespace cocube
