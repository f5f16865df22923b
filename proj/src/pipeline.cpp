#include "cocube/pipeline.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "cocube/coloring_search.hpp"
#include "cocube/cube_subspace.hpp"
#include "cocube/families.hpp"
#include "cocube/graphs.hpp"
#include "cocube/parallel.hpp"
#include "cocube/uniqueness_search.hpp"
#include "cocube/useful_sets.hpp"

namespace cocube {

namespace {

using gf2::BilinearForm;

// Reference list of the Fano permutations. The second entry circulates as the
// misprint (174652), which is not Fano; the list is closed under inversion and
// (174653) is the inverse of (135647).
constexpr std::array<const char*, 8> kReferenceFano{
    "(135647)", "(174653)", "(153627)", "(172635)", "(236547)", "(274563)", "(13)(26)(45)", "(15)(23)(46)",
};

constexpr const char* kMisprintedFano = "(174652)";

constexpr std::array<unsigned, 7> kExampleLineSums{4, 6, 2, 5, 1, 3, 7};

Perm8::Table example_table() { return Perm8::parse_cycles("(1234)").images(); }

std::string table_string(const Perm8::Table& t) {
    std::string s;
    for (auto v : t) s += static_cast<char>('0' + v);
    return s;
}

Json form_json(const BilinearForm& form) { return form.describe(); }

// Runs body on a fresh certificate and turns an escaping exception into Status::error.
Certificate guarded(std::string_view id, const std::function<void(Certificate&)>& body) {
    Stopwatch clock;
    auto cert = Certificate::begin(id);
    try {
        body(cert);
        if (cert.status != Status::falsified) cert.conclude();
    } catch (const std::exception& e) {
        cert.status = Status::error;
        cert.counters["exception"] = e.what();
    }
    cert.elapsed_ms = clock.elapsed_ms();
    return cert;
}

std::uint64_t gl_order(unsigned m) {
    std::uint64_t order = 1;
    for (unsigned i = 0; i < m; ++i) order *= (std::uint64_t{1} << m) - (std::uint64_t{1} << i);
    return order;
}

// Line sums over x-perp minus zero for x = 1..7, on a raw table.
std::array<unsigned, 7> line_sums(const Perm8::Table& table, const BilinearForm& form) {
    std::array<unsigned, 7> sums{};
    for (unsigned x = 1; x < 8; ++x) {
        const auto mask = gf2::orth_mask(x, form);
        unsigned s = 0;
        for (unsigned y = 1; y < 8; ++y) {
            if ((mask >> y) & 1u) s ^= table[y];
        }
        sums[x - 1] = s;
    }
    return sums;
}

BilinearForm gram_from_pairs(const std::array<unsigned, 3>& partner, int dropped) {
    std::array<std::uint8_t, gf2::kMaxDim> rows{};
    for (unsigned t = 0; t < 3; ++t) {
        if (static_cast<int>(t) == dropped) continue;
        rows[t] = static_cast<std::uint8_t>(1u << partner[t]);
    }
    return BilinearForm::from_rows(3, rows);
}

}  // namespace

Sabotage Sabotage::none() { return Sabotage{}; }

Sabotage Sabotage::table_entry(unsigned index, unsigned value) {
    const auto table = example_table();
    if (index > 7 || value > 7) throw std::invalid_argument("sabotage: entry out of range");
    if (table[index] == value) throw std::invalid_argument("sabotage: entry unchanged");
    Sabotage s;
    s.name = "entry:" + std::to_string(index) + "=" + std::to_string(value);
    s.entry = std::pair{index, value};
    return s;
}

Sabotage Sabotage::inner_product(std::string_view variant) {
    Sabotage s;
    s.name = "ip:" + std::string(variant);
    if (variant == "drop0" || variant == "drop1" || variant == "drop2") {
        s.form = gram_from_pairs({0, 1, 2}, variant.back() - '0');
    } else if (variant == "reverse") {
        s.form = gram_from_pairs({2, 1, 0}, -1);
    } else if (variant == "shift") {
        s.form = gram_from_pairs({1, 2, 0}, -1);
    } else {
        throw std::invalid_argument("sabotage: unknown inner-product variant '" + std::string(variant) + "'");
    }
    return s;
}

Sabotage Sabotage::parse(std::string_view text) {
    if (text == "none") return none();
    if (text.starts_with("ip:")) return inner_product(text.substr(3));
    if (text.starts_with("entry:")) {
        const auto body = text.substr(6);
        const auto eq = body.find('=');
        unsigned index = 0;
        unsigned value = 0;
        if (eq == std::string_view::npos ||
            std::from_chars(body.data(), body.data() + eq, index).ptr != body.data() + eq ||
            std::from_chars(body.data() + eq + 1, body.data() + body.size(), value).ptr != body.data() + body.size()) {
            throw std::invalid_argument("sabotage: expected entry:I=V, got '" + std::string(text) + "'");
        }
        return table_entry(index, value);
    }
    throw std::invalid_argument("sabotage: expected none, entry:I=V or ip:VARIANT");
}

std::vector<Sabotage> Sabotage::all() {
    std::vector<Sabotage> out;
    const auto table = example_table();
    for (unsigned i = 0; i < 8; ++i) {
        for (unsigned v = 0; v < 8; ++v) {
            if (v != table[i]) out.push_back(table_entry(i, v));
        }
    }
    for (const auto* variant : {"drop0", "drop1", "drop2", "reverse", "shift"}) out.push_back(inner_product(variant));
    return out;
}

Perm8::Table Sabotage::apply(Perm8::Table table) const {
    if (entry) table[entry->first] = static_cast<std::uint8_t>(entry->second);
    return table;
}

std::vector<Perm8> reference_fano() {
    std::vector<Perm8> out;
    for (const auto* text : kReferenceFano) out.push_back(Perm8::parse_cycles(text));
    std::sort(out.begin(), out.end());
    return out;
}

Certificate check_gf2_regular_count() {
    return guarded("gf2-regular-count", [](Certificate& cert) {
        for (unsigned m : {3u, 4u}) {
            const auto maps = gf2::enumerate_regular(m);
            const auto expected = gl_order(m);
            cert.counters["regular_" + std::to_string(m)] = maps.size();
            if (maps.size() != expected) {
                cert.falsify({{"dim", m}, {"count", maps.size()}, {"expected", expected}});
            }
            const auto id = gf2::GF2Map::identity(m);
            for (const auto& l : maps) {
                if (l.inverse().after(l) != id || l.after(l.inverse()) != id) {
                    cert.falsify({{"dim", m}, {"map", l.to_string()}, {"reason", "inverse does not compose to 1"}});
                }
            }
        }
    });
}

Certificate check_cube_recognition(std::uint64_t samples, std::uint64_t seed) {
    return guarded("cube-recognition", [&](Certificate& cert) {
        cert.seed = seed;
        cert.inputs["samples"] = samples;
        std::mt19937_64 rng(seed);
        const auto q3 = standard_cube();
        std::uint64_t cubes = 0;
        // Relabelled copies of Q3 must pass both tests.
        std::array<unsigned, 8> perm{};
        std::iota(perm.begin(), perm.end(), 0u);
        for (std::uint64_t k = 0; k < samples / 10 + 1; ++k) {
            std::shuffle(perm.begin(), perm.end(), rng);
            std::vector<Edge> edges;
            for (const auto& e : q3.edges()) edges.push_back({std::min(perm[e.u], perm[e.v]), std::max(perm[e.u], perm[e.v])});
            const auto g = EdgeSet::from_edges(8, edges);
            if (!is_cube(g) || !is_cube_by_isomorphism(g)) cert.falsify({{"relabelled_cube", g.canonical()}});
        }
        // Random 12-edge graphs: the two tests must agree.
        std::vector<unsigned> slots(slot_count(8));
        std::iota(slots.begin(), slots.end(), 0u);
        for (std::uint64_t k = 0; k < samples; ++k) {
            std::shuffle(slots.begin(), slots.end(), rng);
            EdgeSet g = EdgeSet::from_words(8, 0);
            for (unsigned t = 0; t < 12; ++t) {
                const auto e = slot_edge(slots[t]);
                g.set_edge(e.u, e.v, true);
            }
            const bool fast = is_cube(g);
            cubes += fast ? 1 : 0;
            if (fast != is_cube_by_isomorphism(g)) {
                cert.falsify({{"graph", g.canonical()}, {"fast", fast}});
            }
        }
        cert.counters["random_cubes"] = cubes;
    });
}

Certificate check_fano_count(const BilinearForm& form) {
    return guarded("lemma-fano-count", [&](Certificate& cert) {
        cert.inputs["form"] = form_json(form);
        const auto found = enumerate_fano(form);
        const auto from_basis = enumerate_fano_from_basis();
        const auto reference = reference_fano();
        cert.counters["fano"] = found.size();
        cert.counters["fano_from_basis"] = from_basis.size();
        Json listed = Json::array();
        for (const auto& p : found) listed.push_back(p.to_cycles());
        cert.counters["permutations"] = listed;
        if (found != reference) cert.falsify({{"reason", "enumeration differs from the reference list"}, {"found", listed}});
        if (from_basis != reference) cert.falsify({{"reason", "basis generator differs from the reference list"}});
        // The misprinted entry must stay out of the enumeration.
        const auto misprint = Perm8::parse_cycles(kMisprintedFano);
        cert.counters["misprint"] = {{"perm", kMisprintedFano},
                                     {"is_fano", is_fano(misprint, form)},
                                     {"signature", signature(misprint, form).to_string()}};
        if (std::binary_search(found.begin(), found.end(), misprint)) {
            cert.falsify({{"reason", "misprinted entry was enumerated"}, {"perm", kMisprintedFano}});
        }
    });
}

Certificate check_antilinear_count(const BilinearForm& form, unsigned workers) {
    return guarded("cor-antilinear-count", [&](Certificate& cert) {
        cert.inputs["form"] = form_json(form);
        const auto anti = enumerate_antilinear(workers);
        const auto fano = enumerate_fano(form);
        const auto maps = gf2::enumerate_regular(3);
        cert.counters["antilinear"] = anti.size();
        cert.counters["regular_maps"] = maps.size();
        cert.counters["fano"] = fano.size();
        if (anti.size() != 1344) cert.falsify({{"reason", "antilinear count"}, {"count", anti.size()}});
        if (maps.size() * fano.size() != anti.size()) {
            cert.falsify({{"reason", "count is not |GL(3,2)| * |Fano|"}, {"product", maps.size() * fano.size()}});
        }
        // Forward direction: every product is antilinear and products are distinct.
        std::set<Perm8> products;
        for (const auto& l : maps) {
            for (const auto& f : fano) {
                const auto p = compose(l, f);
                if (!is_antilinear(p)) cert.falsify({{"reason", "product not antilinear"}, {"perm", p.to_cycles()}});
                products.insert(p);
            }
        }
        cert.counters["distinct_products"] = products.size();
        if (products.size() != maps.size() * fano.size()) cert.falsify({{"reason", "products collide"}});
        if (!std::equal(products.begin(), products.end(), anti.begin(), anti.end())) {
            cert.falsify({{"reason", "products differ from the antilinear set"}});
        }
        // Backward direction: factorize recovers a Fano factor for each antilinear p.
        for (const auto& p : anti) {
            const auto fz = factorize(p, form);
            if (compose(fz.linear, fz.fano) != p || !std::binary_search(fano.begin(), fano.end(), fz.fano)) {
                cert.falsify({{"reason", "factorization"}, {"perm", p.to_cycles()}});
            }
        }
    });
}

Certificate check_antilinear_example(const Perm8::Table& table, const BilinearForm& form) {
    return guarded("lemma-antilinear-example", [&](Certificate& cert) {
        cert.inputs["table"] = table_string(table);
        cert.inputs["form"] = form_json(form);
        const auto sums = line_sums(table, form);
        cert.counters["line_sums"] = sums;
        if (!std::equal(sums.begin(), sums.end(), kExampleLineSums.begin())) {
            cert.falsify({{"reason", "line sums"}, {"sums", sums}, {"expected", kExampleLineSums}});
        }
        if (table[0] != 0) cert.falsify({{"reason", "0 is not fixed"}, {"image", table[0]}});
        const auto p = Perm8::from_images(table);
        if (!is_antilinear(p)) cert.falsify({{"reason", "not antilinear"}});
        const auto sig = signature(p, form);
        cert.counters["signature"] = {{"1", sig.apply(1)}, {"2", sig.apply(2)}, {"4", sig.apply(4)}};
        if (sig.apply(1) != 4 || sig.apply(2) != 6 || sig.apply(4) != 5) {
            cert.falsify({{"reason", "signature"}, {"signature", sig.to_string()}});
        }
    });
}

Certificate check_lemma_v(const Perm8::Table& table, const BilinearForm& form) {
    return guarded("lemma-V", [&](Certificate& cert) {
        cert.inputs["table"] = table_string(table);
        cert.inputs["form"] = form_json(form);
        EdgeColoring c(8, 3);
        for (unsigned j = 1; j < 8; ++j) {
            for (unsigned i = 0; i < j; ++i) c.set_color(i, j, table[i ^ j]);
        }
        const auto inner = verify_cocube(subspace_from_coloring(c, form));
        cert.counters = inner.counters;
        for (const auto& w : inner.witnesses) cert.falsify(w);
        if (inner.status == Status::error) cert.falsify({{"reason", "cube check could not run"}});
    });
}

Certificate check_lemma_v_all(const BilinearForm& form, unsigned workers) {
    return guarded("lemma-V", [&](Certificate& cert) {
        cert.inputs["permutations"] = "all antilinear";
        cert.inputs["form"] = form_json(form);
        const auto anti = enumerate_antilinear(workers);
        std::vector<Certificate> results(anti.size(), Certificate::begin("lemma-V"));
        parallel_for(anti.size(), workers, [&](std::size_t k) {
            results[k] = verify_cocube(subspace_from_coloring(coloring_from_perm(anti[k]), form));
        });
        std::uint64_t passed = 0;
        for (std::size_t k = 0; k < anti.size(); ++k) {
            if (results[k].ok()) {
                ++passed;
            } else {
                cert.falsify({{"perm", anti[k].to_cycles()}, {"status", to_string(results[k].status)},
                              {"witnesses", results[k].witnesses}});
            }
        }
        cert.counters["permutations"] = anti.size();
        cert.counters["passed"] = passed;
        cert.counters["members_checked"] = passed * 7;
        if (anti.size() != 1344) cert.falsify({{"reason", "expected 1344 antilinear permutations"}});
    });
}

Certificate check_signature(const BilinearForm& form, unsigned workers) {
    return guarded("lemma-signature", [&](Certificate& cert) {
        cert.inputs["form"] = form_json(form);
        const auto all = permutations_fixing_zero();
        std::vector<std::uint8_t> linear(all.size(), 0);
        std::vector<std::uint8_t> regular(all.size(), 0);
        parallel_for(all.size(), workers, [&](std::size_t k) {
            const auto values = signature_values(all[k].images(), form);
            try {
                const auto map = gf2::GF2Map::from_table(3, std::vector<unsigned>(values.begin(), values.end()));
                linear[k] = 1;
                regular[k] = map.is_regular() ? 1 : 0;
            } catch (const std::invalid_argument&) {
            }
        });
        std::uint64_t n_linear = 0;
        std::uint64_t n_anti = 0;
        for (std::size_t k = 0; k < all.size(); ++k) {
            n_linear += linear[k];
            if (!linear[k]) cert.falsify({{"reason", "signature not linear"}, {"perm", all[k].to_cycles()}});
            if (is_antilinear(all[k])) {
                ++n_anti;
                if (!regular[k]) cert.falsify({{"reason", "signature not regular"}, {"perm", all[k].to_cycles()}});
            }
        }
        cert.counters["permutations"] = all.size();
        cert.counters["linear"] = n_linear;
        cert.counters["antilinear"] = n_anti;
        if (all.size() != 5040) cert.falsify({{"reason", "expected 5040 permutations fixing 0"}});
    });
}

Certificate check_fano_orth(const BilinearForm& form) {
    return guarded("lemma-fano-orth", [&](Certificate& cert) {
        cert.inputs["form"] = form_json(form);
        std::uint64_t singles = 0;
        std::uint64_t pairs = 0;
        for (const auto& p : reference_fano()) {
            for (unsigned x = 1; x < 8; ++x) {
                ++singles;
                if (form(x, p(x)) != 1) cert.falsify({{"perm", p.to_cycles()}, {"x", x}, {"property", "<x,p(x)>"}});
                for (unsigned y = 1; y < 8; ++y) {
                    if (y == x) continue;
                    ++pairs;
                    if ((form(x, p(y)) ^ form(y, p(x))) != 1) {
                        cert.falsify({{"perm", p.to_cycles()}, {"x", x}, {"y", y}, {"property", "<x,p(y)>^<y,p(x)>"}});
                    }
                }
            }
        }
        cert.counters["singles"] = singles;
        cert.counters["pairs"] = pairs;
    });
}

Certificate check_family_size() {
    return guarded("thm-main-family-size", [](Certificate& cert) {
        const Triangle t{0, 1, 2};
        const std::uint64_t expected8 = std::uint64_t{1} << 25;
        const auto tri8 = FamilySpec::triangulumvirate(8, t, EdgeSet::from_edges(8, {{0, 1}}));
        const auto junta8 = FamilySpec::junta(8, t);
        cert.counters["n8_formula"] = family_size(tri8);
        if (family_size(tri8) != expected8 || family_size(junta8) != expected8) {
            cert.falsify({{"reason", "formula at n = 8"}, {"size", family_size(tri8)}});
        }
        const auto junta4 = FamilySpec::junta(4, t);
        const auto tri4 = FamilySpec::triangulumvirate(4, t, EdgeSet::from_edges(4, {{0, 1}, {1, 2}}));
        for (const auto& f : {junta4, tri4}) {
            const auto counted = family_size_by_enumeration(f);
            cert.counters["n4_" + f.describe()] = counted;
            if (counted != family_size(f) || counted != 8) {
                cert.falsify({{"family", f.describe()}, {"enumerated", counted}, {"formula", family_size(f)}});
            }
        }
    });
}

int exit_code_for(const std::vector<Certificate>& certs) {
    bool error = false;
    for (const auto& c : certs) {
        if (c.status == Status::falsified) return 1;
        error = error || c.status == Status::error;
    }
    return error ? 2 : 0;
}

Json PipelineResult::bundle(bool reproducible) const {
    auto certs = certificates;
    if (reproducible) {
        for (auto& c : certs) c.elapsed_ms = 0;
    }
    return make_bundle(certs);
}

PipelineResult run_verify_all(const PipelineOptions& opts) {
    PipelineResult r;
    auto& out = r.certificates;
    const auto& form = opts.sabotage.form;
    const auto example = opts.sabotage.apply(example_table());
    const auto configured = Perm8::parse_cycles(opts.perm);
    const auto configured_table =
        configured == Perm8::from_images(example_table()) ? example : configured.images();

    out.push_back(check_gf2_regular_count());
    out.push_back(check_cube_recognition(opts.fast ? 2000 : 100000, opts.seed));
    // Antilinear enumerations.
    out.push_back(check_fano_count(form));
    out.push_back(check_antilinear_count(form, opts.workers));
    out.push_back(check_antilinear_example(example, form));
    // Co-cube check for the configured permutation, then for all of them.
    out.push_back(check_lemma_v(configured_table, form));
    out.push_back(check_lemma_v_all(form, opts.workers));
    // Signature and orthogonality properties.
    out.push_back(check_signature(form, opts.workers));
    out.push_back(check_fano_orth(form));

    // Coset cap and family sizes.
    const bool configured_ok = is_antilinear(configured) && form.is_standard() && !opts.sabotage.entry;
    if (configured_ok) {
        const auto v = subspace_from_coloring(coloring_from_perm(configured));
        CosetCapOptions cap;
        cap.samples = opts.fast ? std::min<std::uint64_t>(opts.samples, 10000) : opts.samples;
        cap.seed = opts.seed;
        cap.workers = opts.workers;
        const auto family = FamilySpec::triangulumvirate(8, Triangle{0, 1, 2}, EdgeSet::from_edges(8, {{0, 1}}));
        out.push_back(verify_coset_cap(family, v, cap));
        out.push_back(verify_coset_cap_exhaustive(FamilySpec::junta(4, Triangle{0, 1, 2}), k4_matching_subspace()));
        // A translate of V off V: its span is four-dimensional.
        const auto shifted = CandidateSet::from_subspace(v).translate(EdgeSet::from_edges(8, {{0, 1}}));
        out.push_back(verify_useful_span(shifted, EdgeSet::from_edges(8, {{2, 5}, {3, 6}})));
        const auto c = coloring_from_perm(configured);
        out.push_back(check_triangle_regularity(c));
        out.push_back(derive_n_bound(c));
        if (!opts.fast) {
            for (const auto structure : {Structure::non_bipartite, Structure::triangle}) {
                const auto inst = build_instance(v, PairMode{structure, Relation::intersecting}, false);
                SolverOptions so;
                so.workers = opts.workers;
                out.push_back(emit_unsat_report(inst, solve(inst.csp, so)));
            }
        }
    }
    out.push_back(check_family_size());

    out.push_back(classify_isets(opts.workers));
    if (!opts.fast) {
        ColoringSearchOptions co;
        co.workers = opts.workers;
        out.push_back(coloring_certificate(n8_control_problem(), n8_control_search(co)));
        out.push_back(coloring_certificate(n9_problem(), n9_search(co)));
    }
    r.exit_code = exit_code_for(out);
    return r;
}

std::vector<std::string> sabotage_failures(const Sabotage& s, unsigned workers, bool stop_at_first) {
    const auto table = s.apply(example_table());
    const std::vector<std::function<Certificate()>> checks{
        [&] { return check_antilinear_example(table, s.form); },
        [&] { return check_lemma_v(table, s.form); },
        [&] { return check_fano_count(s.form); },
        [&] { return check_fano_orth(s.form); },
        [&] { return check_signature(s.form, workers); },
        [&] { return check_antilinear_count(s.form, workers); },
        [&] { return check_lemma_v_all(s.form, workers); },
    };
    std::vector<std::string> failed;
    for (const auto& check : checks) {
        const auto cert = check();
        if (!cert.ok()) {
            failed.push_back(cert.claim_id);
            if (stop_at_first) break;
        }
    }
    return failed;
}

}  // namespace cocube
