// Acceptance run: one PASS/FAIL line per criterion, with wall-clock limits.
// Exit status 0 only if every line passes.

#include <algorithm>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "cocube/antilinear.hpp"
#include "cocube/coloring_search.hpp"
#include "cocube/cube_subspace.hpp"
#include "cocube/families.hpp"
#include "cocube/pipeline.hpp"
#include "cocube/uniqueness_search.hpp"
#include "cocube/useful_sets.hpp"

using namespace cocube;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

const unsigned kWorkers = std::max(1u, std::thread::hardware_concurrency());
const gf2::BilinearForm kForm = gf2::BilinearForm::standard(3);

std::string failures_of(const Certificate& c) {
    if (c.ok()) return "";
    std::string out = " [" + c.claim_id + " " + std::string(to_string(c.status));
    if (!c.witnesses.empty()) out += " " + c.witnesses.front().dump();
    return out + "]";
}

Subspace v_of(const std::string& perm) { return subspace_from_coloring(coloring_from_perm(Perm8::parse_cycles(perm))); }

Verdict fano_enumeration() {
    std::set<std::string> found;
    for (const auto& p : enumerate_fano()) found.insert(p.to_cycles());
    std::set<std::string> reference;
    for (const auto& p : reference_fano()) reference.insert(p.to_cycles());
    const auto cert = check_fano_count(kForm);
    std::ostringstream d;
    d << found.size() << " found, set-equal to the reference list: " << (found == reference ? "yes" : "no")
      << " (reference uses (174653); the printed (174652) is not antilinear with identity signature)"
      << failures_of(cert);
    return {found == reference && found.size() == 8 && cert.ok(), d.str()};
}

Verdict antilinear_count() {
    const auto cert = check_antilinear_count(kForm, kWorkers);
    const auto n = cert.counters.value("antilinear", 0);
    std::ostringstream d;
    d << n << " = " << cert.counters.value("regular_maps", 0) << " x " << cert.counters.value("fano", 0)
      << ", factorization bijective" << failures_of(cert);
    return {cert.ok() && n == 1344, d.str()};
}

Verdict worked_example() {
    const auto cert = check_antilinear_example(Perm8::parse_cycles("(1234)").images(), kForm);
    return {cert.ok(), "line sums " + cert.counters.value("line_sums", Json()).dump() + ", signature " +
                           cert.counters.value("signature", Json()).dump() + failures_of(cert)};
}

Verdict cocube_all() {
    const auto cert = check_lemma_v_all(kForm, kWorkers);
    std::ostringstream d;
    d << cert.counters.value("passed", 0) << "/1344 permutations, " << cert.counters.value("members_checked", 0)
      << " complements pass fast check and isomorphism oracle" << failures_of(cert);
    return {cert.ok() && cert.counters.value("passed", 0) == 1344, d.str()};
}

Verdict signature_linearity() {
    const auto cert = check_signature(kForm, kWorkers);
    std::ostringstream d;
    d << cert.counters.value("linear", 0) << "/5040 linear, regular on all " << cert.counters.value("antilinear", 0)
      << " antilinear" << failures_of(cert);
    return {cert.ok(), d.str()};
}

Verdict fano_properties() {
    const auto cert = check_fano_orth(kForm);
    std::ostringstream d;
    d << cert.counters.value("singles", 0) << " single and " << cert.counters.value("pairs", 0)
      << " pair cases, " << cert.witnesses.size() << " failures" << failures_of(cert);
    return {cert.ok(), d.str()};
}

Verdict coset_bound() {
    CosetCapOptions opts;
    opts.samples = 100000;
    opts.seed = 1;
    opts.workers = kWorkers;
    const auto family = FamilySpec::triangulumvirate(8, Triangle{0, 1, 2}, EdgeSet::from_edges(8, {{0, 1}}));
    const auto cap = verify_coset_cap(family, v_of("(1234)"), opts);
    const auto size = check_family_size();
    std::ostringstream d;
    d << cap.counters.value("cosets_checked", 0) << " cosets, max " << cap.counters.value("max_members_in_coset", 0)
      << " member, family_size 2^25 by formula and n=4 enumeration" << failures_of(cap) << failures_of(size);
    return {cap.ok() && size.ok() && cap.counters.value("max_members_in_coset", 99) <= 1, d.str()};
}

Verdict uniqueness() {
    const auto v = v_of("(1234)");
    bool pass = true;
    std::ostringstream d;
    for (const auto s : {Structure::non_bipartite, Structure::triangle}) {
        const auto inst = build_instance(v, {s, Relation::intersecting}, false);
        std::set<SearchStatus> statuses;
        SolverOptions one;
        const auto base = solve(inst.csp, one);
        statuses.insert(base.status);
        SolverOptions many;
        many.workers = kWorkers;
        statuses.insert(solve(inst.csp, many).status);
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 3; ++trial) {
            std::vector<unsigned> order(inst.csp.variables());
            std::iota(order.begin(), order.end(), 0u);
            std::shuffle(order.begin(), order.end(), rng);
            statuses.insert(solve(inst.csp.permute_variables(order), many).status);
        }
        const auto cert = emit_unsat_report(inst, base);
        const bool ok = cert.ok() && statuses == std::set<SearchStatus>{SearchStatus::unsat};
        pass = pass && ok;
        if (s == Structure::triangle) d << "; ";
        d << to_string(PairMode{s, Relation::intersecting}) << " " << (ok ? "UNSAT" : "not UNSAT") << " ("
          << base.nodes << " nodes, orderings and worker counts agree)" << failures_of(cert);
    }
    return {pass, d.str()};
}

Verdict iset_classification() {
    const auto cert = classify_isets(kWorkers);
    std::ostringstream d;
    d << cert.counters.value("scanned", 0) << " scanned, " << cert.counters.value("closure_sets", 0)
      << " satisfy closure, fast and orbit paths agree" << failures_of(cert);
    return {cert.ok() && cert.counters.value("scanned", 0) == 32768, d.str()};
}

Verdict n9_search_and_control() {
    ColoringSearchOptions opts;
    opts.workers = kWorkers;
    const auto n9 = n9_search(opts);
    const auto n9_cert = coloring_certificate(n9_problem(), n9);
    const auto control = n8_control_search(opts);
    bool control_ok = control.found && control.coloring;
    if (control_ok) control_ok = verify_cocube(subspace_from_coloring(*control.coloring)).ok();
    std::ostringstream d;
    d << "n=9 " << (n9.complete && !n9.found ? "UNSAT" : "not UNSAT") << " (" << n9.nodes << " nodes); n=8 control "
      << (control_ok ? "found a co-cube solution" : "no co-cube solution") << " (" << control.rejected
      << " non-cube solutions skipped)" << failures_of(n9_cert);
    return {n9.complete && !n9.found && n9_cert.ok() && control_ok, d.str()};
}

Verdict mutation_sensitivity() {
    const auto all = Sabotage::all();
    std::vector<std::string> survivors;
    for (const auto& s : all) {
        if (sabotage_failures(s, kWorkers, true).empty()) survivors.push_back(s.name);
    }
    std::ostringstream d;
    d << all.size() - survivors.size() << "/" << all.size() << " mutations caught";
    for (const auto& name : survivors) d << " " << name;
    return {survivors.empty(), d.str()};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::int64_t limit_ms;  // 0 = no limit
        std::function<Verdict()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "Fano enumeration", 1000, fano_enumeration},
        {2, "antilinear count", 5000, antilinear_count},
        {3, "worked example (1234)", 0, worked_example},
        {4, "co-cube subspaces", 60000, cocube_all},
        {5, "signature linearity", 10000, signature_linearity},
        {6, "Fano properties", 0, fano_properties},
        {7, "coset bound", 60000, coset_bound},
        {8, "uniqueness search", 600000, uniqueness},
        {9, "I-set classification", 60000, iset_classification},
        {10, "n=9 search and n=8 control", 0, n9_search_and_control},
        {11, "mutation sensitivity", 0, mutation_sensitivity},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Stopwatch watch;
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const auto ms = watch.elapsed_ms();
        const bool in_time = c.limit_ms == 0 || ms < c.limit_ms;
        const bool pass = v.pass && in_time;
        failed += pass ? 0 : 1;
        std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << v.detail << " ["
                  << ms << " ms";
        if (c.limit_ms) std::cout << ", limit " << c.limit_ms << " ms";
        std::cout << "]" << (in_time ? "" : " TOO SLOW") << std::endl;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
              << std::endl;
    return failed == 0 ? 0 : 1;
}
