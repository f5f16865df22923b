// cocube: command-line front end. Exit codes: 0 verified, 1 falsified, 2 usage or internal error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <thread>

#include "cocube/antilinear.hpp"
#include "cocube/coloring_search.hpp"
#include "cocube/cube_subspace.hpp"
#include "cocube/families.hpp"
#include "cocube/pipeline.hpp"
#include "cocube/uniqueness_search.hpp"
#include "cocube/useful_sets.hpp"

namespace {

using namespace cocube;

void write_json(const std::string& path, const Json& j) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

int finish(const std::vector<Certificate>& certs, const std::string& json_path, bool reproducible = false) {
    for (const auto& c : certs) {
        std::cout << c.claim_id << ": " << to_string(c.status);
        if (!c.ok() && !c.witnesses.empty()) std::cout << "  " << c.witnesses.front().dump();
        std::cout << '\n';
    }
    PipelineResult r{certs, exit_code_for(certs)};
    write_json(json_path, r.bundle(reproducible));
    return r.exit_code;
}

Perm8 parse_perm(const std::string& text) { return Perm8::parse_cycles(text); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cocube: exhaustive checks for cube-complement subspaces and triangle families"};
    app.require_subcommand(1);
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    app.add_option("--workers", workers, "Upper bound on worker threads")->check(CLI::PositiveNumber);

    std::string json_path;
    auto add_json = [&](CLI::App* sub) { sub->add_option("--json", json_path, "Write the certificate bundle here"); };

    auto* fano = app.add_subcommand("fano", "List the Fano permutations");
    add_json(fano);

    auto* anti = app.add_subcommand("antilinear", "Count antilinear permutations and check the factorization");
    add_json(anti);

    std::string perm = "(1234)";
    bool verify = false;
    auto* sub = app.add_subcommand("subspace", "Build the subspace of a permutation");
    sub->add_option("--perm", perm, "Permutation of 0-7 in cycle notation");
    sub->add_flag("--verify", verify, "Run the cube checks on every nonzero member");
    add_json(sub);

    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
    auto* bound = app.add_subcommand("bound", "Sampled coset cap and kernel-system size");
    bound->add_option("--samples", samples, "Number of sampled cosets");
    bound->add_option("--seed", seed, "RNG seed");
    bound->add_option("--perm", perm, "Permutation defining V");
    add_json(bound);

    std::string mode = "nb";
    std::string self = "off";
    bool plain = false;
    auto* uniq = app.add_subcommand("uniqueness", "Search for a compatible choice of v_T over all triangles");
    uniq->add_option("--perm", perm, "Permutation defining V");
    uniq->add_option("--mode", mode, "nb (non-bipartite) or tri (triangle), both intersecting")
        ->check(CLI::IsMember({"nb", "tri"}));
    uniq->add_option("--self", self, "Also constrain each candidate against itself")->check(CLI::IsMember({"on", "off"}));
    uniq->add_flag("--plain", plain, "Plain backtracking without propagation");
    add_json(uniq);

    auto* isets = app.add_subcommand("isets", "I-set tools");
    auto* classify = isets->add_subcommand("classify", "Classify every closure-satisfying I-set");
    isets->require_subcommand(1);
    add_json(classify);

    std::string checkpoint;
    bool resume = false;
    bool control = false;
    unsigned root_vertices = 4;
    std::uint64_t max_branches = 0;
    auto* n9 = app.add_subcommand("n9", "Colouring search on K9 (or the K8 control)");
    n9->add_option("--checkpoint", checkpoint, "Checkpoint file");
    n9->add_flag("--resume", resume, "Continue from the checkpoint");
    n9->add_flag("--control", control, "Run the K8, Z_2^3 control instead");
    n9->add_option("--root-vertices", root_vertices, "Vertices fixed by the root enumeration");
    n9->add_option("--max-branches", max_branches, "Stop after this many branches (0 = all)");
    add_json(n9);

    bool fast = false;
    bool reproducible = false;
    std::string sabotage = "none";
    auto* all = app.add_subcommand("verify-all", "Run every claim check");
    all->add_flag("--fast", fast, "Skip the long searches");
    all->add_flag("--reproducible", reproducible, "Zero elapsed times in the bundle");
    all->add_option("--sabotage", sabotage, "none, entry:I=V or ip:drop0|drop1|drop2|reverse|shift");
    all->add_option("--perm", perm, "Permutation for the single-permutation checks");
    all->add_option("--samples", samples, "Sampled cosets");
    all->add_option("--seed", seed, "RNG seed");
    add_json(all);

    auto* harness = app.add_subcommand("sabotage", "Run every mutation and report which check catches it");
    add_json(harness);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (fano->parsed()) {
            for (const auto& p : enumerate_fano()) std::cout << p.to_cycles() << '\n';
            return finish({check_fano_count(gf2::BilinearForm::standard(3))}, json_path);
        }
        if (anti->parsed()) {
            const auto form = gf2::BilinearForm::standard(3);
            auto count = check_antilinear_count(form, workers);
            std::cout << "antilinear " << count.counters.value("antilinear", 0) << " = "
                      << count.counters.value("regular_maps", 0) << " x " << count.counters.value("fano", 0) << '\n';
            return finish({count, check_signature(form, workers)}, json_path);
        }
        if (sub->parsed()) {
            const auto p = parse_perm(perm);
            const auto s = subspace_from_coloring(coloring_from_perm(p));
            std::cout << "perm " << p.to_cycles() << " = " << p.to_image_string() << " rank " << s.rank() << '\n';
            for (unsigned k = 0; k < s.size(); ++k) {
                std::cout << "v" << k << " " << s.member(k).canonical() << " complement "
                          << complement(s.member(k)).canonical() << '\n';
            }
            if (!verify) return 0;
            return finish({verify_cocube(s)}, json_path);
        }
        if (bound->parsed()) {
            const auto v = subspace_from_coloring(coloring_from_perm(parse_perm(perm)));
            CosetCapOptions opts;
            opts.samples = samples;
            opts.seed = seed;
            opts.workers = workers;
            const auto family = FamilySpec::triangulumvirate(8, Triangle{0, 1, 2}, EdgeSet::from_edges(8, {{0, 1}}));
            return finish({verify_coset_cap(family, v, opts), check_family_size()}, json_path);
        }
        if (uniq->parsed()) {
            const auto v = subspace_from_coloring(coloring_from_perm(parse_perm(perm)));
            const PairMode pm{mode == "tri" ? Structure::triangle : Structure::non_bipartite, Relation::intersecting};
            const auto inst = build_instance(v, pm, self == "on");
            SolverOptions so;
            so.workers = workers;
            so.propagate = !plain;
            const auto out = solve(inst.csp, so);
            std::cout << to_string(pm) << " self=" << self << ": "
                      << (out.status == SearchStatus::sat ? "SAT" : "UNSAT") << " nodes=" << out.nodes
                      << " max_depth=" << out.max_depth << '\n';
            return finish({emit_unsat_report(inst, out)}, json_path);
        }
        if (classify->parsed()) {
            auto cert = classify_isets(workers);
            std::cout << "scanned " << cert.counters.value("scanned", 0) << ", closure sets "
                      << cert.counters.value("closure_sets", 0) << '\n';
            return finish({cert}, json_path);
        }
        if (n9->parsed()) {
            ColoringSearchOptions opts;
            opts.workers = workers;
            opts.root_vertices = root_vertices;
            opts.checkpoint = checkpoint;
            opts.resume = resume;
            opts.max_branches = max_branches;
            const auto problem = control ? n8_control_problem() : n9_problem();
            const auto out = control ? n8_control_search(opts) : n9_search(opts);
            std::cout << "branches " << out.branches_done << "/" << out.branches << " nodes " << out.nodes
                      << (out.found ? " SAT" : (out.complete ? " UNSAT" : " INCOMPLETE")) << '\n';
            return finish({coloring_certificate(problem, out)}, json_path);
        }
        if (all->parsed()) {
            PipelineOptions opts;
            opts.fast = fast;
            opts.workers = workers;
            opts.perm = perm;
            opts.samples = samples;
            opts.seed = seed;
            opts.sabotage = Sabotage::parse(sabotage);
            const auto r = run_verify_all(opts);
            return finish(r.certificates, json_path, reproducible);
        }
        if (harness->parsed()) {
            Json report = Json::array();
            int survived = 0;
            for (const auto& s : Sabotage::all()) {
                const auto failed = sabotage_failures(s, workers, false);
                std::cout << s.name << ": " << (failed.empty() ? "SURVIVED" : "caught by");
                for (const auto& id : failed) std::cout << ' ' << id;
                std::cout << '\n';
                survived += failed.empty() ? 1 : 0;
                report.push_back({{"mutation", s.name}, {"failed", failed}});
            }
            write_json(json_path, {{"mutations", report}, {"survived", survived}});
            return survived == 0 ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
