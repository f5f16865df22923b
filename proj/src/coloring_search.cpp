#include "cocube/coloring_search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <fstream>
#include <map>
#include <mutex>

#include "cocube/parallel.hpp"
#include "cocube/useful_sets.hpp"

namespace cocube {

namespace {

constexpr int kCheckpointSchema = 1;
constexpr const char* kCheckpointKind = "cocube-coloring-checkpoint";

}  // namespace

ColoringProblem::ColoringProblem(unsigned n, unsigned m, std::vector<unsigned> constraints)
    : n_(n), m_(m), constraints_(std::move(constraints)), allowed_(256, 0) {
    if (n < 3 || n > kMaxVertices) throw std::invalid_argument("ColoringProblem: n must be 3..12");
    if (m == 0 || m > gf2::kMaxDim) throw std::invalid_argument("ColoringProblem: m must be 1..4");
    std::sort(constraints_.begin(), constraints_.end());
    constraints_.erase(std::unique(constraints_.begin(), constraints_.end()), constraints_.end());
    for (unsigned s : constraints_) {
        if (s == 0 || s >= (1u << m)) throw std::invalid_argument("ColoringProblem: constraint vector out of range");
    }
    const unsigned q = 1u << m;
    for (unsigned x = 0; x < q; ++x) {
        for (unsigned y = 0; y < q; ++y) {
            std::uint16_t mask = 0;
            for (unsigned z = 0; z < q; ++z) {
                bool ok = true;
                for (unsigned s : constraints_) {
                    if (gf2::dot(x, s) == 0 && gf2::dot(y, s) == 0 && gf2::dot(z, s) == 0) {
                        ok = false;
                        break;
                    }
                }
                if (ok) mask |= static_cast<std::uint16_t>(1u << z);
            }
            allowed_[x * 16 + y] = mask;
        }
    }
    std::uint16_t constraint_mask = 0;
    for (unsigned s : constraints_) constraint_mask |= static_cast<std::uint16_t>(1u << s);
    for (const auto& l : gf2::enumerate_regular(m)) {
        const auto lt = l.transpose();
        std::uint16_t image = 0;
        for (unsigned s : constraints_) image |= static_cast<std::uint16_t>(1u << lt.apply(s));
        if (image != constraint_mask) continue;
        std::vector<std::uint8_t> table(q);
        for (unsigned x = 0; x < q; ++x) table[x] = static_cast<std::uint8_t>(l.apply(x));
        if (l == gf2::GF2Map::identity(m)) {
            symmetries_.insert(symmetries_.begin(), std::move(table));
        } else {
            symmetries_.push_back(std::move(table));
        }
    }
}

std::vector<Edge> ColoringProblem::edge_order() const {
    std::vector<Edge> order;
    for (unsigned t = 1; t < n_; ++t) {
        for (unsigned a = 0; a < t; ++a) order.push_back({a, t});
    }
    return order;
}

bool ColoringProblem::valid(const EdgeColoring& c) const {
    if (c.n() != n_ || c.m() != m_) return false;
    for (const auto& t : triangles_of(n_)) {
        const unsigned x = c.color(t.a, t.b);
        const unsigned y = c.color(t.a, t.c);
        const unsigned z = c.color(t.b, t.c);
        for (unsigned s : constraints_) {
            if (gf2::dot(x, s) == 0 && gf2::dot(y, s) == 0 && gf2::dot(z, s) == 0) return false;
        }
    }
    return true;
}

ColoringProblem n9_problem() {
    std::vector<unsigned> s;
    const ISet i0 = iset_weight_one_two();
    for (unsigned x = 1; x < 16; ++x) {
        if ((i0 >> x) & 1u) s.push_back(x);
    }
    return ColoringProblem(9, 4, s);
}

ColoringProblem n8_control_problem() { return ColoringProblem(8, 3, {1, 2, 3, 4, 5, 6, 7}); }

namespace {

struct BranchResult {
    std::uint64_t nodes = 0;
    std::uint64_t rejected = 0;
    std::optional<std::vector<std::uint8_t>> solution;
};

// Depth-first search over the vertex-by-vertex edge order. Positions below
// `prefix.size()` are forced to the prefix colours and are not counted as nodes.
class EdgeSearch {
public:
    EdgeSearch(const ColoringProblem& p, std::vector<std::uint8_t> prefix, unsigned stop_at, bool symmetry)
        : p_(p), order_(p.edge_order()), prefix_(std::move(prefix)), stop_at_(stop_at), symmetry_(symmetry) {
        colors_.assign(slot_count(p.n()), 0);
        star_.assign(p.n(), 0);
        groups_.assign(p.n() + 1, {});
        // Index 0 is the identity; without symmetry breaking it is the whole group.
        const std::size_t group = symmetry ? p.symmetries().size() : 1;
        for (std::uint16_t g = 0; g < group; ++g) groups_[1].push_back(g);
        levels_.assign(order_.size() + 1, {});
    }

    /// Runs to completion; `visit` is called at position stop_at and returns true to stop.
    template <typename Visit>
    void run(Visit&& visit) {
        dfs(0, visit);
    }

    [[nodiscard]] std::uint64_t nodes() const noexcept { return nodes_; }
    [[nodiscard]] const std::vector<std::uint8_t>& colors() const noexcept { return colors_; }

    /// Colours of the first `count` edges in edge order.
    [[nodiscard]] std::vector<std::uint8_t> prefix_colors(unsigned count) const {
        std::vector<std::uint8_t> out;
        for (unsigned k = 0; k < count; ++k) out.push_back(colors_[edge_slot(order_[k].u, order_[k].v)]);
        return out;
    }

private:
    // Canonical-form test for the star colour x of vertex t (edge (0,t)).
    bool star_allowed(unsigned t, unsigned x) const {
        if (symmetry_ && t >= 2 && x < star_[t - 1]) return false;
        const auto& sym = p_.symmetries();
        for (unsigned j = 1; j < t; ++j) {
            if (groups_[j].size() <= 1) break;
            for (auto g : groups_[j]) {
                if (sym[g][x] < star_[j]) return false;
            }
        }
        for (auto g : groups_[t]) {
            if (sym[g][x] < x) return false;
        }
        return true;
    }

    void fix_star(unsigned t, unsigned x) {
        star_[t] = static_cast<std::uint8_t>(x);
        auto& next = groups_[t + 1];
        next.clear();
        for (auto g : groups_[t]) {
            if (p_.symmetries()[g][x] == x) next.push_back(g);
        }
    }

    template <typename Visit>
    bool dfs(unsigned pos, Visit& visit) {
        if (pos == stop_at_) return visit(*this);
        const unsigned a = order_[pos].u;
        const unsigned t = order_[pos].v;
        const unsigned q = 1u << p_.m();
        std::uint16_t domain;
        if (a == 0) {
            domain = 0;
            for (unsigned x = 0; x < q; ++x) {
                if (star_allowed(t, x)) domain |= static_cast<std::uint16_t>(1u << x);
            }
        } else {
            domain = levels_[pos][a];
        }
        if (pos < prefix_.size()) domain &= static_cast<std::uint16_t>(1u << prefix_[pos]);
        const bool counted = pos >= prefix_.size();
        while (domain) {
            const unsigned x = static_cast<unsigned>(std::countr_zero(domain));
            domain &= static_cast<std::uint16_t>(domain - 1);
            if (counted) ++nodes_;
            colors_[edge_slot(a, t)] = static_cast<std::uint8_t>(x);
            // Filter the remaining edges (c,t), c > a, through the triangle (a,c,t).
            auto& next = levels_[pos + 1];
            if (a == 0) {
                fix_star(t, x);
                next.fill(0);
            } else {
                next = levels_[pos];
            }
            bool alive = true;
            for (unsigned c = a + 1; c < t && alive; ++c) {
                const std::uint16_t through = p_.allowed(colors_[edge_slot(a, c)], x);
                next[c] = a == 0 ? through : static_cast<std::uint16_t>(next[c] & through);
                alive = next[c] != 0;
            }
            if (!alive) continue;
            if (dfs(pos + 1, visit)) return true;
        }
        return false;
    }

    const ColoringProblem& p_;
    std::vector<Edge> order_;
    std::vector<std::uint8_t> prefix_;
    unsigned stop_at_;
    bool symmetry_;
    std::vector<std::uint8_t> colors_;
    std::vector<std::uint8_t> star_;
    std::vector<std::vector<std::uint16_t>> groups_;
    std::vector<std::array<std::uint16_t, kMaxVertices>> levels_;
    std::uint64_t nodes_ = 0;
};

Json problem_json(const ColoringProblem& p) {
    return {{"n", p.n()}, {"m", p.m()}, {"constraints", p.constraints()}};
}

Json edge_order_json(const ColoringProblem& p) {
    Json out = Json::array();
    for (const auto& e : p.edge_order()) out.push_back({e.u, e.v});
    return out;
}

struct CheckpointState {
    Json header;
    std::map<std::uint64_t, BranchResult> done;
};

class CheckpointWriter {
public:
    CheckpointWriter(std::filesystem::path path, Json header) : path_(std::move(path)), header_(std::move(header)) {}

    void record(std::uint64_t index, const BranchResult& r, std::map<std::uint64_t, BranchResult>& done) {
        std::lock_guard lock(mutex_);
        done[index] = r;
        ++pending_;
        if (!path_.empty() && (pending_ >= 64 || clock_.elapsed_ms() - last_write_ >= 1000)) write_locked(done);
    }

    void flush(const std::map<std::uint64_t, BranchResult>& done) {
        std::lock_guard lock(mutex_);
        if (!path_.empty()) write_locked(done);
    }

private:
    void write_locked(const std::map<std::uint64_t, BranchResult>& done) {
        Json j = header_;
        Json branches = Json::array();
        for (const auto& [index, r] : done) {
            branches.push_back({{"index", index},
                                {"nodes", r.nodes},
                                {"rejected", r.rejected},
                                {"solution", r.solution ? Json(*r.solution) : Json(nullptr)}});
        }
        j["branches"] = std::move(branches);
        const auto tmp = std::filesystem::path(path_.string() + ".tmp");
        {
            std::ofstream out(tmp, std::ios::trunc);
            if (!out) throw std::runtime_error("cannot write checkpoint " + tmp.string());
            out << j.dump(1) << '\n';
        }
        std::filesystem::rename(tmp, path_);
        pending_ = 0;
        last_write_ = clock_.elapsed_ms();
    }

    std::filesystem::path path_;
    Json header_;
    std::mutex mutex_;
    unsigned pending_ = 0;
    Stopwatch clock_;
    std::int64_t last_write_ = 0;
};

std::map<std::uint64_t, BranchResult> load_checkpoint(const std::filesystem::path& path, const Json& header,
                                                      std::size_t slots) {
    std::ifstream in(path);
    if (!in) throw CheckpointError("cannot open checkpoint " + path.string());
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw CheckpointError("corrupt checkpoint " + path.string() + ": " + e.what());
    }
    std::map<std::uint64_t, BranchResult> done;
    try {
        for (const auto& key : {"schema_version", "kind", "problem", "edge_order", "root_vertices", "branch_count",
                                "root_nodes", "accept_filter",
                                "symmetry_breaking"}) {
            if (j.at(key) != header.at(key)) {
                throw CheckpointError(std::string("checkpoint does not match this search: field ") + key);
            }
        }
        const auto count = header.at("branch_count").get<std::uint64_t>();
        for (const auto& b : j.at("branches")) {
            const auto index = b.at("index").get<std::uint64_t>();
            if (index >= count || done.count(index)) throw CheckpointError("corrupt checkpoint: bad branch index");
            BranchResult r;
            r.nodes = b.at("nodes").get<std::uint64_t>();
            r.rejected = b.at("rejected").get<std::uint64_t>();
            if (!b.at("solution").is_null()) {
                r.solution = b.at("solution").get<std::vector<std::uint8_t>>();
                if (r.solution->size() != slots) throw CheckpointError("corrupt checkpoint: bad solution length");
            }
            done[index] = std::move(r);
        }
    } catch (const Json::exception& e) {
        throw CheckpointError(std::string("corrupt checkpoint: ") + e.what());
    }
    return done;
}

}  // namespace

ColoringOutcome coloring_search(const ColoringProblem& problem, const ColoringSearchOptions& opts) {
    Stopwatch clock;
    ColoringOutcome out;
    const unsigned root_vertices = std::clamp(opts.root_vertices, 2u, problem.n());
    const unsigned root_edges = slot_count(root_vertices);

    // Root enumeration: every canonical colouring of the first root_vertices vertices.
    std::vector<std::vector<std::uint8_t>> roots;
    EdgeSearch enumerator(problem, {}, root_edges, opts.symmetry_breaking);
    enumerator.run([&](const EdgeSearch& s) {
        roots.push_back(s.prefix_colors(root_edges));
        return false;
    });
    out.root_nodes = enumerator.nodes();
    out.branches = roots.size();

    Json header = {{"schema_version", kCheckpointSchema},
                   {"kind", kCheckpointKind},
                   {"problem", problem_json(problem)},
                   {"edge_order", edge_order_json(problem)},
                   {"root_vertices", root_vertices},
                   {"branch_count", roots.size()},
                   {"root_nodes", out.root_nodes},
                   {"accept_filter", static_cast<bool>(opts.accept)},
                   {"symmetry_breaking", opts.symmetry_breaking}};

    std::map<std::uint64_t, BranchResult> done;
    if (opts.resume && !opts.checkpoint.empty() && std::filesystem::exists(opts.checkpoint)) {
        done = load_checkpoint(opts.checkpoint, header, slot_count(problem.n()));
        out.branches_resumed = done.size();
    }
    CheckpointWriter writer(opts.checkpoint, header);

    std::vector<std::uint64_t> pending;
    std::uint64_t known_solution = roots.size();
    for (const auto& [index, r] : done) {
        if (r.solution) known_solution = std::min(known_solution, index);
    }
    for (std::uint64_t k = 0; k < roots.size(); ++k) {
        if (!done.count(k)) pending.push_back(k);
    }
    if (opts.max_branches > 0 && pending.size() > opts.max_branches) pending.resize(opts.max_branches);

    std::atomic<std::uint64_t> first_found{opts.stop_at_first ? known_solution : roots.size()};
    parallel_for(pending.size(), opts.workers, [&](std::size_t k) {
        const auto index = pending[k];
        if (opts.stop_at_first && index > first_found.load()) return;
        EdgeSearch search(problem, roots[index], static_cast<unsigned>(slot_count(problem.n())), opts.symmetry_breaking);
        BranchResult r;
        search.run([&](const EdgeSearch& s) {
            if (opts.accept && !opts.accept(EdgeColoring(problem.n(), problem.m(), s.colors()))) {
                ++r.rejected;
                return false;
            }
            r.solution = s.colors();
            return true;
        });
        r.nodes = search.nodes();
        if (r.solution && opts.stop_at_first) {
            auto cur = first_found.load();
            while (index < cur && !first_found.compare_exchange_weak(cur, index)) {
            }
        }
        writer.record(index, r, done);
    });
    writer.flush(done);

    out.nodes = out.root_nodes;
    for (const auto& [index, r] : done) {
        out.nodes += r.nodes;
        out.rejected += r.rejected;
        if (r.solution && !out.coloring) {
            out.found = true;
            out.coloring = EdgeColoring(problem.n(), problem.m(), *r.solution);
        }
    }
    out.branches_done = done.size();
    out.complete = out.branches_done == out.branches || (opts.stop_at_first && out.found);
    out.elapsed_ms = clock.elapsed_ms();
    return out;
}

ColoringOutcome n9_search(const ColoringSearchOptions& opts) { return coloring_search(n9_problem(), opts); }

ColoringOutcome n8_control_search(ColoringSearchOptions opts) {
    opts.stop_at_first = true;
    opts.accept = [](const EdgeColoring& c) { return verify_cocube(subspace_from_coloring(c)).ok(); };
    return coloring_search(n8_control_problem(), opts);
}

Certificate coloring_certificate(const ColoringProblem& problem, const ColoringOutcome& out) {
    const bool control = problem.n() == 8 && problem.m() == 3;
    auto cert = Certificate::begin(control ? "n8-control" : "n9-nonexistence");
    cert.inputs["problem"] = problem_json(problem);
    cert.inputs["edge_order"] = "vertex-by-vertex";
    cert.counters["nodes"] = out.nodes;
    cert.counters["root_nodes"] = out.root_nodes;
    cert.counters["rejected_solutions"] = out.rejected;
    cert.counters["branches"] = out.branches;
    cert.counters["branches_done"] = out.branches_done;
    cert.counters["branches_resumed"] = out.branches_resumed;
    cert.counters["complete"] = out.complete;
    cert.counters["symmetries"] = problem.symmetries().size();
    cert.counters["search_status"] = out.found ? "SAT" : (out.complete ? "UNSAT" : "INCOMPLETE");
    cert.elapsed_ms = out.elapsed_ms;
    if (!out.complete) {
        cert.status = Status::error;
        return cert;
    }
    if (out.coloring) cert.counters["coloring"] = out.coloring->colors();
    if (control) {
        if (!out.coloring) {
            cert.falsify({{"reason", "no colouring found on K_8"}});
        } else if (!problem.valid(*out.coloring)) {
            cert.falsify({{"reason", "found colouring fails the direct triangle check"},
                          {"coloring", out.coloring->colors()}});
        } else {
            const auto cocube = verify_cocube(subspace_from_coloring(*out.coloring));
            cert.counters["cocube_status"] = std::string(to_string(cocube.status));
            if (!cocube.ok()) cert.falsify({{"reason", "subspace of the found colouring is not co-cube"},
                                            {"lemma_V", cocube.to_json()}});
        }
    } else if (out.coloring) {
        cert.falsify({{"reason", "colouring found"},
                      {"coloring", out.coloring->colors()},
                      {"independent_check", problem.valid(*out.coloring)}});
    }
    cert.conclude();
    return cert;
}

}  // namespace cocube
