#include "cocube/uniqueness_search.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include "cocube/parallel.hpp"

namespace cocube {

BinaryCsp::BinaryCsp(unsigned variables, unsigned domain_size) : vars_(variables), dom_(domain_size) {
    if (domain_size == 0 || domain_size > kMaxDomain) throw std::invalid_argument("BinaryCsp: domain size must be 1..8");
    support_.assign(std::size_t{vars_} * dom_ * vars_, full_domain());
    initial_.assign(vars_, full_domain());
}

void BinaryCsp::set_compatible(unsigned x, unsigned a, unsigned y, unsigned b, bool ok) {
    if (x >= vars_ || y >= vars_ || a >= dom_ || b >= dom_) throw std::out_of_range("BinaryCsp: index out of range");
    auto& xy = support_[(x * dom_ + a) * vars_ + y];
    auto& yx = support_[(y * dom_ + b) * vars_ + x];
    if (ok) {
        xy |= static_cast<Mask>(1u << b);
        yx |= static_cast<Mask>(1u << a);
    } else {
        xy &= static_cast<Mask>(~(1u << b));
        yx &= static_cast<Mask>(~(1u << a));
    }
}

bool BinaryCsp::is_symmetric() const {
    for (unsigned x = 0; x < vars_; ++x) {
        for (unsigned y = 0; y < vars_; ++y) {
            if (x == y) continue;
            for (unsigned a = 0; a < dom_; ++a) {
                for (unsigned b = 0; b < dom_; ++b) {
                    if (compatible(x, a, y, b) != compatible(y, b, x, a)) return false;
                }
            }
        }
    }
    return true;
}

bool BinaryCsp::satisfies(const std::vector<unsigned>& assignment) const {
    if (assignment.size() != vars_) return false;
    for (unsigned x = 0; x < vars_; ++x) {
        if (assignment[x] >= dom_ || ((initial_[x] >> assignment[x]) & 1u) == 0) return false;
        for (unsigned y = x + 1; y < vars_; ++y) {
            if (!compatible(x, assignment[x], y, assignment[y])) return false;
        }
    }
    return true;
}

BinaryCsp BinaryCsp::permute_variables(const std::vector<unsigned>& order) const {
    return restrict_to(order);
}

BinaryCsp BinaryCsp::permute_values(const std::vector<unsigned>& order) const {
    if (order.size() != dom_) throw std::invalid_argument("permute_values: wrong length");
    BinaryCsp out(vars_, dom_);
    for (unsigned x = 0; x < vars_; ++x) {
        Mask init = 0;
        for (unsigned a = 0; a < dom_; ++a) {
            if ((initial_[x] >> order[a]) & 1u) init |= static_cast<Mask>(1u << a);
        }
        out.initial_[x] = init;
        for (unsigned y = 0; y < vars_; ++y) {
            for (unsigned a = 0; a < dom_; ++a) {
                Mask m = 0;
                for (unsigned b = 0; b < dom_; ++b) {
                    if (compatible(x, order[a], y, order[b])) m |= static_cast<Mask>(1u << b);
                }
                out.support_[(x * dom_ + a) * vars_ + y] = m;
            }
        }
    }
    return out;
}

BinaryCsp BinaryCsp::restrict_to(const std::vector<unsigned>& vars) const {
    BinaryCsp out(static_cast<unsigned>(vars.size()), dom_);
    for (unsigned i = 0; i < vars.size(); ++i) {
        if (vars[i] >= vars_) throw std::out_of_range("restrict_to: variable out of range");
        out.initial_[i] = initial_[vars[i]];
        for (unsigned j = 0; j < vars.size(); ++j) {
            for (unsigned a = 0; a < dom_; ++a) {
                out.support_[(i * dom_ + a) * out.vars_ + j] = supports(vars[i], a, vars[j]);
            }
        }
    }
    return out;
}

namespace {

using Mask = BinaryCsp::Mask;

struct TaskResult {
    std::vector<std::vector<unsigned>> solutions;
    std::uint64_t nodes = 0;
    unsigned max_depth = 0;
    std::vector<std::uint64_t> failures;
    std::vector<std::pair<unsigned, unsigned>> deepest;
};

class Searcher {
public:
    Searcher(const BinaryCsp& csp, const SolverOptions& opts) : csp_(csp), opts_(opts) {
        const unsigned v = csp.variables();
        levels_.assign(v + 1, std::vector<Mask>(v, 0));
        assigned_.assign(v, 0);
        value_.assign(v, 0);
        result_.failures.assign(v, 0);
    }

    /// Runs the subtree below the root assignment x = a given root domains.
    TaskResult run_forward(const std::vector<Mask>& root, unsigned x, unsigned a) {
        levels_[0] = root;
        if (assign_forward(0, x, a)) dfs_forward(1);
        return std::move(result_);
    }

    TaskResult run_plain(unsigned a) {
        if (csp_.variables() == 0) return std::move(result_);
        ++result_.nodes;
        if (((csp_.initial_domain(0) >> a) & 1u) == 0) return std::move(result_);
        push(0, a);
        dfs_plain(1);
        return std::move(result_);
    }

private:
    void push(unsigned x, unsigned a) {
        assigned_[x] = 1;
        value_[x] = a;
        trail_.emplace_back(x, a);
        if (trail_.size() > result_.max_depth || result_.deepest.empty()) {
            result_.max_depth = static_cast<unsigned>(trail_.size());
            result_.deepest = trail_;
        }
    }
    void pop() {
        assigned_[trail_.back().first] = 0;
        trail_.pop_back();
    }

    bool record_solution() {
        result_.solutions.push_back(value_);
        return !opts_.enumerate_all;
    }

    // Assigns x = a on top of levels_[depth] and writes the filtered domains to levels_[depth + 1].
    bool assign_forward(unsigned depth, unsigned x, unsigned a) {
        ++result_.nodes;
        const auto& cur = levels_[depth];
        auto& next = levels_[depth + 1];
        next = cur;
        next[x] = static_cast<Mask>(1u << a);
        push(x, a);
        for (unsigned y = 0; y < csp_.variables(); ++y) {
            if (assigned_[y]) continue;
            next[y] &= csp_.supports(x, a, y);
            if (next[y] == 0) {
                ++result_.failures[y];
                pop();
                return false;
            }
        }
        return true;
    }

    // Returns true when the search should stop.
    bool dfs_forward(unsigned depth) {
        const unsigned v = csp_.variables();
        if (depth == v) return record_solution();
        const auto& cur = levels_[depth];
        unsigned best = v;
        int best_size = 99;
        for (unsigned y = 0; y < v; ++y) {
            if (assigned_[y]) continue;
            const int size = std::popcount(cur[y]);
            if (size < best_size) {
                best_size = size;
                best = y;
            }
        }
        Mask dom = cur[best];
        while (dom) {
            const unsigned a = static_cast<unsigned>(std::countr_zero(dom));
            dom &= static_cast<Mask>(dom - 1);
            if (!assign_forward(depth, best, a)) continue;
            const bool stop = dfs_forward(depth + 1);
            pop();
            if (stop) return true;
        }
        return false;
    }

    bool dfs_plain(unsigned x) {
        if (x == csp_.variables()) return record_solution();
        for (unsigned a = 0; a < csp_.domain_size(); ++a) {
            ++result_.nodes;
            if (((csp_.initial_domain(x) >> a) & 1u) == 0) continue;
            bool ok = true;
            for (unsigned y = 0; y < x && ok; ++y) ok = csp_.compatible(y, value_[y], x, a);
            if (!ok) {
                ++result_.failures[x];
                continue;
            }
            push(x, a);
            const bool stop = dfs_plain(x + 1);
            pop();
            if (stop) return true;
        }
        return false;
    }

    const BinaryCsp& csp_;
    const SolverOptions& opts_;
    std::vector<std::vector<Mask>> levels_;
    std::vector<char> assigned_;
    std::vector<unsigned> value_;
    std::vector<std::pair<unsigned, unsigned>> trail_;
    TaskResult result_;
};

// Arc consistency (AC-3 style sweep to a fixpoint). Returns the wiped pair on failure.
std::optional<std::pair<unsigned, unsigned>> arc_consistency(const BinaryCsp& csp, std::vector<Mask>& dom) {
    const unsigned v = csp.variables();
    bool changed = true;
    while (changed) {
        changed = false;
        for (unsigned x = 0; x < v; ++x) {
            for (unsigned y = 0; y < v; ++y) {
                if (x == y) continue;
                Mask keep = 0;
                Mask d = dom[x];
                while (d) {
                    const unsigned a = static_cast<unsigned>(std::countr_zero(d));
                    d &= static_cast<Mask>(d - 1);
                    if (csp.supports(x, a, y) & dom[y]) keep |= static_cast<Mask>(1u << a);
                }
                if (keep != dom[x]) {
                    dom[x] = keep;
                    changed = true;
                    if (keep == 0) return std::make_pair(x, y);
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace

SearchOutcome solve(const BinaryCsp& csp, const SolverOptions& opts) {
    Stopwatch clock;
    SearchOutcome out;
    const unsigned v = csp.variables();
    out.failures.assign(v, 0);

    struct Task {
        unsigned x;
        unsigned a;
    };
    std::vector<Task> tasks;
    std::vector<Mask> root(v);
    for (unsigned x = 0; x < v; ++x) root[x] = csp.initial_domain(x);

    if (v == 0) {
        out.status = SearchStatus::sat;
        out.elapsed_ms = clock.elapsed_ms();
        return out;
    }
    if (opts.propagate) {
        for (unsigned x = 0; x < v; ++x) {
            if (root[x] == 0) out.root_wipeout = std::make_pair(x, x);
        }
        if (!out.root_wipeout) out.root_wipeout = arc_consistency(csp, root);
        if (out.root_wipeout) {
            out.failures[out.root_wipeout->first] = 1;
            out.elapsed_ms = clock.elapsed_ms();
            return out;
        }
        unsigned first = 0;
        for (unsigned x = 1; x < v; ++x) {
            if (std::popcount(root[x]) < std::popcount(root[first])) first = x;
        }
        for (unsigned a = 0; a < csp.domain_size(); ++a) {
            if ((root[first] >> a) & 1u) tasks.push_back({first, a});
        }
    } else {
        for (unsigned a = 0; a < csp.domain_size(); ++a) tasks.push_back({0, a});
    }

    std::vector<TaskResult> results(tasks.size());
    parallel_for(tasks.size(), opts.workers, [&](std::size_t k) {
        Searcher s(csp, opts);
        results[k] = opts.propagate ? s.run_forward(root, tasks[k].x, tasks[k].a) : s.run_plain(tasks[k].a);
    });

    for (auto& r : results) {
        out.nodes += r.nodes;
        for (unsigned x = 0; x < v; ++x) out.failures[x] += r.failures[x];
        if (r.max_depth > out.max_depth) {
            out.max_depth = r.max_depth;
            out.deepest = r.deepest;
        }
        for (auto& sol : r.solutions) out.solutions.push_back(std::move(sol));
    }
    if (!out.solutions.empty()) {
        out.status = SearchStatus::sat;
        out.assignment = out.solutions.front();
        out.recheck_passed = true;
        for (const auto& sol : out.solutions) out.recheck_passed = out.recheck_passed && csp.satisfies(sol);
        if (opts.enumerate_all) {
            std::sort(out.solutions.begin(), out.solutions.end());
        } else {
            out.solutions.clear();
        }
    }
    out.elapsed_ms = clock.elapsed_ms();
    return out;
}

CspInstance build_instance(const Subspace& s, PairMode mode, bool include_self) {
    if (s.n() != 8 || s.dim() != 3 || s.rank() != 3) {
        throw std::invalid_argument("build_instance: need a 3-dim subspace of K_8");
    }
    const auto triangles = triangles_of(8);
    const unsigned vars = static_cast<unsigned>(triangles.size());
    CspInstance inst{BinaryCsp(vars, 7), triangles, {}, {}, mode, include_self};
    for (unsigned k = 1; k < 8; ++k) inst.values.push_back(k);
    for (const auto& t : triangles) {
        std::vector<EdgeSet> row;
        const EdgeSet te = t.edges(8);
        for (unsigned k : inst.values) row.push_back(te ^ s.member(k));
        inst.candidates.push_back(std::move(row));
    }
    // Candidates of different variables must sit in different cosets of V.
    std::vector<EdgeSet> cosets;
    for (const auto& t : triangles) cosets.push_back(coset_of(t.edges(8), s));
    std::sort(cosets.begin(), cosets.end());
    if (std::adjacent_find(cosets.begin(), cosets.end()) != cosets.end()) {
        throw std::logic_error("build_instance: two triangles share a coset of V");
    }
    for (unsigned x = 0; x < vars; ++x) {
        for (unsigned y = x + 1; y < vars; ++y) {
            for (unsigned a = 0; a < 7; ++a) {
                for (unsigned b = 0; b < 7; ++b) {
                    inst.csp.set_compatible(x, a, y, b, pair_ok(inst.candidates[x][a], inst.candidates[y][b], mode));
                }
            }
        }
        if (include_self) {
            Mask allowed = 0;
            for (unsigned a = 0; a < 7; ++a) {
                if (pair_ok(inst.candidates[x][a], inst.candidates[x][a], mode)) allowed |= static_cast<Mask>(1u << a);
            }
            inst.csp.restrict_initial(x, allowed);
        }
    }
    return inst;
}

std::optional<std::vector<unsigned>> shrink_unsat_core(const BinaryCsp& csp, const std::vector<std::uint64_t>& failures,
                                                       std::uint64_t node_budget) {
    std::vector<unsigned> keep(csp.variables());
    std::iota(keep.begin(), keep.end(), 0u);
    // Try dropping the variables least involved in failures first.
    std::vector<unsigned> order = keep;
    std::stable_sort(order.begin(), order.end(), [&](unsigned a, unsigned b) { return failures[a] < failures[b]; });
    std::uint64_t spent = 0;
    for (unsigned drop : order) {
        std::vector<unsigned> trial;
        for (unsigned x : keep) {
            if (x != drop) trial.push_back(x);
        }
        const auto sub = solve(csp.restrict_to(trial));
        spent += sub.nodes;
        if (spent > node_budget) return std::nullopt;
        if (sub.status == SearchStatus::unsat) keep = std::move(trial);
    }
    return keep;
}

Certificate emit_unsat_report(const CspInstance& inst, const SearchOutcome& out) {
    // Node budget for the best-effort core; the core is omitted when it runs out.
    constexpr std::uint64_t kCoreBudget = 2'000'000;
    auto cert = Certificate::begin("thm-main-uniqueness");
    cert.inputs["mode"] = to_string(inst.mode);
    cert.inputs["include_self"] = inst.include_self;
    cert.inputs["variables"] = inst.csp.variables();
    cert.inputs["domain_size"] = inst.csp.domain_size();
    cert.counters["search_status"] = out.status == SearchStatus::unsat ? "UNSAT" : "SAT";
    cert.counters["nodes"] = out.nodes;
    cert.counters["max_depth"] = out.max_depth;
    Json deepest = Json::array();
    for (const auto& [x, a] : out.deepest) {
        deepest.push_back({{"triangle", inst.triangles[x].to_string()}, {"k", inst.values[a]}});
    }
    cert.counters["deepest_partial_assignment"] = deepest;
    Json failures = Json::object();
    for (unsigned x = 0; x < out.failures.size(); ++x) {
        if (out.failures[x]) failures[inst.triangles[x].to_string()] = out.failures[x];
    }
    cert.counters["failures_by_triangle"] = failures;
    if (out.root_wipeout) {
        cert.counters["root_wipeout"] = {{"wiped", inst.triangles[out.root_wipeout->first].to_string()},
                                         {"by", inst.triangles[out.root_wipeout->second].to_string()}};
    }
    if (out.status == SearchStatus::unsat && out.failures.size() == inst.csp.variables()) {
        if (const auto core = shrink_unsat_core(inst.csp, out.failures, kCoreBudget)) {
            Json names = Json::array();
            for (unsigned x : *core) names.push_back(inst.triangles[x].to_string());
            cert.counters["unsat_core"] = names;
        }
    }
    if (out.status == SearchStatus::sat) {
        Json assignment = Json::array();
        for (unsigned x = 0; x < out.assignment.size(); ++x) {
            assignment.push_back({{"triangle", inst.triangles[x].to_string()},
                                  {"k", inst.values[out.assignment[x]]},
                                  {"graph", inst.candidates[x][out.assignment[x]].canonical()}});
        }
        // Re-check from the graphs themselves, not from the compatibility table.
        bool recheck = out.assignment.size() == inst.candidates.size();
        for (unsigned x = 0; recheck && x < out.assignment.size(); ++x) {
            const auto& gx = inst.candidates[x][out.assignment[x]];
            if (inst.include_self) recheck = pair_ok(gx, gx, inst.mode);
            for (unsigned y = x + 1; recheck && y < out.assignment.size(); ++y) {
                recheck = pair_ok(gx, inst.candidates[y][out.assignment[y]], inst.mode);
            }
        }
        cert.counters["independent_recheck"] = recheck;
        cert.falsify({{"assignment", assignment}, {"independent_recheck", recheck}});
    }
    cert.conclude();
    cert.elapsed_ms = out.elapsed_ms;
    return cert;
}

}  // namespace cocube
