#pragma once

// Binary constraint search over small domains, and the 56-triangle instance:
// pick a nonzero member v_T of V for every triangle T of K_8 so that the graphs
// T ^ v_T are pairwise compatible.

#include <cstdint>
#include <optional>
#include <vector>

#include "cocube/certificate.hpp"
#include "cocube/cube_subspace.hpp"
#include "cocube/families.hpp"
#include "cocube/graphs.hpp"

namespace cocube {

/// Binary CSP with at most 8 values per variable. Constraints are stored as
/// support masks: supports(x, a, y) is the set of values of y compatible with x = a.
class BinaryCsp {
public:
    using Mask = std::uint8_t;
    static constexpr unsigned kMaxDomain = 8;

    BinaryCsp(unsigned variables, unsigned domain_size);

    [[nodiscard]] unsigned variables() const noexcept { return vars_; }
    [[nodiscard]] unsigned domain_size() const noexcept { return dom_; }
    [[nodiscard]] Mask full_domain() const noexcept { return static_cast<Mask>((1u << dom_) - 1); }

    [[nodiscard]] Mask supports(unsigned x, unsigned a, unsigned y) const noexcept {
        return support_[(x * dom_ + a) * vars_ + y];
    }
    [[nodiscard]] bool compatible(unsigned x, unsigned a, unsigned y, unsigned b) const noexcept {
        return (supports(x, a, y) >> b) & 1u;
    }
    /// Sets both directions of the (x,a)-(y,b) entry.
    void set_compatible(unsigned x, unsigned a, unsigned y, unsigned b, bool ok);

    [[nodiscard]] Mask initial_domain(unsigned x) const { return initial_.at(x); }
    void restrict_initial(unsigned x, Mask allowed) { initial_.at(x) &= allowed; }

    [[nodiscard]] bool is_symmetric() const;
    /// Full pairwise re-check of a complete assignment, independent of the solver.
    [[nodiscard]] bool satisfies(const std::vector<unsigned>& assignment) const;

    /// Renames variables: new variable k is old variable order[k].
    [[nodiscard]] BinaryCsp permute_variables(const std::vector<unsigned>& order) const;
    /// Renames values: new value j is old value order[j].
    [[nodiscard]] BinaryCsp permute_values(const std::vector<unsigned>& order) const;
    /// Restriction to the listed variables (in that order).
    [[nodiscard]] BinaryCsp restrict_to(const std::vector<unsigned>& vars) const;

private:
    unsigned vars_;
    unsigned dom_;
    std::vector<Mask> support_;
    std::vector<Mask> initial_;
};

struct SolverOptions {
    /// Arc consistency at the root plus forward checking. Off = plain chronological backtracking
    /// in static variable order.
    bool propagate = true;
    /// Collect every solution instead of stopping at the first.
    bool enumerate_all = false;
    /// Root branches are distributed over this many threads.
    unsigned workers = 1;
};

enum class SearchStatus { unsat, sat };

struct SearchOutcome {
    SearchStatus status = SearchStatus::unsat;
    std::vector<unsigned> assignment;  // first solution, if any
    std::vector<std::vector<unsigned>> solutions;  // enumerate_all only; sorted
    std::uint64_t nodes = 0;
    unsigned max_depth = 0;
    /// Domain wipe-outs suffered by each variable.
    std::vector<std::uint64_t> failures;
    /// Deepest partial assignment as (variable, value) pairs in assignment order.
    std::vector<std::pair<unsigned, unsigned>> deepest;
    /// Set when arc consistency alone empties a domain: (wiped variable, last supporting variable).
    std::optional<std::pair<unsigned, unsigned>> root_wipeout;
    bool recheck_passed = true;
    std::int64_t elapsed_ms = 0;
};

/// Complete search. UNSAT means the whole space was exhausted. Results do not depend on
/// the worker count.
[[nodiscard]] SearchOutcome solve(const BinaryCsp& csp, const SolverOptions& opts = {});

struct CspInstance {
    BinaryCsp csp;
    std::vector<Triangle> triangles;              // variable order
    std::vector<unsigned> values;                 // value index -> k in Z_2^3 \ {0}
    std::vector<std::vector<EdgeSet>> candidates;  // [variable][value] = T ^ v_k
    PairMode mode;
    bool include_self = false;
};

/// Builds the compatibility tables for a 3-dim co-cube subspace on K_8.
[[nodiscard]] CspInstance build_instance(const Subspace& s, PairMode mode, bool include_self);

/// "thm-main-uniqueness".
[[nodiscard]] Certificate emit_unsat_report(const CspInstance& inst, const SearchOutcome& out);

/// Greedy deletion of variables while the instance stays UNSAT; each trial is a
/// full solve. Returns the surviving variables, or nothing if the budget runs out first.
[[nodiscard]] std::optional<std::vector<unsigned>> shrink_unsat_core(const BinaryCsp& csp,
                                                                     const std::vector<std::uint64_t>& failures,
                                                                     std::uint64_t node_budget);

}  // namespace cocube
