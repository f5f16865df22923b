#pragma once

// Exhaustive search for Z_2^m edge colourings of K_n in which no triangle has
// all three colours orthogonal to a constraint vector s, for every s in a fixed
// constraint set S. With S = I0 on K_9 this is the nonexistence search for
// four-dimensional useful subspaces; with S = all nonzero vectors on K_8 and
// m = 3 it is the control run that must rediscover the cube-complement colourings.
//
// Edges are assigned vertex by vertex: vertex t's edges to 0..t-1 before vertex
// t+1's, so every completed prefix is a fully constrained K_t. The colours on
// the star of vertex 0 are put in a canonical form under vertex relabelling and
// under the linear maps L whose transpose preserves S.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cocube/certificate.hpp"
#include "cocube/cube_subspace.hpp"
#include "cocube/gf2.hpp"

namespace cocube {

class ColoringProblem {
public:
    ColoringProblem(unsigned n, unsigned m, std::vector<unsigned> constraints);

    [[nodiscard]] unsigned n() const noexcept { return n_; }
    [[nodiscard]] unsigned m() const noexcept { return m_; }
    [[nodiscard]] const std::vector<unsigned>& constraints() const noexcept { return constraints_; }

    /// Colours z that may close a triangle whose other two edges have colours x and y.
    [[nodiscard]] std::uint16_t allowed(unsigned x, unsigned y) const noexcept { return allowed_[x * 16 + y]; }
    [[nodiscard]] bool triangle_ok(unsigned x, unsigned y, unsigned z) const noexcept {
        return (allowed(x, y) >> z) & 1u;
    }
    /// Linear maps L with L^T(S) = S, as value tables; the identity is first.
    [[nodiscard]] const std::vector<std::vector<std::uint8_t>>& symmetries() const noexcept { return symmetries_; }

    /// The vertex-by-vertex edge order.
    [[nodiscard]] std::vector<Edge> edge_order() const;

    /// Direct check of every triangle against every constraint vector.
    [[nodiscard]] bool valid(const EdgeColoring& c) const;

private:
    unsigned n_;
    unsigned m_;
    std::vector<unsigned> constraints_;
    std::vector<std::uint16_t> allowed_;
    std::vector<std::vector<std::uint8_t>> symmetries_;
};

/// K_9, Z_2^4, constraints I0 = weight-1 and weight-2 vectors.
[[nodiscard]] ColoringProblem n9_problem();
/// K_8, Z_2^3, all seven nonzero constraints.
[[nodiscard]] ColoringProblem n8_control_problem();

struct ColoringSearchOptions {
    unsigned workers = 1;
    /// Vertices fixed in the root enumeration; root branches are the valid colourings of K_r.
    unsigned root_vertices = 4;
    bool stop_at_first = false;
    /// Off: no canonical form at all. Only useful as an oracle on small instances.
    bool symmetry_breaking = true;
    /// Checkpoint file; empty disables checkpointing.
    std::filesystem::path checkpoint;
    bool resume = false;
    /// Stop after this many branches finish in this session (0 = no limit). Used to
    /// exercise resumption.
    std::uint64_t max_branches = 0;
    /// Solutions rejected by this predicate are counted and the search goes on.
    std::function<bool(const EdgeColoring&)> accept;
};

struct ColoringOutcome {
    bool complete = false;  // false if stopped by max_branches
    bool found = false;
    std::optional<EdgeColoring> coloring;
    std::uint64_t nodes = 0;  // root enumeration + all finished branches
    std::uint64_t root_nodes = 0;
    std::uint64_t rejected = 0;  // solutions turned down by the accept predicate
    std::uint64_t branches = 0;
    std::uint64_t branches_done = 0;
    std::uint64_t branches_resumed = 0;
    std::int64_t elapsed_ms = 0;
};

class CheckpointError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

[[nodiscard]] ColoringOutcome coloring_search(const ColoringProblem& problem, const ColoringSearchOptions& opts);

/// The K_9 nonexistence run.
[[nodiscard]] ColoringOutcome n9_search(const ColoringSearchOptions& opts);

/// First K_8 colouring whose subspace is co-cube. Triangle-regular colourings whose
/// complements are 3-regular triangle-free but not bipartite are counted as rejected.
[[nodiscard]] ColoringOutcome n8_control_search(ColoringSearchOptions opts);

/// "n9-nonexistence" or "n8-control" depending on the problem.
[[nodiscard]] Certificate coloring_certificate(const ColoringProblem& problem, const ColoringOutcome& out);

}  // namespace cocube
