#pragma once

// Families of subgraphs of K_n: kernel systems, pair predicates, and the
// coset-partition bound against a subspace of the edge space.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cocube/certificate.hpp"
#include "cocube/cube_subspace.hpp"
#include "cocube/graphs.hpp"

namespace cocube {

struct Junta {
    Triangle triangle;
};

/// {G : G intersect T = T0}; T0 must be a subset of T's edges.
struct Triangulumvirate {
    Triangle triangle;
    EdgeSet kernel;
};

struct ExplicitFamily {
    std::vector<EdgeSet> members;  // sorted, no duplicates
};

class FamilySpec {
public:
    static FamilySpec junta(unsigned n, Triangle t);
    static FamilySpec triangulumvirate(unsigned n, Triangle t, EdgeSet kernel);
    /// Sorts the members; throws on duplicates or mixed vertex counts.
    static FamilySpec explicit_list(unsigned n, std::vector<EdgeSet> members);

    [[nodiscard]] unsigned n() const noexcept { return n_; }
    [[nodiscard]] const std::variant<Junta, Triangulumvirate, ExplicitFamily>& kind() const noexcept { return kind_; }
    [[nodiscard]] std::string describe() const;

private:
    FamilySpec(unsigned n, std::variant<Junta, Triangulumvirate, ExplicitFamily> kind)
        : n_(n), kind_(std::move(kind)) {}
    unsigned n_;
    std::variant<Junta, Triangulumvirate, ExplicitFamily> kind_;
};

enum class Structure { triangle, non_bipartite };
enum class Relation { intersecting, agreeing };

struct PairMode {
    Structure structure = Structure::non_bipartite;
    Relation relation = Relation::intersecting;
    friend bool operator==(const PairMode&, const PairMode&) = default;
};

[[nodiscard]] std::string to_string(PairMode mode);

/// Throws on vertex-count mismatch.
[[nodiscard]] bool family_contains(const FamilySpec& f, const EdgeSet& g);
/// Kernel systems: 2^(C(n,2)-3). Explicit lists: their length.
[[nodiscard]] std::uint64_t family_size(const FamilySpec& f);
/// Counts members by testing all 2^C(n,2) graphs; only for C(n,2) <= 24.
[[nodiscard]] std::uint64_t family_size_by_enumeration(const FamilySpec& f);

/// Whether the structure predicate holds for a single graph.
[[nodiscard]] bool structure_holds(const EdgeSet& g, Structure s) noexcept;
/// Applies the structure predicate to the intersection or agreement of the pair.
[[nodiscard]] bool pair_ok(const EdgeSet& g1, const EdgeSet& g2, PairMode mode);

/// Least member (slot-weighted integer order) of the coset g ^ S.
[[nodiscard]] EdgeSet coset_of(const EdgeSet& g, const Subspace& s);

struct CosetCapOptions {
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
};

/// "thm-main-coset-cap". Samples random cosets g ^ S (and, for explicit
/// families, every coset that holds a member), counts family members in each
/// and asserts at most 2^(dim-3). Same-coset pairs must have bipartite
/// agreement, and on K_8 with dim 3 that agreement must be a cube.
[[nodiscard]] Certificate verify_coset_cap(const FamilySpec& f, const Subspace& s, const CosetCapOptions& opts);

/// Exhaustive version over every coset; only for C(n,2) <= 24.
[[nodiscard]] Certificate verify_coset_cap_exhaustive(const FamilySpec& f, const Subspace& s);

/// The three perfect matchings of K_4 span a 3-dim subspace whose nonzero
/// members all have bipartite complements: the small-scale model of V.
[[nodiscard]] Subspace k4_matching_subspace();

}  // namespace cocube
