#pragma once

// Sets of edge-space vectors that are useful for triangles, the I-set
// classification over Z_2^4, and the family-cap check for useful sets.

#include <cstdint>
#include <vector>

#include "cocube/certificate.hpp"
#include "cocube/cube_subspace.hpp"
#include "cocube/families.hpp"
#include "cocube/gf2.hpp"
#include "cocube/graphs.hpp"

namespace cocube {

/// 2^m distinct edge sets on the same vertex count, m >= 3.
class CandidateSet {
public:
    /// Throws unless the size is a power of two >= 8 and the members are distinct.
    CandidateSet(unsigned n, std::vector<EdgeSet> members);
    static CandidateSet from_subspace(const Subspace& s);

    [[nodiscard]] unsigned n() const noexcept { return n_; }
    [[nodiscard]] unsigned log_size() const noexcept;
    [[nodiscard]] const std::vector<EdgeSet>& members() const noexcept { return members_; }
    [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }

    /// w ^ member for every member.
    [[nodiscard]] CandidateSet translate(const EdgeSet& w) const;

private:
    unsigned n_;
    std::vector<EdgeSet> members_;
};

/// Every subset of 2^(m-3) + 1 members has a pair whose agreement is triangle-free.
/// Supported for m = 3 (pairs) and m = 4 (triples); larger m throws std::domain_error.
[[nodiscard]] bool is_useful(const CandidateSet& cs);

/// XOR-closure of the members together with the empty graph.
[[nodiscard]] CandidateSet span(const CandidateSet& cs);

/// I-sets are 16-bit masks over Z_2^4; bit 0 (the zero vector) is never set.
using ISet = std::uint16_t;

/// Indices of weight 1 or 2.
[[nodiscard]] ISet iset_weight_one_two();
/// For all distinct nonzero x, y outside I: x ^ y is in I.
[[nodiscard]] bool closure_holds(ISet i);
/// Image of an I-set under a linear map.
[[nodiscard]] ISet apply_map(const gf2::GF2Map& map, ISet i);

enum class ISetClass { contains_subspace, equivalent_to_i0, neither };

struct ISetClassification {
    std::vector<ISet> closure_sets;  // ascending
    std::vector<ISetClass> classes;  // parallel to closure_sets
    std::uint64_t scanned = 0;
};

/// Fast path: hyperplane masks for containment and map-by-map testing over GL(4,2).
[[nodiscard]] ISetClassification classify_isets_direct(unsigned workers = 1);
/// Slow path: containment by enumerating spanning triples inside I; equivalence by
/// membership in the orbit of I0 grown from a generating set of GL(4,2).
[[nodiscard]] ISetClassification classify_isets_orbit();

/// "isets-classification": runs both paths and requires them to agree and to
/// leave no set unclassified.
[[nodiscard]] Certificate classify_isets(unsigned workers = 1);

struct UsefulCapOptions {
    std::uint64_t samples = 10000;
    std::uint64_t seed = 1;
};

/// "useful-coset-cap": for sampled translates g ^ cs, a triangle-agreeing family may
/// hold at most 2^(m-3) of the members. Explicit families additionally have every
/// translate through one of their members checked.
[[nodiscard]] Certificate coset_cap_for_useful(const CandidateSet& cs, const FamilySpec& f,
                                               const UsefulCapOptions& opts);

/// "useful-span": usefulness of cs, of a translate w ^ cs and of span(cs).
[[nodiscard]] Certificate verify_useful_span(const CandidateSet& cs, const EdgeSet& w);

}  // namespace cocube
