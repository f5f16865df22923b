#include "cocube/registry.hpp"

#include <array>

namespace cocube {

namespace {

constexpr std::array<ClaimInfo, 18> kClaims{{
    {"gf2-regular-count", "gf2",
     "GL(3,2) has 168 and GL(4,2) has 20160 elements; every enumerated map is invertible"},
    {"cube-recognition", "graphs",
     "the degree/bipartite cube test agrees with an explicit isomorphism search against Q3"},
    {"lemma-antilinear-example", "antilinear",
     "(1234) is antilinear with line sums 4,6,2,5,1,3,7 and signature 1->4, 2->6, 4->5"},
    {"lemma-fano-count", "antilinear", "exactly eight Fano permutations exist, matching the published list"},
    {"cor-antilinear-count", "antilinear",
     "1344 antilinear permutations, in bijection with (regular map, Fano permutation) pairs"},
    {"lemma-signature", "antilinear",
     "the signature of any permutation fixing 0 is linear, and regular when the permutation is antilinear"},
    {"lemma-fano-orth", "antilinear",
     "<x,p(x)> = 1 and <x,p(y)> ^ <y,p(x)> = 1 for every Fano p and distinct nonzero x, y"},
    {"lemma-V", "cube_subspace",
     "the subspace built from an antilinear permutation has cube complements for all nonzero members"},
    {"noext-triangle-regularity", "cube_subspace",
     "every triangle's colours form a regular matrix, i.e. no nonzero member has a triangle in its complement"},
    {"noext-n-bound", "cube_subspace",
     "a triangle-regular Z_2^3 edge colouring has distinct nonzero colours at every vertex, forcing n <= 8"},
    {"thm-main-coset-cap", "families",
     "a non-bipartite-agreeing family meets each sampled coset of V at most 2^(dim-3) times; same-coset "
     "agreements are cubes"},
    {"thm-main-family-size", "families", "kernel systems have 2^(C(n,2)-3) members"},
    {"thm-main-uniqueness", "uniqueness_search",
     "no choice of nonzero v_T for all 56 triangles gives a pairwise compatible family"},
    {"useful-span", "useful_sets", "usefulness for triangles survives translation and linear span"},
    {"useful-coset-cap", "useful_sets",
     "a triangle-agreeing family meets every sampled translate of a useful set at most 2^(m-3) times"},
    {"isets-classification", "useful_sets",
     "every closure-satisfying I contains a 3-dim subspace minus 0 or is a GL(4,2) image of I0"},
    {"n9-nonexistence", "useful_sets", "no Z_2^4 colouring of K9 satisfies the I0 triangle constraints"},
    {"n8-control", "useful_sets",
     "the same colouring search on K8 with Z_2^3 and all nonzero constraints finds a cube-complement subspace"},
}};

constexpr std::array<std::string_view, 7> kModules{
    "gf2", "graphs", "antilinear", "cube_subspace", "families", "uniqueness_search", "useful_sets",
};

}  // namespace

std::span<const ClaimInfo> claim_registry() noexcept { return kClaims; }

const ClaimInfo* find_claim(std::string_view id) noexcept {
    for (const auto& c : kClaims) {
        if (c.id == id) return &c;
    }
    return nullptr;
}

std::span<const std::string_view> registry_modules() noexcept { return kModules; }

}  // namespace cocube
