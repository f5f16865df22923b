#pragma once

// One-shot verification: every cheap claim check in a fixed order, plus a
// sabotage harness that reruns the antilinear and cube checks against a
// corrupted (1234) table or a wrong inner-product convention.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cocube/antilinear.hpp"
#include "cocube/certificate.hpp"
#include "cocube/gf2.hpp"

namespace cocube {

/// A single deliberate fault. `none()` is the honest configuration.
struct Sabotage {
    std::string name = "none";
    /// (index, new value) written into the example permutation's image table.
    std::optional<std::pair<unsigned, unsigned>> entry;
    gf2::BilinearForm form = gf2::BilinearForm::standard(3);

    static Sabotage none();
    /// Throws unless index, value < 8 and value differs from the (1234) table.
    static Sabotage table_entry(unsigned index, unsigned value);
    /// "drop0", "drop1", "drop2" (that coordinate no longer contributes),
    /// "reverse" (<x,y> pairs bit t with bit 2-t) or "shift" (bit t with bit t+1 mod 3).
    static Sabotage inner_product(std::string_view variant);
    /// "none", "entry:I=V" or "ip:VARIANT".
    static Sabotage parse(std::string_view text);
    /// Every single-entry flip of the (1234) table followed by every inner-product variant.
    static std::vector<Sabotage> all();

    [[nodiscard]] Perm8::Table apply(Perm8::Table table) const;
};

/// The eight Fano permutations from the reference list, sorted.
[[nodiscard]] std::vector<Perm8> reference_fano();

// Individual claim checks. Exceptions inside a check become Status::error.
[[nodiscard]] Certificate check_gf2_regular_count();
[[nodiscard]] Certificate check_cube_recognition(std::uint64_t samples, std::uint64_t seed);
[[nodiscard]] Certificate check_fano_count(const gf2::BilinearForm& form);
[[nodiscard]] Certificate check_antilinear_count(const gf2::BilinearForm& form, unsigned workers);
/// Line sums and signature of a raw table that should be (1234).
[[nodiscard]] Certificate check_antilinear_example(const Perm8::Table& table, const gf2::BilinearForm& form);
/// "lemma-V" for one raw image table, C(i,j) = table[i ^ j].
[[nodiscard]] Certificate check_lemma_v(const Perm8::Table& table, const gf2::BilinearForm& form);
/// "lemma-V" for all 1344 antilinear permutations.
[[nodiscard]] Certificate check_lemma_v_all(const gf2::BilinearForm& form, unsigned workers);
[[nodiscard]] Certificate check_signature(const gf2::BilinearForm& form, unsigned workers);
[[nodiscard]] Certificate check_fano_orth(const gf2::BilinearForm& form);
/// Kernel-system sizes by formula at n = 8 and by enumeration at n = 4.
[[nodiscard]] Certificate check_family_size();

struct PipelineOptions {
    bool fast = false;
    unsigned workers = 1;
    /// Permutation used for the single-permutation lemma-V check and the coset cap.
    std::string perm = "(1234)";
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
    Sabotage sabotage;
};

struct PipelineResult {
    std::vector<Certificate> certificates;
    /// 0 all verified, 1 something falsified, 2 an error without a falsification.
    int exit_code = 0;

    /// With `reproducible`, elapsed times are zeroed so that reruns are byte-identical.
    [[nodiscard]] Json bundle(bool reproducible) const;
};

[[nodiscard]] PipelineResult run_verify_all(const PipelineOptions& opts);

/// Runs the checks behind the antilinear, signature, Fano and lemma-V claims under
/// a fault; returns the claim ids that did not verify. With `stop_at_first` the
/// run ends at the first one.
[[nodiscard]] std::vector<std::string> sabotage_failures(const Sabotage& s, unsigned workers, bool stop_at_first);

[[nodiscard]] int exit_code_for(const std::vector<Certificate>& certs);

}  // namespace cocube
