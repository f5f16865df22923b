#pragma once

// Machine-readable record of one verified (or falsified) claim.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace cocube {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;
inline constexpr std::string_view kToolVersion = "0.3.0";

enum class Status { verified, falsified, error };

[[nodiscard]] std::string_view to_string(Status s) noexcept;
[[nodiscard]] Status status_from_string(std::string_view s);

struct Certificate {
    std::string claim_id;
    Json inputs = Json::object();
    Status status = Status::error;
    Json witnesses = Json::array();
    Json counters = Json::object();
    std::optional<std::uint64_t> seed;
    std::int64_t elapsed_ms = 0;

    /// Starts a certificate for a registered claim; throws on an unknown id.
    static Certificate begin(std::string_view claim_id);

    [[nodiscard]] bool ok() const noexcept { return status == Status::verified; }

    /// Records a failure with its witness. Keeps at most `kMaxWitnesses`.
    void falsify(Json witness);
    /// Marks verified unless a witness has already falsified it.
    void conclude();

    /// Throws std::logic_error if a falsified certificate carries no witness.
    [[nodiscard]] Json to_json() const;
    static Certificate from_json(const Json& j);

    static constexpr std::size_t kMaxWitnesses = 16;
};

/// Bundle of certificates as written by the CLI.
[[nodiscard]] Json make_bundle(const std::vector<Certificate>& certificates);

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    [[nodiscard]] std::int64_t elapsed_ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace cocube
