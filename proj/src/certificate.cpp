#include "cocube/certificate.hpp"

#include <stdexcept>

#include "cocube/registry.hpp"

namespace cocube {

std::string_view to_string(Status s) noexcept {
    switch (s) {
        case Status::verified: return "verified";
        case Status::falsified: return "falsified";
        case Status::error: return "error";
    }
    return "error";
}

Status status_from_string(std::string_view s) {
    if (s == "verified") return Status::verified;
    if (s == "falsified") return Status::falsified;
    if (s == "error") return Status::error;
    throw std::invalid_argument("unknown certificate status: " + std::string(s));
}

Certificate Certificate::begin(std::string_view claim_id) {
    if (find_claim(claim_id) == nullptr) throw std::invalid_argument("unregistered claim id: " + std::string(claim_id));
    Certificate c;
    c.claim_id = std::string(claim_id);
    return c;
}

void Certificate::falsify(Json witness) {
    status = Status::falsified;
    if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(witness));
    counters["falsifications"] = counters.value("falsifications", 0) + 1;
}

void Certificate::conclude() {
    if (status != Status::falsified) status = Status::verified;
}

Json Certificate::to_json() const {
    if (status == Status::falsified && witnesses.empty()) {
        throw std::logic_error("falsified certificate " + claim_id + " has no witness");
    }
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["claim_id"] = claim_id;
    j["inputs"] = inputs;
    j["status"] = std::string(to_string(status));
    j["witnesses"] = witnesses;
    j["counters"] = counters;
    j["seed"] = seed ? Json(*seed) : Json(nullptr);
    j["elapsed_ms"] = elapsed_ms;
    j["tool_version"] = std::string(kToolVersion);
    return j;
}

Certificate Certificate::from_json(const Json& j) {
    if (j.at("schema_version").get<int>() != kSchemaVersion) throw std::invalid_argument("certificate schema mismatch");
    Certificate c = begin(j.at("claim_id").get<std::string>());
    c.inputs = j.at("inputs");
    c.status = status_from_string(j.at("status").get<std::string>());
    c.witnesses = j.at("witnesses");
    c.counters = j.at("counters");
    if (!j.at("seed").is_null()) c.seed = j.at("seed").get<std::uint64_t>();
    c.elapsed_ms = j.at("elapsed_ms").get<std::int64_t>();
    return c;
}

Json make_bundle(const std::vector<Certificate>& certificates) {
    Json bundle;
    bundle["schema_version"] = kSchemaVersion;
    bundle["tool_version"] = std::string(kToolVersion);
    Json list = Json::array();
    bool all_ok = true;
    for (const auto& c : certificates) {
        list.push_back(c.to_json());
        all_ok = all_ok && c.ok();
    }
    bundle["certificates"] = std::move(list);
    bundle["status"] = all_ok ? "verified" : "falsified";
    return bundle;
}

}  // namespace cocube
