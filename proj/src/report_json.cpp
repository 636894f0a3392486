#include <json.hpp>

#include "heckelab/verify.hpp"

namespace heckelab {
namespace verify {

std::string to_json(const VerificationReport& report, int indent) {
    nlohmann::json j;
    j["schema"] = 1;
    j["claim"] = claim_name(report.claim);
    j["parameters"] = report.parameters;
    j["verdict"] = verdict_name(report.verdict);
    nlohmann::json witnesses = nlohmann::json::array();
    for (const auto& w : report.witnesses) witnesses.push_back(w.fields);
    j["witnesses"] = std::move(witnesses);
    j["notes"] = report.notes;
    j["runtime_ms"] = report.runtime_ms;
    return j.dump(indent);
}

VerificationReport report_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (!j.contains("schema") || j.at("schema").get<int>() != 1)
        throw std::runtime_error("report: unsupported schema version");
    VerificationReport rep;
    rep.claim = claim_from_name(j.at("claim").get<std::string>());
    rep.parameters = j.at("parameters").get<std::map<std::string, std::string>>();
    rep.verdict = verdict_from_name(j.at("verdict").get<std::string>());
    for (const auto& w : j.at("witnesses"))
        rep.witnesses.push_back({w.get<std::map<std::string, std::string>>()});
    rep.notes = j.at("notes").get<std::map<std::string, std::string>>();
    rep.runtime_ms = j.at("runtime_ms").get<std::int64_t>();
    return rep;
}

}  // namespace verify
}  // namespace heckelab
