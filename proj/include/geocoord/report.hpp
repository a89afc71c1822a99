#pragma once

// Text and JSON renderings of check reports.

#include "geocoord/checkers.hpp"

#include "json.hpp"

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace geocoord {

inline constexpr const char* kReportSchema = "geocoord.report/1";

/// Invocation data echoed into every report.
struct ReportContext {
    std::string theory;
    std::string witness;
    std::uint64_t seed = 0;
    /// Per finding, the `.fm` file holding its model (empty if not written).
    std::vector<std::string> model_files;
};

namespace detail {

inline nlohmann::ordered_json assignment_json(const Assignment& a) {
    auto out = nlohmann::ordered_json::object();
    for (const auto& [k, v] : a) out[k] = v;
    return out;
}

inline nlohmann::ordered_json report_body(const CheckReport& r, const std::vector<std::string>& files) {
    nlohmann::ordered_json j;
    j["check"] = r.check;
    j["verdict"] = to_string(r.verdict);
    j["summary"] = r.summary();
    auto findings = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < r.findings.size(); ++i) {
        const auto& f = r.findings[i];
        nlohmann::ordered_json fj;
        fj["sequent_id"] = f.sequent_id;
        fj["model_size"] = f.model_size;
        if (i < files.size() && !files[i].empty()) fj["model_file"] = files[i];
        else fj["model_file"] = nullptr;
        fj["assignment"] = assignment_json(f.assignment);
        fj["message"] = f.message;
        findings.push_back(std::move(fj));
    }
    j["findings"] = std::move(findings);
    j["warnings"] = r.warnings;
    j["stats"] = {{"models_checked", r.stats.models_checked},
                  {"max_size", r.stats.max_size},
                  {"models_per_size", r.stats.models_per_size}};
    if (!r.certificates.empty()) {
        auto certs = nlohmann::ordered_json::array();
        for (const auto& c : r.certificates) {
            nlohmann::ordered_json cj;
            cj["model_size"] = c.model_size;
            auto entries = nlohmann::ordered_json::array();
            for (const auto& e : c.entries) {
                nlohmann::ordered_json ej;
                ej["element"] = e.element;
                ej["evidence"] = to_string(e.evidence);
                auto ws = nlohmann::ordered_json::array();
                for (const auto& t : e.witnesses) ws.push_back({{"tag", t.tag}, {"tuple", t.tuple}});
                ej["witnesses"] = std::move(ws);
                entries.push_back(std::move(ej));
            }
            cj["entries"] = std::move(entries);
            certs.push_back(std::move(cj));
        }
        j["certificates"] = std::move(certs);
    }
    if (!r.parts.empty()) {
        auto parts = nlohmann::ordered_json::array();
        for (const auto& p : r.parts) parts.push_back(report_body(p, {}));
        j["parts"] = std::move(parts);
    }
    return j;
}

}  // namespace detail

inline nlohmann::ordered_json report_json(const CheckReport& r, const ReportContext& ctx) {
    nlohmann::ordered_json j;
    j["schema"] = kReportSchema;
    j["theory"] = ctx.theory;
    j["witness"] = ctx.witness;
    j["seed"] = ctx.seed;
    auto body = detail::report_body(r, ctx.model_files);
    for (auto& [k, v] : body.items()) j[k] = v;
    return j;
}

inline std::string report_text(const CheckReport& r, const ReportContext& ctx) {
    std::ostringstream out;
    out << r.check << " " << ctx.theory;
    if (!ctx.witness.empty()) out << " over " << ctx.witness;
    out << ": " << to_string(r.verdict) << " (" << r.summary() << ")\n";
    out << "  models checked: " << r.stats.models_checked << " [";
    for (std::size_t n = 0; n < r.stats.models_per_size.size(); ++n)
        out << (n ? " " : "") << n << ":" << r.stats.models_per_size[n];
    out << "]\n";
    for (std::size_t i = 0; i < r.findings.size(); ++i) {
        const auto& f = r.findings[i];
        out << "  counterexample " << f.sequent_id << " at size " << f.model_size;
        if (!f.assignment.empty()) {
            out << " with";
            for (const auto& [k, v] : f.assignment) out << " " << k << "=" << v;
        }
        out << ": " << f.message << "\n";
        if (i < ctx.model_files.size() && !ctx.model_files[i].empty()) out << "    model: " << ctx.model_files[i] << "\n";
    }
    for (const auto& w : r.warnings) out << "  warning: " << w << "\n";
    for (const auto& p : r.parts) out << "  " << p.check << ": " << to_string(p.verdict) << " (" << p.summary() << ")\n";
    return out.str();
}

}  // namespace geocoord
