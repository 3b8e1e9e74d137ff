#include "fenchel/report.hpp"

#include <nlohmann/json.hpp>

namespace fenchel {

const char* to_string(Relation r) {
    switch (r) {
        case Relation::Eq: return "eq";
        case Relation::Le: return "le";
        case Relation::Ge: return "ge";
        case Relation::Equiv: return "equiv";
        case Relation::Value: return "value";
    }
    return "?";
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::NotApplicable: return "not-applicable";
    }
    return "?";
}

LawReport checked_report(std::string law, std::string instance, Relation rel,
                         ExtReal lhs, ExtReal rhs, std::string note) {
    bool ok = true;
    switch (rel) {
        case Relation::Eq: ok = lhs == rhs; break;
        case Relation::Le: ok = lhs <= rhs; break;
        case Relation::Ge: ok = lhs >= rhs; break;
        case Relation::Equiv: ok = lhs == rhs; break;
        case Relation::Value: ok = true; break;
    }
    return LawReport{std::move(law), std::move(instance), rel, std::move(lhs), std::move(rhs),
                     ok ? Verdict::Pass : Verdict::Fail, std::move(note)};
}

LawReport equiv_report(std::string law, std::string instance, bool lhs, bool rhs,
                       std::string note) {
    return checked_report(std::move(law), std::move(instance), Relation::Equiv,
                          ExtReal(lhs ? 1 : 0), ExtReal(rhs ? 1 : 0), std::move(note));
}

LawReport na_report(std::string law, std::string instance, std::string why) {
    return LawReport{std::move(law), std::move(instance), Relation::Eq,
                     ExtReal(0),     ExtReal(0),          Verdict::NotApplicable,
                     std::move(why)};
}

std::string render_text_line(const LawReport& r) {
    return r.law + " | " + r.instance + " | " + r.lhs.to_string() + " | " + r.rhs.to_string() +
           " | " + to_string(r.verdict);
}

ReportSummary summarize(const std::vector<LawReport>& reports) {
    ReportSummary s;
    for (const auto& r : reports) {
        switch (r.verdict) {
            case Verdict::Pass: ++s.pass; break;
            case Verdict::Fail: ++s.fail; break;
            case Verdict::NotApplicable: ++s.not_applicable; break;
        }
    }
    return s;
}

std::string render_text(const std::vector<LawReport>& reports) {
    std::string out;
    for (const auto& r : reports) {
        out += render_text_line(r);
        out += '\n';
    }
    const auto s = summarize(reports);
    out += "summary | pass=" + std::to_string(s.pass) + " fail=" + std::to_string(s.fail) +
           " not-applicable=" + std::to_string(s.not_applicable) + '\n';
    return out;
}

std::string render_json(const std::vector<LawReport>& reports) {
    nlohmann::ordered_json j;
    j["reports"] = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        nlohmann::ordered_json e;
        e["law"] = r.law;
        e["instance"] = r.instance;
        e["relation"] = to_string(r.relation);
        e["lhs"] = r.lhs.to_string();
        e["rhs"] = r.rhs.to_string();
        e["verdict"] = to_string(r.verdict);
        e["note"] = r.note;
        j["reports"].push_back(std::move(e));
    }
    const auto s = summarize(reports);
    j["summary"] = {{"pass", s.pass}, {"fail", s.fail}, {"not-applicable", s.not_applicable}};
    return j.dump(2) + "\n";
}

}  // namespace fenchel
