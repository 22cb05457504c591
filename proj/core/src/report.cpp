#include "bianchi/report.hpp"

#include <json.hpp>

#include <sstream>

namespace bianchi {

std::string status_name(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Flagged: return "flagged";
    }
    return "?";
}

Status ReportStage::status() const {
    Status out = Status::Pass;
    for (const auto& i : items) {
        if (i.status == Status::Fail) return Status::Fail;
        if (i.status == Status::Flagged) out = Status::Flagged;
    }
    return out;
}

Status Report::overall() const {
    Status out = Status::Pass;
    for (const auto& s : stages) {
        Status st = s.status();
        if (st == Status::Fail) return Status::Fail;
        if (st == Status::Flagged) out = Status::Flagged;
    }
    return out;
}

std::string Report::to_json() const {
    nlohmann::ordered_json j;
    j["overall"] = status_name(overall());
    j["stages"] = nlohmann::ordered_json::array();
    for (const auto& s : stages) {
        nlohmann::ordered_json js;
        js["name"] = s.name;
        js["status"] = status_name(s.status());
        js["items"] = nlohmann::ordered_json::array();
        for (const auto& i : s.items) {
            nlohmann::ordered_json ji;
            ji["name"] = i.name;
            ji["status"] = status_name(i.status);
            if (!i.expected.empty()) ji["expected"] = i.expected;
            if (!i.actual.empty()) ji["actual"] = i.actual;
            if (!i.note.empty()) ji["note"] = i.note;
            js["items"].push_back(std::move(ji));
        }
        if (!s.tables.empty()) {
            nlohmann::ordered_json jt;
            for (const auto& [k, v] : s.tables) jt[k] = v;
            js["tables"] = std::move(jt);
        }
        j["stages"].push_back(std::move(js));
    }
    return j.dump(2) + "\n";
}

std::string Report::to_markdown() const {
    std::ostringstream os;
    os << "# Verification report\n\n";
    os << "Overall: **" << status_name(overall()) << "**\n";
    for (const auto& s : stages) {
        os << "\n## " << s.name << " — " << status_name(s.status()) << "\n\n";
        for (const auto& i : s.items) {
            os << "- `" << status_name(i.status) << "` " << i.name;
            if (!i.expected.empty()) os << " (expected " << i.expected << ", got " << i.actual << ")";
            if (!i.note.empty()) os << " — " << i.note;
            os << "\n";
        }
        for (const auto& [k, v] : s.tables) {
            os << "\n### " << k << "\n\n```\n" << v << (v.empty() || v.back() != '\n' ? "\n" : "")
               << "```\n";
        }
    }
    return os.str();
}

}  // namespace bianchi
