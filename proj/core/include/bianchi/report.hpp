#pragma once

#include <string>
#include <vector>

namespace bianchi {

enum class Status { Pass, Fail, Flagged };

std::string status_name(Status s);

struct ReportItem {
    std::string name;
    Status status = Status::Pass;
    std::string expected;
    std::string actual;
    std::string note;
};

struct ReportStage {
    std::string name;
    std::vector<ReportItem> items;
    // free-form payload tables (basis listings, series, configurations)
    std::vector<std::pair<std::string, std::string>> tables;

    Status status() const;
};

struct Report {
    std::vector<ReportStage> stages;

    Status overall() const;  // Pass iff every stage passes (Flagged counts as pass)
    bool passed() const { return overall() != Status::Fail; }
    std::string to_json() const;
    std::string to_markdown() const;
};

}  // namespace bianchi
