#pragma once

#include "bianchi/config.hpp"
#include "bianchi/report.hpp"

#include <memory>

namespace bianchi {

struct PipelineResult {
    Report report;
    int exit_code = 0;  // 0 pass, 1 fail
};

// Two-phase runner: construction performs every computation and audit once
// (deterministically, including the sampled property checks); judging
// compares the results against a golden fixture and emits the report.
class Pipeline {
  public:
    explicit Pipeline(const RunConfig& config);  // throws if an audit rejects the inputs
    ~Pipeline();
    Pipeline(Pipeline&&) noexcept;
    Pipeline& operator=(Pipeline&&) noexcept;

    PipelineResult judge(const GoldenValues& golden) const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// One-shot form. Verification failures and rejected configurations both
// surface as exit code 1 with the failure recorded in the report.
PipelineResult run_pipeline(const RunConfig& config, const GoldenValues& golden);

// Stage names in execution order.
const std::vector<std::string>& pipeline_stage_names();

}  // namespace bianchi
