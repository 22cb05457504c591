#include "bianchi/pipeline.hpp"

#include <doctest.h>

using namespace bianchi;

namespace {
const char* kGolden = BIANCHI_DATA_DIR "/golden_values.json";
}

TEST_CASE("config text parsing") {
    RunConfig cfg = parse_config_text(
        "# comment\n"
        "q_max = 11\n"
        "stage = arithmetic\n"
        "format = markdown\n"
        "override gamma0 eC 0 1;0\n"
        "override sl2 ec 1 0;1\n");
    CHECK(cfg.q_max == 11);
    CHECK(cfg.stage == "arithmetic");
    CHECK(cfg.format == "markdown");
    REQUIRE(cfg.gamma0_overrides.size() == 1);
    CHECK(cfg.gamma0_overrides[0].target_cell == "eC");
    CHECK(cfg.gamma0_overrides[0].slot == 0);
    CHECK(cfg.gamma0_overrides[0].h1 ==
          std::vector<std::vector<bool>>{{true}, {false}});
    REQUIRE(cfg.sl2_overrides.size() == 1);

    CHECK_THROWS_AS(parse_config_text("q_max = 3\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("format = yaml\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("bogus = 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("override nowhere eC 0 1\n"), std::invalid_argument);
}

TEST_CASE("golden fixture loads with labels") {
    GoldenValues g = GoldenValues::load(kGolden);
    CHECK(g.at("gamma0_corank") == 0);
    CHECK(g.at("amalgam_dims").size() == 10);
    CHECK_FALSE(g.label("gamma0_corank").empty());
    CHECK_THROWS_AS(g.at("nope"), std::invalid_argument);
    GoldenValues mutated = g.with_value("gamma0_corank", 1);
    CHECK(mutated.at("gamma0_corank") == 1);
    CHECK(g.at("gamma0_corank") == 0);
}

TEST_CASE("full pipeline passes and is deterministic") {
    GoldenValues g = GoldenValues::load(kGolden);
    RunConfig cfg;
    cfg.golden_path = kGolden;
    PipelineResult a = run_pipeline(cfg, g);
    CHECK(a.exit_code == 0);
    CHECK(a.report.overall() != Status::Fail);
    PipelineResult b = run_pipeline(cfg, g);
    CHECK(a.report.to_json() == b.report.to_json());
    CHECK(a.report.to_markdown() == b.report.to_markdown());
}

TEST_CASE("stage filter reports a single stage") {
    GoldenValues g = GoldenValues::load(kGolden);
    RunConfig cfg;
    cfg.stage = "arithmetic";
    PipelineResult r = run_pipeline(cfg, g);
    REQUIRE(r.report.stages.size() == 1);
    CHECK(r.report.stages[0].name == "arithmetic");
    CHECK(r.exit_code == 0);

    cfg.stage = "no_such_stage";
    CHECK_THROWS_AS(run_pipeline(cfg, g), std::invalid_argument);
}

TEST_CASE("corrupted golden value flips the verdict") {
    GoldenValues g = GoldenValues::load(kGolden);
    RunConfig cfg;
    PipelineResult r = run_pipeline(cfg, g.with_value("gamma0_quotient_betti",
                                                      std::vector<int>{1, 3, 1}));
    CHECK(r.exit_code == 1);
    CHECK(r.report.overall() == Status::Fail);
}

TEST_CASE("corrupted restriction override fails the page stage") {
    GoldenValues g = GoldenValues::load(kGolden);
    RunConfig cfg;
    cfg.stage = "e2_pages";
    cfg.gamma0_overrides.push_back({"eC", 0, {{false}, {true}}});
    PipelineResult r = run_pipeline(cfg, g);
    CHECK(r.exit_code == 1);
}

TEST_CASE("report serialization shapes") {
    Report rep;
    rep.stages.push_back({"demo",
                          {{"ok", Status::Pass, "1", "1", ""},
                           {"warned", Status::Flagged, "", "", "note"}},
                          {{"table", "body"}}});
    CHECK(rep.overall() == Status::Flagged);
    CHECK(rep.passed());
    std::string j = rep.to_json();
    CHECK(j.find("\"overall\": \"flagged\"") != std::string::npos);
    std::string md = rep.to_markdown();
    CHECK(md.find("## demo") != std::string::npos);
    rep.stages[0].items[0].status = Status::Fail;
    CHECK_FALSE(rep.passed());
}
