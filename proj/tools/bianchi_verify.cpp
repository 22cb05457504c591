#include "bianchi/pipeline.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of the mod-2 cohomology computation for "
                 "SL2 over Z[sqrt(-2)][1/2] via its amalgam decomposition"};

    bianchi::RunConfig config;
    std::string config_path;
    app.add_option("--config", config_path, "structured plain-text configuration file");
    app.add_option("--stage", config.stage, "run a single stage (default: all)");
    app.add_option("--q-max", config.q_max, "page depth (default 9, minimum 5)");
    app.add_option("--format", config.format, "report format: json or markdown");
    app.add_option("--out", config.out_path, "write the report to this path");
    app.add_option("--golden", config.golden_path,
                   "golden fixture file (default data/golden_values.json)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (!config_path.empty()) config = bianchi::parse_config_file(config_path, config);
        config.validate();
    } catch (const std::exception& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    }

    try {
        bianchi::GoldenValues golden = bianchi::GoldenValues::load(config.golden_path);
        bianchi::PipelineResult result = bianchi::run_pipeline(config, golden);
        std::string body = config.format == "markdown" ? result.report.to_markdown()
                                                       : result.report.to_json();
        if (config.out_path.empty()) {
            std::cout << body;
        } else {
            std::ofstream out(config.out_path);
            if (!out) {
                std::cerr << "cannot write " << config.out_path << "\n";
                return 2;
            }
            out << body;
        }
        return result.exit_code;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal verification failure: " << e.what() << "\n";
        return 1;
    }
}
