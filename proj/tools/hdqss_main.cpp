// Scenario-driven command line front end: parses a declarative event script,
// runs it deterministically against a fresh hierarchy, and prints the
// transcript. Exit code 0 = ran to completion (protocol aborts and recorded
// event errors are transcript data), 1 = parse or configuration error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hdqss/error.hpp"
#include "hdqss/harness.hpp"

int main(int argc, char** argv) {
    CLI::App app{"hdqss - hierarchical dynamic quantum secret sharing simulator"};

    std::string scenario_path;
    std::string format = "text";
    hdqss::harness::RunConfig config;

    app.add_option("--scenario", scenario_path,
                   "scenario file (reads standard input when omitted)");
    app.add_option("--seed", config.seed, "random seed")->capture_default_str();
    app.add_option("--key-bits", config.key_bits, "key length in bits")->capture_default_str();
    app.add_option("--qber-threshold", config.qber_threshold,
                   "default abort threshold for bb84 sessions")
        ->capture_default_str();
    app.add_option("--format", format, "transcript format: text|csv")
        ->check(CLI::IsMember({"text", "csv"}))
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    std::string text;
    if (scenario_path.empty()) {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        text = buffer.str();
    } else {
        std::ifstream in(scenario_path);
        if (!in) {
            std::cerr << "error: cannot open scenario file '" << scenario_path << "'\n";
            return 1;
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        text = buffer.str();
    }

    try {
        const hdqss::harness::Scenario scenario = hdqss::harness::parse_scenario(text);
        const hdqss::harness::Transcript transcript =
            hdqss::harness::run_scenario(scenario, config);
        const auto report_format = format == "csv" ? hdqss::harness::ReportFormat::Csv
                                                   : hdqss::harness::ReportFormat::Text;
        std::cout << hdqss::harness::emit_report(transcript, report_format);
        return 0;
    } catch (const hdqss::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }
}
