#include "jobs.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"psc: exact verification jobs for semigroup product-system cohomology and Q_N"};

    std::string kind, config_path, out_path;
    std::uint64_t seed = 0;

    std::string kinds_help = "job kind; one of:";
    for (const auto& k : psc::jobs::job_kinds()) kinds_help += " " + k;
    app.add_option("kind", kind, kinds_help)->required();
    app.add_option("--config", config_path, "path to the JSON job configuration")->required();
    app.add_option("--out", out_path, "write the JSON report here instead of stdout");
    app.add_option("--seed", seed, "seed for randomized suites (recorded in the report)");

    CLI11_PARSE(app, argc, argv);

    nlohmann::json config;
    try {
        std::ifstream in(config_path);
        if (!in) throw std::runtime_error("cannot open config file '" + config_path + "'");
        in >> config;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    if (config.contains("seed") && !app.count("--seed")) seed = config["seed"].get<std::uint64_t>();

    nlohmann::json report;
    bool pass = false;
    try {
        auto outcome = psc::jobs::run_job(kind, config, seed);
        report = std::move(outcome.report);
        pass = outcome.pass;
    } catch (const std::exception& e) {
        report["job"] = kind;
        report["seed"] = seed;
        report["error"] = e.what();
        report["pass"] = false;
    }

    if (out_path.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        out << report.dump(2) << "\n";
    }
    return pass ? 0 : 1;
}
