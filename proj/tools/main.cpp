#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fcone/cli.hpp"
#include "fcone/selfcheck.hpp"

int main(int argc, char** argv) {
    CLI::App app{"exact transport orders, pavings and polar checks on finite ground sets"};
    app.require_subcommand(1);

    std::string input;
    std::string pairs_path;
    std::string subsets_path;
    std::string scenario_name;
    std::string metric_name;
    std::string delta_text = "0";
    std::string out_dir = ".";
    std::string emit = "json";
    std::string weight_name;
    std::uint64_t seed = 0;

    auto common = [&](CLI::App* cmd) {
        cmd->add_option("-i,--input", input, "instance document (json)")->required();
        cmd->add_option("-o,--out", out_dir, "directory the artifacts are written to");
        cmd->add_option("-d,--delta", delta_text, "defect budget, an exact rational like 3/2");
        cmd->add_option("-e,--emit", emit, "comma list from json,csv,svg");
        cmd->add_option("-w,--weight", weight_name,
                        "replace the input weight: one or one_plus_maxnorm");
        return cmd;
    };

    common(app.add_subcommand("check-order", "decide whether the target dominates the source"));
    common(app.add_subcommand("transport", "maximal-support feasible plan"));
    common(app.add_subcommand("relaxed-support", "maximal support under a defect budget"));
    common(app.add_subcommand("paving", "irreducible classes with their components"));
    common(app.add_subcommand("apirc", "pavings over generator subsets and their meet"))
        ->add_option("-s,--subsets", subsets_path, "json array of generator index lists")
        ->required();
    common(app.add_subcommand("polar", "maximal mass on a pair set"))
        ->add_option("-p,--pairs", pairs_path, "json document {\"pairs\": [[from, to], ...]}")
        ->required();
    common(app.add_subcommand("rays", "wasserstein-1 potential, plan and transport rays"))
        ->add_option("-m,--metric", metric_name, "replace the input metric: euclidean or l1");

    CLI::App* scen = app.add_subcommand("scenario", "write one of the built-in instances");
    scen->add_option("name", scenario_name, "preset name, e.g. two_islands")->required();
    scen->add_option("-o,--out", out_dir, "directory the artifacts are written to");

    app.add_subcommand("selftest", "run the release gates")
        ->add_option("--seed", seed, "offset for the sampled instances");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // --help lands here too and must stay a success; anything else is
        // a malformed invocation, which the contract maps to exit 1
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        std::string command = app.get_subcommands().front()->get_name();

        if (command == "selftest") {
            bool all = true;
            for (const fcone::CheckResult& r : fcone::run_selfcheck(seed)) {
                std::printf("%s %-18s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                            r.detail.c_str());
                all = all && r.pass;
            }
            return all ? 0 : 1;
        }

        fcone::RunConfig cfg;
        cfg.command = command;
        cfg.scenario = scenario_name;
        cfg.metric = metric_name;
        cfg.weight = weight_name;
        cfg.delta = fcone::parse_rational(delta_text);
        if (!input.empty()) cfg.input = fcone::load_json(input);
        if (!pairs_path.empty()) cfg.pairs = fcone::load_json(pairs_path);
        if (!subsets_path.empty()) cfg.subsets = fcone::load_json(subsets_path);
        cfg.emit_json = emit.find("json") != std::string::npos;
        cfg.emit_csv = emit.find("csv") != std::string::npos;
        cfg.emit_svg = emit.find("svg") != std::string::npos;

        fcone::RunResult res = fcone::run(cfg);
        std::filesystem::create_directories(out_dir);
        for (const auto& [name, bytes] : res.artifacts) {
            std::filesystem::path path = std::filesystem::path(out_dir) / name;
            std::ofstream f(path, std::ios::binary);
            f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
            if (!f) {
                std::cerr << "cannot write " << path.string() << "\n";
                return 1;
            }
            std::cout << path.string() << "\n";
        }
        return res.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
