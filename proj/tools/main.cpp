#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tcmc/driver.hpp"

int main(int argc, char** argv) {
    CLI::App app{"timelike CMC surfaces from loop-group Weierstrass data"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "run the construction pipeline from a config");
    std::string config_path, output_dir, grid_str;
    int truncation = 0, substeps = 0;
    std::vector<double> lambdas;
    bool quiet = false;
    run->add_option("--config", config_path, "JSON run configuration")->required();
    run->add_option("--output-dir", output_dir, "override output directory");
    run->add_option("--truncation", truncation, "override truncation order N");
    run->add_option("--lambda", lambdas, "override spectral values (repeatable)");
    run->add_option("--grid", grid_str, "override grid \"xmin,xmax,ymin,ymax,nx,ny\"");
    run->add_option("--substeps", substeps, "override RK4 substeps per grid interval");
    run->add_flag("--quiet", quiet, "suppress progress output");

    // list-examples
    auto* list = app.add_subcommand("list-examples", "print the built-in potential names");

    // factorize-demo
    auto* fact = app.add_subcommand(
        "factorize-demo", "Birkhoff-factorize a loop given in debug text format");
    std::string loop_path, convention = "minus_plus";
    fact->add_option("--input", loop_path, "loop file (default: stdin)");
    fact->add_option("--convention", convention, "minus_plus or plus_minus");

    // verify
    auto* verify = app.add_subcommand(
        "verify", "re-measure an exported surface (field CSV or OBJ)");
    std::string verify_input, verify_out = "verify_out";
    verify->add_option("--input", verify_input, "field CSV or OBJ file")->required();
    verify->add_option("--output-dir", verify_out, "output directory");

    // extract
    auto* extract = app.add_subcommand(
        "extract", "extract normalized potentials from a stored frame field");
    std::string frames_path, extract_out = "extract_out";
    extract->add_option("--input", frames_path, "frame field file")->required();
    extract->add_option("--output-dir", extract_out, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            tcmc::RunConfig cfg;
            try {
                cfg = tcmc::RunConfig::from_json_file(config_path);
                if (!output_dir.empty()) cfg.output_dir = output_dir;
                if (truncation > 0) cfg.truncation = truncation;
                if (substeps > 0) cfg.substeps = substeps;
                if (!lambdas.empty()) cfg.lambdas = lambdas;
                if (!grid_str.empty()) cfg.grid = tcmc::grid_from_string(grid_str);
                cfg.quiet = quiet;
                cfg.validate();
            } catch (const std::invalid_argument& e) {
                std::cerr << "config error: " << e.what() << "\n";
                return tcmc::kExitConfigError;
            }
            return tcmc::run_pipeline(cfg, std::cout);
        }
        if (list->parsed()) return tcmc::cmd_list_examples(std::cout);
        if (fact->parsed()) {
            if (loop_path.empty()) {
                return tcmc::cmd_factorize_demo(std::cin, std::cout, convention);
            }
            std::ifstream in(loop_path);
            if (!in) {
                std::cerr << "cannot open " << loop_path << "\n";
                return tcmc::kExitConfigError;
            }
            return tcmc::cmd_factorize_demo(in, std::cout, convention);
        }
        if (verify->parsed()) {
            return tcmc::cmd_verify(verify_input, verify_out, std::cout);
        }
        if (extract->parsed()) {
            return tcmc::cmd_extract(frames_path, extract_out, std::cout);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return tcmc::kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return tcmc::kExitAllFailed;
    }
    return tcmc::kExitOk;
}
