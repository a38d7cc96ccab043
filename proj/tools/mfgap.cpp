// mfgap: run numeric experiments described by small key=value config files.
//
// Exit codes: 0 success, 2 config error, 3 verification failure, 4 I/O error.

#include "mfgap/experiments.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

std::string read_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::ios_base::failure("cannot open " + path);
    std::ostringstream buf;
    buf << is.rdbuf();
    return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mfgap: gap and density experiments for multiplicative functions"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    unsigned threads = 1;
    CLI::App* run = app.add_subcommand("run", "run the experiment in a config file");
    run->add_option("config", config_path, "path to key=value config file")->required();
    run->add_option("--out", out_dir, "output directory (else config 'output', else $MFGAP_OUT)");
    run->add_option("--threads", threads, "worker threads (default 1)")
        ->check(CLI::Range(1u, 256u));

    std::string validate_path;
    CLI::App* validate = app.add_subcommand("validate", "parse a config and print canonical form");
    validate->add_option("config", validate_path, "path to key=value config file")->required();

    std::string explain_name;
    CLI::App* explain = app.add_subcommand("explain", "print the schema for an experiment");
    explain->add_option("experiment", explain_name, "experiment name")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            mfgap::ExperimentConfig cfg = mfgap::parse_config(read_file(config_path));
            mfgap::runtime_threads() = threads;
            mfgap::RunPaths paths = mfgap::resolve_paths(cfg, out_dir);
            run_experiment(cfg, paths);
            std::cout << "wrote " << paths.report.string() << "\n";
        } else if (validate->parsed()) {
            mfgap::ExperimentConfig cfg = mfgap::parse_config(read_file(validate_path));
            std::cout << cfg.canonical_text();
            std::cout << "# hash " << cfg.hash_hex() << "\n";
        } else if (explain->parsed()) {
            std::cout << mfgap::explain_experiment(explain_name);
        }
    } catch (const mfgap::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mfgap::VerificationFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: io: " << e.what() << "\n";
        return 4;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: io: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
