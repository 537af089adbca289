#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fockforge/commands.hpp"

namespace {

int write_output(const std::string& text, const std::string& path) {
    if (path == "-") {
        std::cout << text;
        return 0;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "config error: cannot open output path '" << path << "'\n";
        return 2;
    }
    out << text;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fockforge: exact-simulation workbench for lattice fermion algorithms"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string format;
    std::uint64_t seed = 0;
    bool seed_set = false;
    fockforge::CommandOptions opts;

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"spectrum", "eigenvalues of the N-particle sector Hamiltonian"},
        {"evolve", "Trotterized evolution with per-step oracle fidelity"},
        {"compare", "first- vs second-quantized evolution fidelity"},
        {"measure", "quantum measurement scheme distributions"},
        {"resources", "qubit and term-count comparison of the algorithms"},
    };
    for (const auto& [name, description] : commands) {
        CLI::App* sub = app.add_subcommand(name, description);
        sub->add_option("--config", config_path, "experiment config file")
            ->required();
        sub->add_option("--seed", seed, "override measurement.seed")
            ->each([&seed_set](const std::string&) { seed_set = true; });
        sub->add_option("--out", out_path, "output path ('-' for stdout)");
        sub->add_option("--format", format, "tsv or csv")
            ->check(CLI::IsMember({"tsv", "csv"}));
        if (name == "measure") {
            sub->add_flag("--all", opts.all, "run all four schemes and compare");
            sub->add_flag("--estimate", opts.estimate, "eigenvalue estimation");
        }
        if (name == "spectrum")
            sub->add_flag("--cross-check", opts.cross_check,
                          "print a1 and a2 spectra with their deviation");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        const fockforge::ExperimentConfig cfg = fockforge::load_config_file(config_path);
        if (seed_set) opts.seed = seed;
        if (!format.empty()) opts.format = format;
        const std::string command = app.get_subcommands().front()->get_name();
        const std::string text = fockforge::run_command(command, cfg, opts);
        const std::string path = !out_path.empty() ? out_path : cfg.out_path;
        return write_output(text, path);
    } catch (const fockforge::SizeGuardError& e) {
        std::cerr << "resource guard: " << e.what() << '\n';
        return 3;
    } catch (const fockforge::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }
}
