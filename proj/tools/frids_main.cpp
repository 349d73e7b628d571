#include "frids/console.hpp"
#include "frids/errors.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInput = 3;
constexpr int kExitInvariant = 4;

struct Flags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_path;
    std::string rules_path;
    std::string dataset_path;
    bool timestamps = false;
    std::size_t index = 0;
};

void add_common_flags(CLI::App* cmd, Flags& flags) {
    cmd->add_option("--config", flags.config_path, "run configuration file")->required();
    cmd->add_option("--seed", flags.seed, "override the config seed");
    cmd->add_option("--out", flags.out_path, "override the primary output path");
    cmd->add_option("--rules", flags.rules_path, "override the rules file path");
    cmd->add_option("--dataset", flags.dataset_path, "override the dataset path");
    cmd->add_flag("--timestamps", flags.timestamps, "stamp reports with wall-clock time");
}

frids::RunConfig merged_config(const Flags& flags) {
    frids::RunConfig config = frids::load_config(flags.config_path);
    if (flags.seed)
        config.seed = *flags.seed;
    if (!flags.rules_path.empty())
        config.rules_path = flags.rules_path;
    if (flags.timestamps)
        config.timestamps = true;
    return config;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"frids - evolutionary fuzzy-rule intrusion detection"};
    app.require_subcommand(1);

    Flags flags;
    CLI::App* summarize = app.add_subcommand("summarize", "print the dataset class distribution");
    CLI::App* train = app.add_subcommand("train", "evolve a rule per attack class");
    CLI::App* detect = app.add_subcommand("detect", "classify a dataset and write alerts + report");
    CLI::App* evaluate = app.add_subcommand("evaluate", "print detection metrics for a dataset");
    CLI::App* fuzzify = app.add_subcommand("fuzzify-demo", "print a record's per-feature memberships");
    for (CLI::App* cmd : {summarize, train, detect, evaluate, fuzzify})
        add_common_flags(cmd, flags);
    fuzzify->add_option("--index", flags.index, "record index to fuzzify");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        frids::RunConfig config = merged_config(flags);

        if (summarize->parsed()) {
            const std::string path =
                !flags.dataset_path.empty() ? flags.dataset_path
                : !config.train_dataset.empty() ? config.train_dataset
                                                : config.test_dataset;
            frids::run_summarize(config, path, std::cout);
        } else if (train->parsed()) {
            if (!flags.dataset_path.empty())
                config.train_dataset = flags.dataset_path;
            if (!flags.out_path.empty())
                config.rules_path = flags.out_path;
            frids::run_train(config, std::cout);
        } else if (detect->parsed()) {
            if (!flags.dataset_path.empty())
                config.test_dataset = flags.dataset_path;
            if (!flags.out_path.empty())
                config.report_path = flags.out_path;
            frids::run_detect(config, std::cout);
        } else if (evaluate->parsed()) {
            if (!flags.dataset_path.empty())
                config.test_dataset = flags.dataset_path;
            frids::run_evaluate(config, std::cout);
        } else if (fuzzify->parsed()) {
            const std::string path =
                !flags.dataset_path.empty() ? flags.dataset_path
                : !config.train_dataset.empty() ? config.train_dataset
                                                : config.test_dataset;
            frids::run_fuzzify_demo(config, path, flags.index, std::cout);
        }
        return kExitOk;
    } catch (const frids::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const frids::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const frids::InvariantError& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariant;
    }
}
