#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "silab/registry.hpp"

namespace {

int exit_code_of(silab::Outcome o) {
    switch (o) {
        case silab::Outcome::Pass: return 0;
        case silab::Outcome::Fail: return 1;
        case silab::Outcome::HypothesisNotMet: return 2;
    }
    return 1;
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << text;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open report file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification jobs over quadratic-form ideals"};
    app.require_subcommand(1);

    silab::ExperimentConfig cfg;
    auto* run = app.add_subcommand("run", "run one verification job");
    run->add_option("lemma", cfg.lemma, "job id (see `silab run --list`)");
    bool list = false;
    run->add_flag("--list", list, "list job ids and exit");
    run->add_option("--p", cfg.p, "field characteristic override");
    run->add_option("--d", cfg.d, "ambient dimension override");
    run->add_option("--s", cfg.s, "degree override");
    run->add_option("--k", cfg.k, "rank parameter override");
    run->add_option("--N", cfg.N, "count parameter override");
    run->add_option("--trials", cfg.trials, "trial count override");
    run->add_option("--seed", cfg.seed, "sampling seed");
    run->add_option("--budget", cfg.budget, "enumeration budget override");
    run->add_option("--out", cfg.out, "write the JSON report here instead of stdout");

    std::string suite_name;
    auto* suite = app.add_subcommand("suite", "run every job with fast or full settings");
    suite->add_option("name", suite_name, "fast or full")->required();
    std::string suite_out;
    suite->add_option("--out", suite_out, "write the JSON suite report here");

    std::string emit_path, emit_format = "json";
    auto* emit = app.add_subcommand("emit", "re-emit a saved JSON report");
    emit->add_option("report", emit_path, "path to a saved report")->required();
    emit->add_option("--format", emit_format, "json, csv, or markdown-table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    try {
        if (run->parsed()) {
            if (list) {
                for (const auto& e : silab::registry())
                    std::cout << e.id << "  " << e.summary << "\n";
                return 0;
            }
            if (cfg.lemma.empty()) {
                std::cerr << "error: missing job id\n";
                return 3;
            }
            auto t0 = std::chrono::steady_clock::now();
            silab::Report rep = silab::run_experiment(cfg);
            auto t1 = std::chrono::steady_clock::now();
            write_out(cfg.out, rep.to_json() + "\n");
            std::cerr << cfg.lemma << ": " << silab::outcome_name(rep.outcome) << " ("
                      << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()
                      << " ms)\n";
            return exit_code_of(rep.outcome);
        }
        if (suite->parsed()) {
            auto t0 = std::chrono::steady_clock::now();
            silab::SuiteReport rep = silab::run_suite(suite_name);
            auto t1 = std::chrono::steady_clock::now();
            write_out(suite_out, rep.to_json() + "\n");
            std::cerr << "suite " << suite_name << ": " << silab::outcome_name(rep.aggregate)
                      << " (" << rep.jobs.size() << " jobs, "
                      << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()
                      << " ms)\n";
            return exit_code_of(rep.aggregate);
        }
        if (emit->parsed()) {
            std::string text = read_file(emit_path);
            // A suite document carries a "suite" name and a "jobs" array.
            if (text.find("\"jobs\"") != std::string::npos &&
                text.find("\"suite\"") != std::string::npos) {
                std::cout << silab::emit_suite(silab::suite_from_json(text), emit_format);
            } else {
                std::cout << silab::emit_report(silab::report_from_json(text), emit_format);
            }
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 3;
}
