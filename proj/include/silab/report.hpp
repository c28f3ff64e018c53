#pragma once

#include <string>
#include <vector>

#include "silab/field.hpp"

namespace silab {

// Parameters of one verification job. Zero / negative values mean "use the
// job's documented default"; the seed always has a concrete value because
// every sampled mode must be replayable.
struct ExperimentConfig {
    std::string lemma;
    i64 p = 0;
    int d = 0;
    int s = -1;
    int k = -1;
    long long N = -1;
    long long trials = -1;
    uint64_t seed = 1;
    long long budget = -1;
    std::string out;

    std::string to_json() const;
};

// Pass/fail is about the verified statement; hypothesis-not-met is a
// first-class third outcome for configurations outside a statement's stated
// dimension or size regime.
enum class Outcome { Pass, Fail, HypothesisNotMet };

std::string outcome_name(Outcome o);

struct CountingRow {
    i64 p = 0;
    int d = 0;
    int r = 0;
    long long exact = 0;
    long long main_term = 0;
    std::string normalized_deviation;
};

// Deterministic function of (config, seed): no timestamps or timings are
// serialized (wall-clock goes to stderr only).
struct Report {
    int schema_version = 1;
    ExperimentConfig config;
    Outcome outcome = Outcome::Pass;
    bool hypothesis_met = true;
    std::vector<std::string> notes;
    std::vector<std::string> counterexamples;
    std::vector<CountingRow> counting;

    std::string to_json() const;
};

struct SuiteReport {
    std::string name;
    std::vector<Report> jobs;
    Outcome aggregate = Outcome::Pass;

    std::string to_json() const;
};

Report report_from_json(const std::string& text);
SuiteReport suite_from_json(const std::string& text);

// format: "json", "csv" (counting rows when present, else one summary row),
// or "markdown-table".
std::string emit_report(const Report& r, const std::string& format);
std::string emit_suite(const SuiteReport& s, const std::string& format);

}  // namespace silab
