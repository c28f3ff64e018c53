#pragma once

#include <functional>

#include "silab/report.hpp"

namespace silab {

// One verification job: a stable id, a one-line statement of what it checks,
// and a runner producing a deterministic Report from (config, seed).
struct LemmaEntry {
    std::string id;
    std::string summary;
    std::function<Report(const ExperimentConfig&)> run;
};

const std::vector<LemmaEntry>& registry();
const LemmaEntry* find_lemma(const std::string& id);

// Throws std::invalid_argument for unknown ids.
Report run_experiment(const ExperimentConfig& cfg);

// name: "fast" (reduced trial counts) or "full". Jobs run in registry order;
// the aggregate is fail if any job fails, else hypothesis-not-met if any job
// reports that, else pass.
SuiteReport run_suite(const std::string& name);

// Mutation smoke-test hook: the next ideal-membership answer consulted
// through the registry's cross-check path is inverted once.
void arm_membership_fault();

}  // namespace silab
