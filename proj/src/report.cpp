#include "silab/report.hpp"

#include <json.hpp>

#include <stdexcept>

namespace silab {

using nlohmann::json;
// Field insertion order is preserved so serialization is byte-stable.
using ojson = nlohmann::ordered_json;

std::string outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Pass: return "pass";
        case Outcome::Fail: return "fail";
        case Outcome::HypothesisNotMet: return "hypothesis-not-met";
    }
    return "unknown";
}

static Outcome outcome_from_name(const std::string& s) {
    if (s == "pass") return Outcome::Pass;
    if (s == "fail") return Outcome::Fail;
    if (s == "hypothesis-not-met") return Outcome::HypothesisNotMet;
    throw std::invalid_argument("unknown outcome: " + s);
}

static ojson config_json(const ExperimentConfig& c) {
    ojson j;
    j["lemma"] = c.lemma;
    j["p"] = c.p;
    j["d"] = c.d;
    j["s"] = c.s;
    j["k"] = c.k;
    j["N"] = c.N;
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["budget"] = c.budget;
    return j;
}

static ExperimentConfig config_from(const json& j) {
    ExperimentConfig c;
    c.lemma = j.at("lemma").get<std::string>();
    c.p = j.at("p").get<i64>();
    c.d = j.at("d").get<int>();
    c.s = j.at("s").get<int>();
    c.k = j.at("k").get<int>();
    c.N = j.at("N").get<long long>();
    c.trials = j.at("trials").get<long long>();
    c.seed = j.at("seed").get<uint64_t>();
    c.budget = j.at("budget").get<long long>();
    return c;
}

std::string ExperimentConfig::to_json() const { return config_json(*this).dump(); }

static ojson report_json(const Report& r) {
    ojson j;
    j["schema_version"] = r.schema_version;
    j["config"] = config_json(r.config);
    j["outcome"] = outcome_name(r.outcome);
    j["hypothesis_met"] = r.hypothesis_met;
    j["notes"] = r.notes;
    j["counterexamples"] = r.counterexamples;
    ojson rows = ojson::array();
    for (const auto& row : r.counting) {
        ojson o;
        o["p"] = row.p;
        o["d"] = row.d;
        o["r"] = row.r;
        o["exact"] = row.exact;
        o["main_term"] = row.main_term;
        o["normalized_deviation"] = row.normalized_deviation;
        rows.push_back(o);
    }
    j["counting"] = rows;
    return j;
}

static Report report_from(const json& j) {
    Report r;
    r.schema_version = j.at("schema_version").get<int>();
    r.config = config_from(j.at("config"));
    r.outcome = outcome_from_name(j.at("outcome").get<std::string>());
    r.hypothesis_met = j.at("hypothesis_met").get<bool>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    r.counterexamples = j.at("counterexamples").get<std::vector<std::string>>();
    for (const auto& o : j.at("counting")) {
        CountingRow row;
        row.p = o.at("p").get<i64>();
        row.d = o.at("d").get<int>();
        row.r = o.at("r").get<int>();
        row.exact = o.at("exact").get<long long>();
        row.main_term = o.at("main_term").get<long long>();
        row.normalized_deviation = o.at("normalized_deviation").get<std::string>();
        r.counting.push_back(row);
    }
    return r;
}

std::string Report::to_json() const { return report_json(*this).dump(2); }

std::string SuiteReport::to_json() const {
    ojson j;
    j["schema_version"] = 1;
    j["suite"] = name;
    j["aggregate"] = outcome_name(aggregate);
    ojson arr = ojson::array();
    for (const auto& r : jobs) arr.push_back(report_json(r));
    j["jobs"] = arr;
    return j.dump(2);
}

Report report_from_json(const std::string& text) { return report_from(json::parse(text)); }

SuiteReport suite_from_json(const std::string& text) {
    json j = json::parse(text);
    SuiteReport s;
    s.name = j.at("suite").get<std::string>();
    s.aggregate = outcome_from_name(j.at("aggregate").get<std::string>());
    for (const auto& o : j.at("jobs")) s.jobs.push_back(report_from(o));
    return s;
}

static std::string csv_of(const Report& r) {
    std::string out = "p,d,r,exact,main_term,normalized_deviation\n";
    if (r.counting.empty()) {
        return "lemma,outcome\n" + r.config.lemma + "," + outcome_name(r.outcome) + "\n";
    }
    for (const auto& row : r.counting)
        out += std::to_string(row.p) + "," + std::to_string(row.d) + "," +
               std::to_string(row.r) + "," + std::to_string(row.exact) + "," +
               std::to_string(row.main_term) + "," + row.normalized_deviation + "\n";
    return out;
}

static std::string md_row(const Report& r) {
    std::string notes;
    for (const auto& n : r.notes) {
        if (!notes.empty()) notes += "; ";
        notes += n;
    }
    return "| " + r.config.lemma + " | " + outcome_name(r.outcome) + " | " +
           (r.hypothesis_met ? "yes" : "no") + " | " + notes + " |\n";
}

static std::string md_header() {
    return "| lemma | outcome | hypothesis met | notes |\n|---|---|---|---|\n";
}

std::string emit_report(const Report& r, const std::string& format) {
    if (format == "json") return r.to_json() + "\n";
    if (format == "csv") return csv_of(r);
    if (format == "markdown-table") return md_header() + md_row(r);
    throw std::invalid_argument("unknown format: " + format);
}

std::string emit_suite(const SuiteReport& s, const std::string& format) {
    if (format == "json") return s.to_json() + "\n";
    if (format == "csv") {
        std::string out = "lemma,outcome\n";
        for (const auto& r : s.jobs) out += r.config.lemma + "," + outcome_name(r.outcome) + "\n";
        return out;
    }
    if (format == "markdown-table") {
        std::string out = md_header();
        for (const auto& r : s.jobs) out += md_row(r);
        return out;
    }
    throw std::invalid_argument("unknown format: " + format);
}

}  // namespace silab
