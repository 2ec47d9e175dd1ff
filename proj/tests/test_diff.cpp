// SPDX-License-Identifier: MIT
//
// Unit tests for the differential harness: corpus specs, deterministic
// instance addressing, counterexample minimization, and small end-to-end
// runs against the reference deciders.

#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "seqsat/diff.hpp"
#include "seqsat/types.hpp"

using namespace seqsat;
using seqsat::diff::CorpusSpec;
using seqsat::diff::DiffReport;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
    const std::string path = "/tmp/" + name;
    std::ofstream out(path);
    out << text;
    return path;
}

}  // namespace

TEST_CASE("corpus specs round-trip through JSON") {
    CorpusSpec spec;
    spec.id = "roundtrip";
    spec.corpus = "random";
    spec.max_vars = 7;
    spec.max_clauses = 19;
    spec.instances = 123;
    spec.seed = 99;
    spec.adversarial_percent = 45;
    spec.threads = 3;
    spec.engine.complement_discard = false;
    spec.engine.single_pass = true;
    spec.check_membership = false;
    spec.findings_dir = "/tmp/x";

    const std::string path = write_temp("seqsat_spec_roundtrip.json", spec.to_json());
    const CorpusSpec back = CorpusSpec::from_json_file(path);
    std::remove(path.c_str());

    REQUIRE(back.id == spec.id);
    REQUIRE(back.corpus == spec.corpus);
    REQUIRE(back.max_vars == spec.max_vars);
    REQUIRE(back.max_clauses == spec.max_clauses);
    REQUIRE(back.instances == spec.instances);
    REQUIRE(back.seed == spec.seed);
    REQUIRE(back.adversarial_percent == spec.adversarial_percent);
    REQUIRE(back.threads == spec.threads);
    REQUIRE(back.engine.complement_discard == spec.engine.complement_discard);
    REQUIRE(back.engine.single_pass == spec.engine.single_pass);
    REQUIRE(back.check_membership == spec.check_membership);
    REQUIRE(back.findings_dir == spec.findings_dir);
}

TEST_CASE("corpus spec validation rejects junk") {
    const std::string unknown =
        write_temp("seqsat_spec_unknown.json", R"({"id":"x","corpus":"random","bogus_key":1})");
    REQUIRE_THROWS_AS(CorpusSpec::from_json_file(unknown), std::runtime_error);
    std::remove(unknown.c_str());

    const std::string badcorpus =
        write_temp("seqsat_spec_badcorpus.json", R"({"corpus":"neither"})");
    REQUIRE_THROWS_AS(CorpusSpec::from_json_file(badcorpus), std::runtime_error);
    std::remove(badcorpus.c_str());

    const std::string badtype = write_temp("seqsat_spec_badtype.json", R"({"max_vars":"three"})");
    REQUIRE_THROWS_AS(CorpusSpec::from_json_file(badtype), std::runtime_error);
    std::remove(badtype.c_str());

    const std::string notjson = write_temp("seqsat_spec_notjson.json", "p cnf 1 1");
    REQUIRE_THROWS_AS(CorpusSpec::from_json_file(notjson), std::runtime_error);
    std::remove(notjson.c_str());

    REQUIRE_THROWS_AS(CorpusSpec::from_json_file("/tmp/seqsat_spec_missing.json"),
                      std::runtime_error);
}

TEST_CASE("random corpus addressing is deterministic and thread-independent") {
    CorpusSpec spec;
    spec.corpus = "random";
    spec.max_vars = 9;
    spec.max_clauses = 14;
    spec.seed = 31337;
    spec.threads = 1;

    CorpusSpec same = spec;
    same.threads = 8;  // thread count must not change the corpus

    for (std::uint64_t i = 0; i < 50; ++i) {
        REQUIRE(diff::random_corpus_instance(spec, i).clauses ==
                diff::random_corpus_instance(same, i).clauses);
    }
    REQUIRE(diff::random_corpus_instance(spec, 0).clauses !=
            diff::random_corpus_instance(spec, 1).clauses);

    CorpusSpec other = spec;
    other.seed = 31338;
    bool any_diff = false;
    for (std::uint64_t i = 0; i < 10; ++i)
        any_diff |= diff::random_corpus_instance(spec, i).clauses !=
                    diff::random_corpus_instance(other, i).clauses;
    REQUIRE(any_diff);

    // Bounds hold across a larger sample.
    for (std::uint64_t i = 0; i < 300; ++i) {
        const Formula f = diff::random_corpus_instance(spec, i);
        REQUIRE_FALSE(f.empty());
        REQUIRE(f.clause_count() <= spec.max_clauses);
        REQUIRE(f.max_var() <= spec.max_vars);
    }
}

TEST_CASE("minimization keeps the predicate failing and shrinks") {
    Formula f;
    f.clauses = {{1, 2, 3}, {4, 5}, {-1, -2}, {6}};

    const auto has_unit = [](const Formula& g) {
        for (const Clause& c : g.clauses)
            if (c.size() == 1) return true;
        return false;
    };
    Formula m = diff::minimize_counterexample(f, has_unit);
    REQUIRE(m.clause_count() == 1);
    REQUIRE(m.clauses[0].size() == 1);

    // The clause pass keeps at least one clause; the literal pass then
    // shrinks clauses as far as the predicate allows.
    const auto at_least_two = [](const Formula& g) { return g.clause_count() >= 2; };
    m = diff::minimize_counterexample(f, at_least_two);
    REQUIRE(m.clause_count() == 2);

    // A predicate that fails on the input comes back unchanged.
    const auto never = [](const Formula&) { return false; };
    m = diff::minimize_counterexample(f, never);
    REQUIRE(m.clauses == f.clauses);
}

TEST_CASE("exhaustive harness run: two variables, two clauses") {
    CorpusSpec spec;
    spec.id = "tiny";
    spec.corpus = "exhaustive";
    spec.max_vars = 2;
    spec.max_clauses = 2;
    spec.threads = 1;

    DiffReport r = diff::differential_run(spec);
    REQUIRE(r.corpus_id == "tiny");
    REQUIRE(r.instances == 36);
    REQUIRE(r.oracle_sat + r.oracle_unsat == 36);
    REQUIRE(r.solved_in_preprocess + r.fixpoint_claims + r.engine_unsat == 36);
    REQUIRE(r.sound());
    REQUIRE(r.unsat_on_sat == 0);
    REQUIRE(r.invalid_witnesses == 0);
    REQUIRE(r.solution_bit_violations == 0);
    REQUIRE(r.live_bits_checked > 0);
    REQUIRE(r.membership_agreement() == 1.0);
    REQUIRE(r.findings.empty());
}

TEST_CASE("random harness run: determinism across thread counts") {
    CorpusSpec spec;
    spec.id = "threads";
    spec.corpus = "random";
    spec.max_vars = 5;
    spec.max_clauses = 8;
    spec.instances = 60;
    spec.seed = 11;
    spec.threads = 1;

    DiffReport a = diff::differential_run(spec);
    spec.threads = 3;
    DiffReport b = diff::differential_run(spec);

    REQUIRE(a.instances == 60);
    REQUIRE(a.sound());
    REQUIRE(b.sound());
    REQUIRE(a.oracle_sat == b.oracle_sat);
    REQUIRE(a.oracle_unsat == b.oracle_unsat);
    REQUIRE(a.solved_in_preprocess == b.solved_in_preprocess);
    REQUIRE(a.fixpoint_claims == b.fixpoint_claims);
    REQUIRE(a.engine_unsat == b.engine_unsat);
    REQUIRE(a.claimed_sat_on_unsat == b.claimed_sat_on_unsat);
    REQUIRE(a.live_bits_checked == b.live_bits_checked);
    REQUIRE(a.live_bits_unsupported == b.live_bits_unsupported);
    REQUIRE(a.extraction_stalls == b.extraction_stalls);
}

TEST_CASE("report JSON carries the schema and the counters") {
    CorpusSpec spec;
    spec.corpus = "exhaustive";
    spec.max_vars = 1;
    spec.max_clauses = 1;
    spec.threads = 1;

    const std::filesystem::path dir = "/tmp/seqsat_test_findings";
    std::filesystem::remove_all(dir);
    spec.findings_dir = dir.string();

    DiffReport r = diff::differential_run(spec);
    REQUIRE(r.instances == 2);

    const nlohmann::json j = nlohmann::json::parse(r.to_json());
    REQUIRE(j.at("schema_version").get<int>() == 1);
    REQUIRE(j.at("instances").get<std::uint64_t>() == 2);
    REQUIRE(j.at("sound").get<bool>());
    REQUIRE(j.at("unsat_on_sat").get<std::uint64_t>() == 0);
    REQUIRE(j.contains("live_bits_checked"));
    REQUIRE(j.contains("membership_agreement"));
    REQUIRE(j.at("findings").is_array());

    // report.json lands in the findings dir even without findings.
    REQUIRE(std::filesystem::exists(dir / "report.json"));
    const nlohmann::json file = nlohmann::json::parse(std::ifstream(dir / "report.json"));
    REQUIRE(file.at("schema_version").get<int>() == 1);
    std::filesystem::remove_all(dir);
}
