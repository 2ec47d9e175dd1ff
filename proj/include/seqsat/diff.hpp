// SPDX-License-Identifier: MIT
//
// Differential testing: run the sequence engine against the reference
// deciders over a corpus, assert the provable direction (never Unsat on a
// satisfiable instance, never an invalid witness), and measure the claimed
// direction (a fixpoint is only *claimed* satisfiable), writing minimized
// DIMACS artifacts for every disagreement.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "seqsat/sequences.hpp"
#include "seqsat/types.hpp"

namespace seqsat::diff {

struct CorpusSpec {
    std::string id = "default";
    std::string corpus = "exhaustive";  // "exhaustive" | "random"

    // exhaustive bounds / random caps
    int max_vars = 3;
    int max_clauses = 4;

    // random corpus only
    std::uint64_t instances = 10000;
    std::uint64_t seed = 1;
    int adversarial_percent = 30;  // share of instances drawn from the messy generator

    int threads = 0;  // 0 = hardware concurrency
    Config engine;    // policy under test

    bool check_solution_bits = true;  // solution-implied edges/bits stay alive (SAT instances)
    bool check_membership = true;     // surviving 1 bits vs solution list (small instances)
    bool extract_witnesses = true;    // construct_solution on claimed-SAT oracle-SAT instances

    std::string findings_dir;  // "" = no artifacts

    static CorpusSpec from_json_file(const std::string& path);  // throws std::runtime_error
    std::string to_json() const;
};

struct Disagreement {
    std::string kind;
    std::string detail;
    Formula formula;
    Formula minimized;      // empty until minimize step ran
    std::string artifact;   // DIMACS path, when written
};

struct DiffReport {
    std::string corpus_id;
    std::uint64_t instances = 0;
    std::uint64_t oracle_sat = 0;
    std::uint64_t oracle_unsat = 0;
    std::uint64_t solved_in_preprocess = 0;
    std::uint64_t fixpoint_claims = 0;
    std::uint64_t engine_unsat = 0;
    std::uint64_t agreements = 0;

    // Asserted-zero counters (provable direction).
    std::uint64_t unsat_on_sat = 0;            // engine Unsat, oracle Sat
    std::uint64_t solution_bit_violations = 0; // a solution-implied edge/bit was refined away
    std::uint64_t invalid_witnesses = 0;       // an emitted witness failed verification

    // Measured counters (the audited claim).
    std::uint64_t claimed_sat_on_unsat = 0;    // fixpoint on an oracle-UNSAT instance
    std::uint64_t live_bits_checked = 0;
    std::uint64_t live_bits_unsupported = 0;   // surviving 1 bits no solution explains
    std::uint64_t extraction_stalls = 0;       // construct_solution failed on a SAT instance

    std::vector<Disagreement> findings;
    double millis = 0.0;

    bool sound() const {
        return unsat_on_sat == 0 && solution_bit_violations == 0 && invalid_witnesses == 0;
    }
    double membership_agreement() const {
        return live_bits_checked == 0
                   ? 1.0
                   : 1.0 - static_cast<double>(live_bits_unsupported) /
                               static_cast<double>(live_bits_checked);
    }
    std::string to_json() const;
};

// Runs the corpus, merges per-worker tallies, minimizes a capped number of
// findings, and (when findings_dir is set) writes artifacts plus report.json.
DiffReport differential_run(const CorpusSpec& spec);

// Greedy delta debugging: drop clauses, then single literal occurrences, as
// long as `still_failing` holds; returns the input unchanged if the predicate
// does not hold on it (not re-checkable).
Formula minimize_counterexample(const Formula& f,
                                const std::function<bool(const Formula&)>& still_failing);

// The instance a random corpus assigns to `index` (deterministic in
// spec.seed and index, independent of thread schedule).
Formula random_corpus_instance(const CorpusSpec& spec, std::uint64_t index);

}  // namespace seqsat::diff
