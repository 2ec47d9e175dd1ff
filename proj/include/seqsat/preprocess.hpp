// SPDX-License-Identifier: MIT
//
// Formula normalization and reduction. Normalization sorts each clause's
// literals ascending by signed value, collapses duplicate literals, and drops
// duplicate clauses (first occurrence wins). Reduction then repeats three
// passes to a fixpoint: tautology removal, pure-literal clause removal (one
// pure per removed clause is recorded as its representative), and unit
// propagation. The reduced formula is free of tautologies, pures, units and
// duplicates, or the formula is decided outright.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "seqsat/types.hpp"

namespace seqsat {

enum class PreStatus { SolvedSat, SolvedUnsat, Continue };

struct ReductionStep {
    enum class Kind {
        DropDuplicate,   // clause == earlier clause; `other` is the survivor
        DropTautology,   // clause contains v and -v
        DropPureClause,  // clause contains a pure literal; `lit` is the representative
        DropUnitClause,  // single-literal clause; `lit` is forced
        DeleteLiteral,   // `lit` removed from clause by unit propagation
        Conflict,        // clause emptied (or complementary units); formula unsatisfiable
    };
    Kind kind;
    int orig_clause = -1;  // index into the input formula
    Lit lit = 0;
    int other = -1;

    std::string json_line() const;
};

struct PreprocessResult {
    PreStatus status = PreStatus::Continue;
    Formula reduced;           // meaningful when status == Continue
    std::vector<int> origin;   // reduced clause index -> input clause index
    std::vector<Lit> forced;   // unit literals and pure representatives, in removal order
    std::vector<ReductionStep> log;
};

PreprocessResult preprocess(const Formula& input);

// For a formula fully solved by preprocessing, build one chosen literal per
// input clause (tautologies are filled with whichever polarity is free).
// Returns nullopt only if the bookkeeping failed to cover some clause.
std::optional<std::vector<Lit>> preprocess_witness(const Formula& input,
                                                   const PreprocessResult& r);

}  // namespace seqsat
