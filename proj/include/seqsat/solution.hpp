// SPDX-License-Identifier: MIT
//
// Solution extraction. A solution is one chosen literal per clause with no
// complementary pair among the choices; it induces a satisfying assignment
// directly. Two constructions are provided: a reduce-and-recurse loop that
// repeatedly runs the decision procedure and commits the endpoints plus one
// third literal of a surviving edge, and a direct reading of a single edge
// whose live literals all have unique live occurrences.

#pragma once

#include <string>
#include <vector>

#include "seqsat/comparing.hpp"
#include "seqsat/types.hpp"

namespace seqsat {

struct VerifyResult {
    bool valid = false;
    std::string reason;  // populated when invalid
};

// Checks that `per_clause` names one literal of each clause of `f` and that
// no two choices are complementary.
VerifyResult verify_assignment(const Formula& f, const std::vector<Lit>& per_clause);

// Expands chosen per-clause literals into a total variable assignment
// (variables not mentioned default to false).
std::vector<bool> assignment_from_choices(const Formula& f, const std::vector<Lit>& per_clause);

struct SolveResult {
    enum class Status {
        Sat,      // verified solution in per_clause
        Unsat,    // the decision procedure reported a contradiction
        Stalled,  // extraction could not complete (budget or structural failure)
    };
    Status status = Status::Stalled;
    std::vector<Lit> per_clause;       // one chosen literal per input clause (Sat)
    std::vector<Lit> chosen;           // distinct committed literals, in commitment order
    int rounds = 0;                    // decision passes consumed
    std::string detail;                // contradiction / stall description
    std::vector<std::string> round_notes;  // human-readable trace of each pass
};

// Repeatedly decides the remaining formula; at each fixpoint commits the two
// endpoint literals of the first live edge plus its first live literal
// outside the endpoint cells, drops those three clauses (clearing the third
// literal's negation first), and rebuilds the rest from the edge's live bits.
// Budget: ceil(c/3) + 1 passes.
SolveResult construct_solution(const Formula& f, const Config& cfg = {});

struct ExtractResult {
    bool ok = false;
    std::vector<Lit> per_cell;  // one literal per clause of ws.formula when ok
    std::string reason;
};

// Reads a complete selection out of one live edge, provided every live
// literal of the edge has exactly one live occurrence. Representatives are
// chosen cell by cell: literals whose negation is unavailable outside the
// already-selected cells first, then chains that follow each choice to the
// cell holding its negation, claiming cells whose entries complement a
// discarded entry, restarting on closed circuits.
ExtractResult extract_from_singleton_edge(const Workspace& ws, int eid);

}  // namespace seqsat
