// SPDX-License-Identifier: MIT
//
// Mutual determination of edge groups. Determining one edge against another
// group intersects it with every live candidate holding both its endpoint
// bits, restores cell compliance on each intersection, optionally discards
// intersections with an eliminated complement pair, and replaces the edge's
// bits with the union of the survivors. A run compares every unordered pair
// of groups once; runs repeat until one produces no refinement (fixpoint) or
// a contradiction surfaces.

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "seqsat/preprocess.hpp"
#include "seqsat/refine.hpp"
#include "seqsat/sequences.hpp"

namespace seqsat {

struct RunStats {
    int run = 0;
    std::uint64_t comparisons = 0;
    std::uint64_t comparisons_skipped = 0;
    std::uint64_t determinations = 0;
    std::uint64_t intersections = 0;
    std::uint64_t unions = 0;
    std::uint64_t complement_eliminations = 0;
    std::uint64_t bit_changes = 0;
    std::uint64_t edge_deaths = 0;
    std::uint64_t vertex_deaths = 0;

    std::uint64_t refinements() const { return bit_changes + edge_deaths + vertex_deaths; }
};

enum class Outcome {
    SolvedInPreprocess,  // decided (satisfiable) before any sequence was built
    Unsat,
    Fixpoint,  // a full run produced no refinement; satisfiability is claimed, not proven
};

const char* to_string(Outcome o);

struct DecideResult {
    Outcome outcome = Outcome::Fixpoint;
    PreprocessResult pre;
    std::vector<Lit> witness_per_clause;  // one literal per input clause (SolvedInPreprocess)
    std::vector<RunStats> runs;
    std::unique_ptr<Workspace> ws;  // final state (Fixpoint, or Unsat past preprocessing)
    std::string unsat_reason;
    double millis = 0.0;
    std::uint64_t initial_live_bits = 0;  // live bits when the first run started
};

// Refines one live edge against the edges of another group. Cascaded closure
// work is fully drained before returning.
void determine_edge(Workspace& ws, int eid, int other_group);

// Alternates determination sweeps between two groups: first every live edge
// of `p` against `q`, then of `q` against `p`, and (unless single_pass) again
// while the latest sweep still produced a refinement. Returns true when any
// refinement happened.
bool compare_groups(Workspace& ws, int p, int q);

// One run: every unordered pair of groups, in lexicographic order.
RunStats execute_run(Workspace& ws);

// Runs until a run refines nothing (fixpoint) or unsat; returns per-run stats.
std::vector<RunStats> execute_round(Workspace& ws);

DecideResult decide(const Formula& f, const Config& cfg = {});

}  // namespace seqsat
