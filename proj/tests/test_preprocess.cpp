// SPDX-License-Identifier: MIT
//
// Unit tests for normalization and the reduction fixpoint.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "seqsat/gen.hpp"
#include "seqsat/oracle.hpp"
#include "seqsat/preprocess.hpp"
#include "seqsat/solution.hpp"
#include "seqsat/types.hpp"

using namespace seqsat;

namespace {

Formula mk(std::initializer_list<Clause> cs) {
    Formula f;
    f.clauses.assign(cs);
    return f;
}

// The worked five-clause instance (a=1, x=2, y=3, b=4, c=5).
Formula fig1() {
    return mk({{1, 2, 3}, {-1, 4, 5}, {-1, 4, -5}, {-1, -4, -5}, {-1, -4, 5}});
}

int count_kind(const PreprocessResult& r, ReductionStep::Kind k) {
    int n = 0;
    for (const ReductionStep& s : r.log)
        if (s.kind == k) ++n;
    return n;
}

}  // namespace

TEST_CASE("five-clause instance dissolves through two pure-literal rounds") {
    const Formula f = fig1();
    PreprocessResult r = preprocess(f);

    REQUIRE(r.status == PreStatus::SolvedSat);
    // Literal 2 is pure immediately; dropping clause 0 makes -1 pure.
    REQUIRE(r.forced == std::vector<Lit>{2, -1});
    REQUIRE(count_kind(r, ReductionStep::Kind::DropPureClause) == 5);

    auto w = preprocess_witness(f, r);
    REQUIRE(w.has_value());
    REQUIRE(*w == std::vector<Lit>{2, -1, -1, -1, -1});
    REQUIRE(verify_assignment(f, *w).valid);
}

TEST_CASE("normalization sorts, dedups literals, drops duplicate clauses") {
    // (3 1 2) == (1 2 3); (1 1 2) collapses to (1 2).
    PreprocessResult r = preprocess(mk({{3, 1, 2}, {1, 2, 3}, {1, 1, 2}, {-1, -2, -3}}));
    REQUIRE(count_kind(r, ReductionStep::Kind::DropDuplicate) == 1);
    // The duplicate drop names the surviving original clause.
    for (const ReductionStep& s : r.log)
        if (s.kind == ReductionStep::Kind::DropDuplicate) {
            REQUIRE(s.orig_clause == 1);
            REQUIRE(s.other == 0);
        }
}

TEST_CASE("tautologies are dropped; an all-tautology formula is satisfiable") {
    PreprocessResult r = preprocess(mk({{1, -1, 2}, {-2, 2}}));
    REQUIRE(r.status == PreStatus::SolvedSat);
    REQUIRE(count_kind(r, ReductionStep::Kind::DropTautology) == 2);

    auto w = preprocess_witness(mk({{1, -1, 2}, {-2, 2}}), r);
    REQUIRE(w.has_value());
    REQUIRE(verify_assignment(mk({{1, -1, 2}, {-2, 2}}), *w).valid);
}

TEST_CASE("unit propagation cascades and records deletions") {
    // Unit 1 deletes -1, making (2) a unit; the rest then drains through the
    // pure-literal pass (2 first, then 3). No variable starts pure.
    const Formula f = mk({{1}, {-1, 2}, {-2, 3, 4}, {-3, -4, 2}});
    PreprocessResult r = preprocess(f);
    REQUIRE(r.status == PreStatus::SolvedSat);
    REQUIRE(r.forced == std::vector<Lit>{1, 2, 3});
    REQUIRE(count_kind(r, ReductionStep::Kind::DeleteLiteral) == 2);

    auto w = preprocess_witness(f, r);
    REQUIRE(w.has_value());
    REQUIRE(verify_assignment(f, *w).valid);
}

TEST_CASE("conflicts: complementary units, emptied clauses, empty input clauses") {
    PreprocessResult r = preprocess(mk({{1}, {-1}}));
    REQUIRE(r.status == PreStatus::SolvedUnsat);
    REQUIRE(count_kind(r, ReductionStep::Kind::Conflict) == 1);

    // Unit 1 leaves (2) and (-2); propagating 2 empties (-2).
    r = preprocess(mk({{1}, {-1, 2}, {-1, -2}}));
    REQUIRE(r.status == PreStatus::SolvedUnsat);

    r = preprocess(mk({{1, 2}, {}}));
    REQUIRE(r.status == PreStatus::SolvedUnsat);
    REQUIRE(r.log.back().kind == ReductionStep::Kind::Conflict);
    REQUIRE(r.log.back().orig_clause == 1);
}

TEST_CASE("irreducible formulas pass through with origin tracking") {
    const Formula f = mk({{1, 2}, {-2, -1}});  // already in normalized order
    PreprocessResult r = preprocess(f);
    REQUIRE(r.status == PreStatus::Continue);
    REQUIRE(r.reduced.clauses == f.clauses);
    REQUIRE(r.origin == std::vector<int>{0, 1});
    REQUIRE(r.forced.empty());
}

TEST_CASE("reduced output is normalized and fully reduced, and equisatisfiable") {
    std::mt19937_64 rng(20260814);
    for (int iter = 0; iter < 300; ++iter) {
        const Formula f = gen::random_adversarial(rng, 3 + static_cast<int>(iter % 6),
                                                  2 + static_cast<int>(iter % 12));
        PreprocessResult r = preprocess(f);
        const bool sat = oracle::dpll_satisfiable(f);

        if (r.status == PreStatus::SolvedSat) {
            REQUIRE(sat);
            auto w = preprocess_witness(f, r);
            REQUIRE(w.has_value());
            REQUIRE(verify_assignment(f, *w).valid);
            continue;
        }
        if (r.status == PreStatus::SolvedUnsat) {
            REQUIRE_FALSE(sat);
            continue;
        }

        // Equisatisfiable remainder.
        REQUIRE(oracle::dpll_satisfiable(r.reduced) == sat);

        // Normalized: ascending, duplicate-free literals; no duplicate clauses.
        std::set<Clause> seen;
        std::set<Lit> present;
        for (const Clause& c : r.reduced.clauses) {
            REQUIRE_FALSE(c.empty());
            REQUIRE(std::is_sorted(c.begin(), c.end()));
            REQUIRE(std::adjacent_find(c.begin(), c.end()) == c.end());
            REQUIRE(seen.insert(c).second);
            for (Lit l : c) present.insert(l);
        }
        for (const Clause& c : r.reduced.clauses) {
            REQUIRE(c.size() >= 2);  // no units survive
            for (Lit l : c) {
                REQUIRE(present.count(-l) == 1);                          // no pures
                REQUIRE_FALSE(std::binary_search(c.begin(), c.end(), -l));  // no tautologies
            }
        }
    }
}
