// SPDX-License-Identifier: MIT
//
// Reference deciders, deliberately independent of the sequence engine. Two
// different views of satisfiability (clause-wise selection search and
// assignment enumeration) cross-check each other in tests; DPLL covers sizes
// where enumeration is too slow.

#pragma once

#include <cstdint>
#include <vector>

#include "seqsat/types.hpp"

namespace seqsat::oracle {

// Picks one literal per clause, never a complementary pair; equivalent to
// satisfiability. Fills `witness` (one literal per clause) when non-null.
bool selection_satisfiable(const Formula& f, std::vector<Lit>* witness = nullptr);

// Tries every assignment of the variables that occur in f (up to 2^26).
bool enumeration_satisfiable(const Formula& f);

// Unit propagation + pure-literal elimination + branching. Fills `model`
// (indexed by variable, [0] unused) when non-null.
bool dpll_satisfiable(const Formula& f, std::vector<bool>* model = nullptr);

// Every solution as a per-clause literal selection, in lexicographic order of
// the search; stops after `limit` solutions. Small instances only.
std::vector<std::vector<Lit>> all_selections(const Formula& f,
                                             std::size_t limit = static_cast<std::size_t>(-1));

// True when some solution of f selects, for every (clause, literal) pair in
// `pins`, exactly that literal in that clause.
bool selection_exists_with(const Formula& f, const std::vector<std::pair<int, Lit>>& pins);

}  // namespace seqsat::oracle
