// SPDX-License-Identifier: MIT
//
// Instance generators: an exhaustive enumeration of all small normalized
// formulas (random-access by index, so sweeps can be chunked across threads)
// and seeded random generators in clean and adversarial flavors.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "seqsat/types.hpp"

namespace seqsat::gen {

// Every distinct normalized clause (1-3 distinct literals, no complementary
// pair) over variables 1..nvars, ordered by size then lexicographically;
// formulas are the nonempty subsets of at most max_clauses of them, ranked
// subsets of size 1 first, then 2, and so on, each size block in
// lexicographic order.
class ExhaustiveSpace {
  public:
    ExhaustiveSpace(int nvars, int max_clauses);

    std::uint64_t count() const { return total_; }
    int clause_universe_size() const { return static_cast<int>(universe_.size()); }
    const std::vector<Clause>& clause_universe() const { return universe_; }

    Formula at(std::uint64_t index) const;  // 0 <= index < count()

  private:
    std::vector<Clause> universe_;
    int max_clauses_;
    std::uint64_t total_ = 0;
};

// Uniform clauses of three distinct variables, random polarities. Literals
// appear in the order drawn (callers normalize if they care).
Formula random_3sat(std::mt19937_64& rng, int nvars, int nclauses);

// Messy instances: clause lengths 1-3, and with the given percent chance per
// clause, inject a duplicate of an earlier clause, a clause containing a
// complementary pair, or a repeated literal.
Formula random_adversarial(std::mt19937_64& rng, int nvars, int max_clauses,
                           int dirty_percent = 40);

// Deterministic integer in [0, n) from the engine's raw output.
std::uint64_t below(std::mt19937_64& rng, std::uint64_t n);

}  // namespace seqsat::gen
