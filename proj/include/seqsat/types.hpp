// SPDX-License-Identifier: MIT
//
// Basic CNF types: literals, clauses, formulas.

#pragma once

#include <cstdint>
#include <cstdlib>
#include <set>
#include <string>
#include <vector>

namespace seqsat {

// A literal is a nonzero signed integer in DIMACS convention: +v / -v.
using Lit = std::int32_t;

inline Lit negated(Lit l) { return -l; }
inline std::int32_t var_of(Lit l) { return l < 0 ? -l : l; }

using Clause = std::vector<Lit>;

struct Formula {
    std::vector<Clause> clauses;

    bool empty() const { return clauses.empty(); }
    int clause_count() const { return static_cast<int>(clauses.size()); }

    // Total number of literal occurrences (the sum of all clause sizes).
    int position_count() const {
        int n = 0;
        for (const Clause& c : clauses) n += static_cast<int>(c.size());
        return n;
    }

    int distinct_var_count() const {
        std::set<std::int32_t> vars;
        for (const Clause& c : clauses)
            for (Lit l : c) vars.insert(var_of(l));
        return static_cast<int>(vars.size());
    }

    std::int32_t max_var() const {
        std::int32_t m = 0;
        for (const Clause& c : clauses)
            for (Lit l : c)
                if (var_of(l) > m) m = var_of(l);
        return m;
    }
};

// Canonical text form "(a b c)(d e)" used in logs and test diagnostics.
std::string to_string(const Formula& f);

}  // namespace seqsat
