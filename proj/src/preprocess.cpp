// SPDX-License-Identifier: MIT

#include "seqsat/preprocess.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace seqsat {

std::string ReductionStep::json_line() const {
    static const char* names[] = {"drop_duplicate", "drop_tautology", "drop_pure_clause",
                                  "drop_unit_clause", "delete_literal", "conflict"};
    std::ostringstream os;
    os << "{\"action\":\"" << names[static_cast<int>(kind)] << "\",\"clause\":" << orig_clause;
    if (lit != 0) os << ",\"lit\":" << lit;
    if (other >= 0) os << ",\"other\":" << other;
    os << "}";
    return os.str();
}

namespace {

struct WorkClause {
    Clause lits;
    int orig;
};

bool is_tautology(const Clause& sorted) {
    for (Lit l : sorted)
        if (l > 0 && std::binary_search(sorted.begin(), sorted.end(), -l)) return true;
    return false;
}

}  // namespace

PreprocessResult preprocess(const Formula& input) {
    PreprocessResult res;
    std::vector<WorkClause> work;
    work.reserve(input.clauses.size());
    for (int i = 0; i < input.clause_count(); ++i) {
        Clause c = input.clauses[i];
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        if (c.empty()) {  // an empty clause is unsatisfiable outright
            res.log.push_back({ReductionStep::Kind::Conflict, i, 0, -1});
            res.status = PreStatus::SolvedUnsat;
            return res;
        }
        work.push_back({std::move(c), i});
    }

    std::set<Lit> forced_set;
    auto add_forced = [&](Lit l) {
        if (forced_set.insert(l).second) res.forced.push_back(l);
    };

    bool changed = true;
    while (changed) {
        changed = false;

        // Duplicate clauses (first occurrence survives). Re-run every
        // iteration: literal deletions can re-create duplicates.
        {
            std::map<Clause, int> seen;
            std::vector<WorkClause> kept;
            for (WorkClause& w : work) {
                auto [it, fresh] = seen.emplace(w.lits, w.orig);
                if (fresh) {
                    kept.push_back(std::move(w));
                } else {
                    res.log.push_back({ReductionStep::Kind::DropDuplicate, w.orig, 0, it->second});
                    changed = true;
                }
            }
            work = std::move(kept);
        }

        // Tautologies.
        {
            std::vector<WorkClause> kept;
            for (WorkClause& w : work) {
                if (is_tautology(w.lits)) {
                    res.log.push_back({ReductionStep::Kind::DropTautology, w.orig, 0, -1});
                    changed = true;
                } else {
                    kept.push_back(std::move(w));
                }
            }
            work = std::move(kept);
        }

        // Pure literals: drop every clause containing one; the lowest pure in
        // each dropped clause (signed order) becomes its representative.
        {
            std::set<Lit> present;
            for (const WorkClause& w : work)
                for (Lit l : w.lits) present.insert(l);
            auto is_pure = [&](Lit l) { return present.count(-l) == 0; };
            std::vector<WorkClause> kept;
            for (WorkClause& w : work) {
                Lit rep = 0;
                for (Lit l : w.lits)
                    if (is_pure(l)) {
                        rep = l;
                        break;
                    }
                if (rep != 0) {
                    add_forced(rep);
                    res.log.push_back({ReductionStep::Kind::DropPureClause, w.orig, rep, -1});
                    changed = true;
                } else {
                    kept.push_back(std::move(w));
                }
            }
            work = std::move(kept);
        }

        // Unit propagation, one unit at a time until none remain.
        for (bool more_units = true; more_units;) {
            more_units = false;
            for (std::size_t u = 0; u < work.size(); ++u) {
                if (work[u].lits.size() != 1) continue;
                const Lit l = work[u].lits[0];
                if (forced_set.count(-l)) {
                    res.log.push_back({ReductionStep::Kind::Conflict, work[u].orig, l, -1});
                    res.status = PreStatus::SolvedUnsat;
                    return res;
                }
                add_forced(l);
                res.log.push_back({ReductionStep::Kind::DropUnitClause, work[u].orig, l, -1});
                work.erase(work.begin() + static_cast<long>(u));
                for (WorkClause& w : work) {
                    auto it = std::lower_bound(w.lits.begin(), w.lits.end(), -l);
                    if (it != w.lits.end() && *it == -l) {
                        res.log.push_back({ReductionStep::Kind::DeleteLiteral, w.orig, -l, -1});
                        w.lits.erase(it);
                        if (w.lits.empty()) {
                            res.log.push_back({ReductionStep::Kind::Conflict, w.orig, 0, -1});
                            res.status = PreStatus::SolvedUnsat;
                            return res;
                        }
                    }
                }
                changed = true;
                more_units = true;
                break;  // rescan from the first clause
            }
        }

        if (work.empty()) {
            res.status = PreStatus::SolvedSat;
            return res;
        }
    }

    res.status = PreStatus::Continue;
    for (WorkClause& w : work) {
        res.reduced.clauses.push_back(std::move(w.lits));
        res.origin.push_back(w.orig);
    }
    return res;
}

std::optional<std::vector<Lit>> preprocess_witness(const Formula& input,
                                                   const PreprocessResult& r) {
    if (r.status != PreStatus::SolvedSat) return std::nullopt;
    std::set<Lit> chosen_set(r.forced.begin(), r.forced.end());
    std::vector<Lit> per_clause(input.clauses.size(), 0);
    for (int i = 0; i < input.clause_count(); ++i) {
        Clause c = input.clauses[i];
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        Lit pick = 0;
        for (Lit l : c)
            if (chosen_set.count(l)) {
                pick = l;
                break;
            }
        if (pick == 0 && is_tautology(c)) {
            for (Lit l : c)
                if (l > 0 && std::binary_search(c.begin(), c.end(), -l)) {
                    pick = chosen_set.count(-l) ? -l : l;
                    break;
                }
        }
        if (pick == 0) return std::nullopt;
        chosen_set.insert(pick);
        per_clause[i] = pick;
    }
    return per_clause;
}

}  // namespace seqsat
