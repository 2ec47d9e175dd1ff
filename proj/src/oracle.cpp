// SPDX-License-Identifier: MIT

#include "seqsat/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

namespace seqsat::oracle {

namespace {

// Depth-first selection search shared by the satisfiability check, the
// enumerator and the pinned-membership query.
struct SelectionSearch {
    const Formula& f;
    const std::vector<std::pair<int, Lit>>& pins;
    std::size_t limit;
    bool collect;

    std::vector<Lit> picked;
    std::map<Lit, int> active;  // literal -> number of clauses currently using it
    std::vector<std::vector<Lit>> found;

    SelectionSearch(const Formula& f_, const std::vector<std::pair<int, Lit>>& pins_,
                    std::size_t limit_, bool collect_)
        : f(f_), pins(pins_), limit(limit_), collect(collect_) {}

    Lit pin_for(int clause) const {
        for (const auto& [i, l] : pins)
            if (i == clause) return l;
        return 0;
    }

    bool dfs(std::size_t i) {
        if (i == f.clauses.size()) {
            if (collect) found.push_back(picked);
            return true;
        }
        const Lit pin = pin_for(static_cast<int>(i));
        for (Lit l : f.clauses[i]) {
            if (pin != 0 && l != pin) continue;
            if (active.count(negated(l))) continue;
            picked.push_back(l);
            ++active[l];
            const bool ok = dfs(i + 1);
            if (--active[l] == 0) active.erase(l);
            picked.pop_back();
            if (ok && (!collect || found.size() >= limit)) return true;
        }
        return collect && !found.empty();
    }
};

}  // namespace

bool selection_satisfiable(const Formula& f, std::vector<Lit>* witness) {
    std::vector<std::pair<int, Lit>> no_pins;
    SelectionSearch s(f, no_pins, 1, false);
    if (witness) {
        s.collect = true;
        const bool sat = s.dfs(0);
        if (sat && !s.found.empty()) *witness = s.found.front();
        return sat;
    }
    return s.dfs(0);
}

bool enumeration_satisfiable(const Formula& f) {
    std::set<int> vars;
    for (const Clause& cl : f.clauses)
        for (Lit l : cl) vars.insert(var_of(l));
    if (vars.size() > 26) std::abort();  // guard: this oracle is for small instances

    std::vector<int> order(vars.begin(), vars.end());
    std::map<int, int> index;
    for (std::size_t i = 0; i < order.size(); ++i) index[order[i]] = static_cast<int>(i);

    const std::uint64_t total = std::uint64_t{1} << order.size();
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        bool all = true;
        for (const Clause& cl : f.clauses) {
            bool sat = false;
            for (Lit l : cl) {
                const bool value = (bits >> index[var_of(l)]) & 1;
                if (value == (l > 0)) {
                    sat = true;
                    break;
                }
            }
            if (!sat) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

namespace {

bool dpll(std::vector<Clause> clauses, std::map<int, bool>& assign) {
    // Unit propagation and pure-literal elimination to a fixpoint.
    bool changed = true;
    while (changed) {
        changed = false;
        std::map<int, int> polarity;  // var -> bitmask: 1 positive, 2 negative
        for (std::size_t i = 0; i < clauses.size(); ++i) {
            if (clauses[i].empty()) return false;
            if (clauses[i].size() == 1) {
                const Lit unit = clauses[i][0];
                assign[var_of(unit)] = unit > 0;
                std::vector<Clause> next;
                for (const Clause& cl : clauses) {
                    if (std::find(cl.begin(), cl.end(), unit) != cl.end()) continue;
                    Clause kept;
                    for (Lit l : cl)
                        if (l != negated(unit)) kept.push_back(l);
                    next.push_back(std::move(kept));
                }
                clauses = std::move(next);
                changed = true;
                break;
            }
            for (Lit l : clauses[i]) polarity[var_of(l)] |= l > 0 ? 1 : 2;
        }
        if (changed) continue;
        for (const auto& [v, mask] : polarity) {
            if (mask == 3) continue;
            const Lit pure = mask == 1 ? v : -v;
            assign[v] = pure > 0;
            std::vector<Clause> next;
            for (const Clause& cl : clauses)
                if (std::find(cl.begin(), cl.end(), pure) == cl.end()) next.push_back(cl);
            clauses = std::move(next);
            changed = true;
            break;
        }
    }
    if (clauses.empty()) return true;

    const Lit branch = clauses.front().front();
    for (const Lit value : {branch, negated(branch)}) {
        std::map<int, bool> attempt = assign;
        attempt[var_of(value)] = value > 0;
        std::vector<Clause> next;
        bool dead = false;
        for (const Clause& cl : clauses) {
            if (std::find(cl.begin(), cl.end(), value) != cl.end()) continue;
            Clause kept;
            for (Lit l : cl)
                if (l != negated(value)) kept.push_back(l);
            if (kept.empty()) {
                dead = true;
                break;
            }
            next.push_back(std::move(kept));
        }
        if (!dead && dpll(std::move(next), attempt)) {
            assign = std::move(attempt);
            return true;
        }
    }
    return false;
}

}  // namespace

bool dpll_satisfiable(const Formula& f, std::vector<bool>* model) {
    // A clause with both polarities of a variable is always satisfiable;
    // strip such clauses so the plain resolution below stays simple.
    std::vector<Clause> clauses;
    for (const Clause& cl : f.clauses) {
        bool taut = false;
        std::set<Lit> lits(cl.begin(), cl.end());
        for (Lit l : lits)
            if (lits.count(negated(l))) {
                taut = true;
                break;
            }
        if (!taut) clauses.emplace_back(lits.begin(), lits.end());
    }
    std::map<int, bool> assign;
    if (!dpll(std::move(clauses), assign)) return false;
    if (model) {
        model->assign(static_cast<std::size_t>(f.max_var()) + 1, false);
        for (const auto& [v, val] : assign) (*model)[static_cast<std::size_t>(v)] = val;
    }
    return true;
}

std::vector<std::vector<Lit>> all_selections(const Formula& f, std::size_t limit) {
    std::vector<std::pair<int, Lit>> no_pins;
    SelectionSearch s(f, no_pins, limit, true);
    s.dfs(0);
    return std::move(s.found);
}

bool selection_exists_with(const Formula& f, const std::vector<std::pair<int, Lit>>& pins) {
    SelectionSearch s(f, pins, 1, false);
    return s.dfs(0);
}

}  // namespace seqsat::oracle
