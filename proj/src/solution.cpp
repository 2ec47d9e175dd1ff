// SPDX-License-Identifier: MIT

#include "seqsat/solution.hpp"

#include <algorithm>
#include <set>

#include "seqsat/layout.hpp"

namespace seqsat {

namespace {

// Commits a literal to the chosen set; false on a complementary conflict.
bool commit(std::vector<Lit>& order, std::set<Lit>& chosen, Lit l) {
    if (chosen.count(negated(l))) return false;
    if (chosen.insert(l).second) order.push_back(l);
    return true;
}

std::string lit_str(Lit l) { return std::to_string(l); }

}  // namespace

VerifyResult verify_assignment(const Formula& f, const std::vector<Lit>& per_clause) {
    if (per_clause.size() != f.clauses.size())
        return {false, "got " + std::to_string(per_clause.size()) + " choices for " +
                           std::to_string(f.clauses.size()) + " clauses"};
    std::set<Lit> chosen;
    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
        const Clause& cl = f.clauses[i];
        const Lit pick = per_clause[i];
        if (std::find(cl.begin(), cl.end(), pick) == cl.end())
            return {false, "clause " + std::to_string(i + 1) + " does not contain chosen literal " +
                               lit_str(pick)};
        chosen.insert(pick);
    }
    for (Lit l : chosen)
        if (l > 0 && chosen.count(negated(l)))
            return {false,
                    "complementary choices " + lit_str(l) + " and " + lit_str(negated(l))};
    return {true, {}};
}

std::vector<bool> assignment_from_choices(const Formula& f, const std::vector<Lit>& per_clause) {
    std::vector<bool> value(static_cast<std::size_t>(f.max_var()) + 1, false);
    for (Lit l : per_clause)
        if (l > 0) value[static_cast<std::size_t>(l)] = true;
    return value;
}

SolveResult construct_solution(const Formula& f, const Config& cfg) {
    SolveResult out;
    const int c0 = f.clause_count();
    const int cap = (c0 + 2) / 3 + 1;
    std::vector<Lit> order;
    std::set<Lit> chosen;

    auto stall = [&](std::string why) {
        out.status = SolveResult::Status::Stalled;
        out.detail = std::move(why);
        out.chosen = order;
        return out;
    };

    Formula current = f;
    while (!current.clauses.empty()) {
        if (out.rounds >= cap)
            return stall("pass budget of " + std::to_string(cap) + " exceeded");
        DecideResult r = decide(current, cfg);
        ++out.rounds;

        if (r.outcome == Outcome::Unsat) {
            out.status = SolveResult::Status::Unsat;
            out.detail = r.unsat_reason;
            out.chosen = order;
            out.round_notes.push_back("pass " + std::to_string(out.rounds) +
                                      ": contradiction (" + r.unsat_reason + ")");
            return out;
        }
        if (r.outcome == Outcome::SolvedInPreprocess) {
            for (Lit l : r.witness_per_clause)
                if (!commit(order, chosen, l))
                    return stall("preprocessing witness literal " + lit_str(l) +
                                 " conflicts with earlier commitments");
            out.round_notes.push_back("pass " + std::to_string(out.rounds) +
                                      ": preprocessing satisfied the remaining " +
                                      std::to_string(current.clause_count()) + " clauses");
            break;
        }

        // Fixpoint over the reduced formula.
        for (Lit l : r.pre.forced)
            if (!commit(order, chosen, l))
                return stall("forced literal " + lit_str(l) +
                             " conflicts with earlier commitments");

        Workspace& ws = *r.ws;
        const CellLayout& L = ws.layout;
        int eid = -1;
        for (const EdgeGroup& g : ws.groups) {
            for (int id : g.edges)
                if (ws.edges[id].alive) {
                    eid = id;
                    break;
                }
            if (eid >= 0) break;
        }
        if (eid < 0) return stall("no live edge at fixpoint");

        EdgeSeq e = ws.edges[eid];  // local copy: the reduction below edits bits
        if (!commit(order, chosen, e.la) || !commit(order, chosen, e.lb))
            return stall("edge endpoints conflict with earlier commitments");

        Lit z = 0;
        int zcell = -1;
        for (int p = 0; p < L.total_bits(); ++p) {
            if (!e.bits.get(p)) continue;
            const int cell = L.cell_of(p);
            if (cell == e.cell_a || cell == e.cell_b) continue;
            z = L.lit_at(p);
            zcell = cell;
            break;
        }
        if (z != 0) {
            if (!commit(order, chosen, z))
                return stall("third literal " + lit_str(z) +
                             " conflicts with earlier commitments");
            L.clear_lit(e.bits, negated(z));  // the remainder must not rely on -z
        }

        Formula next;
        for (int k = 0; k < L.cell_count(); ++k) {
            if (k == e.cell_a || k == e.cell_b || k == zcell) continue;
            Clause cl;
            const int off = L.cell_offset(k);
            const int sz = L.cell_size(k);
            for (int s = 0; s < sz; ++s)
                if (e.bits.get(off + s)) cl.push_back(L.lit_at(off + s));
            if (cl.empty())
                return stall("clause lost all candidate literals during reduction");
            next.clauses.push_back(std::move(cl));
        }

        std::string note = "pass " + std::to_string(out.rounds) + ": fixpoint after " +
                           std::to_string(r.runs.size()) + " runs; committed " + lit_str(e.la) +
                           ", " + lit_str(e.lb);
        if (z != 0) note += ", " + lit_str(z);
        note += "; " + std::to_string(next.clause_count()) + " clauses remain";
        out.round_notes.push_back(std::move(note));
        current = std::move(next);
    }

    // One committed literal per input clause; tautologies may self-satisfy.
    out.per_clause.reserve(f.clauses.size());
    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
        const Clause& cl = f.clauses[i];
        Lit pick = 0;
        for (Lit l : cl)
            if (chosen.count(l)) {
                pick = l;
                break;
            }
        if (pick == 0) {
            for (Lit l : cl)
                if (std::find(cl.begin(), cl.end(), negated(l)) != cl.end()) {
                    pick = l;  // neither polarity committed, so this is safe
                    break;
                }
            if (pick != 0 && !commit(order, chosen, pick))
                return stall("tautology fill conflict in clause " + std::to_string(i + 1));
        }
        if (pick == 0)
            return stall("clause " + std::to_string(i + 1) + " ended with no committed literal");
        out.per_clause.push_back(pick);
    }
    out.chosen = order;

    const VerifyResult v = verify_assignment(f, out.per_clause);
    if (!v.valid) return stall("constructed choices failed verification: " + v.reason);
    out.status = SolveResult::Status::Sat;
    return out;
}

ExtractResult extract_from_singleton_edge(const Workspace& ws, int eid) {
    const CellLayout& L = ws.layout;
    const EdgeSeq& e = ws.edges[eid];
    ExtractResult out;
    if (!e.alive) {
        out.reason = "edge is dead";
        return out;
    }
    const BitVec& B = e.bits;
    const int c = L.cell_count();

    for (int p = 0; p < L.total_bits(); ++p) {
        if (!B.get(p)) continue;
        const Lit u = L.lit_at(p);
        int live = 0;
        for (int q : L.positions_of(u)) live += B.get(q) ? 1 : 0;
        if (live != 1) {
            out.reason = "literal " + lit_str(u) + " has " + std::to_string(live) +
                         " live occurrences (needs exactly one)";
            return out;
        }
    }
    for (int k = 0; k < c; ++k)
        if (L.cell_empty(B, k)) {
            out.reason = "clause " + std::to_string(k + 1) + " has no live literal";
            return out;
        }

    std::vector<Lit> rep(c, 0);
    std::set<Lit> reps;
    int selected = 0;

    auto select = [&](int k, Lit u) {
        rep[k] = u;
        reps.insert(u);
        ++selected;
    };
    auto live_neg_in_unselected = [&](Lit u) {
        if (!L.contains(negated(u))) return false;
        for (int q : L.positions_of(negated(u)))
            if (B.get(q) && rep[L.cell_of(q)] == 0) return true;
        return false;
    };
    auto live_neg_in_selected = [&](Lit u) {
        if (!L.contains(negated(u))) return false;
        for (int q : L.positions_of(negated(u)))
            if (B.get(q) && rep[L.cell_of(q)] != 0) return true;
        return false;
    };
    // True when the (unique) live occurrence of -w sits in a selected cell
    // without representing it: w can then be chosen freely, -w is discarded.
    auto discarded_negation_in_selected = [&](Lit w) {
        if (!L.contains(negated(w))) return false;
        for (int q : L.positions_of(negated(w))) {
            if (!B.get(q)) continue;
            const int m = L.cell_of(q);
            return rep[m] != 0 && rep[m] != negated(w);
        }
        return false;
    };

    // Literals whose negation is no longer available outside the selection.
    auto pure_pass = [&]() {
        bool restart = true;
        while (restart) {
            restart = false;
            for (int k = 0; k < c && !restart; ++k) {
                if (rep[k] != 0) continue;
                const int off = L.cell_offset(k);
                const int sz = L.cell_size(k);
                for (int s = 0; s < sz; ++s) {
                    const int p = off + s;
                    if (!B.get(p)) continue;
                    const Lit u = L.lit_at(p);
                    if (!live_neg_in_unselected(u) && !reps.count(negated(u))) {
                        select(k, u);
                        restart = true;
                        break;
                    }
                }
            }
        }
    };

    // Cells holding the negation of a discarded entry must claim it, or the
    // discarded literal's clause could lose its representative's support.
    auto claim_pass = [&]() {
        bool restart = true;
        while (restart) {
            restart = false;
            for (int k = 0; k < c && !restart; ++k) {
                if (rep[k] != 0) continue;
                const int off = L.cell_offset(k);
                const int sz = L.cell_size(k);
                for (int s = 0; s < sz; ++s) {
                    const int p = off + s;
                    if (!B.get(p)) continue;
                    const Lit u = L.lit_at(p);
                    if (discarded_negation_in_selected(u)) {
                        select(k, u);
                        restart = true;
                        break;
                    }
                }
            }
        }
    };

    int outer = 0;
    while (selected < c) {
        if (++outer > c + 1) {
            out.reason = "selection did not converge";
            return out;
        }
        pure_pass();
        if (selected == c) break;

        int start = -1;
        for (int k = 0; k < c; ++k)
            if (rep[k] == 0) {
                start = k;
                break;
            }
        Lit cur = 0;
        {
            const int off = L.cell_offset(start);
            const int sz = L.cell_size(start);
            for (int s = 0; s < sz; ++s) {
                const int p = off + s;
                if (!B.get(p)) continue;
                const Lit u = L.lit_at(p);
                if (!reps.count(negated(u))) {
                    select(start, u);
                    cur = u;
                    break;
                }
            }
        }
        if (cur == 0) {
            out.reason = "no consistent representative for clause " + std::to_string(start + 1);
            return out;
        }

        // Follow the displaced negation from cell to cell.
        while (true) {
            int qpos = -1;
            if (L.contains(negated(cur)))
                for (int q : L.positions_of(negated(cur)))
                    if (B.get(q)) {
                        qpos = q;
                        break;
                    }
            if (qpos < 0) break;  // negation already dead
            const int cj = L.cell_of(qpos);
            if (rep[cj] != 0) break;  // negation discarded inside the selection

            Lit pick = 0;
            bool stop = false;
            const int off = L.cell_offset(cj);
            const int sz = L.cell_size(cj);
            for (int s = 0; s < sz && pick == 0; ++s) {
                const int p = off + s;
                if (!B.get(p)) continue;
                const Lit w = L.lit_at(p);
                if (discarded_negation_in_selected(w)) {
                    pick = w;
                    stop = true;
                }
            }
            if (pick == 0) {
                for (int s = 0; s < sz && pick == 0; ++s) {
                    const int p = off + s;
                    if (!B.get(p)) continue;
                    const Lit w = L.lit_at(p);
                    if (w == negated(cur)) continue;
                    if (!live_neg_in_selected(w)) pick = w;
                }
                if (pick == 0) {
                    out.reason = "chain blocked at clause " + std::to_string(cj + 1);
                    return out;
                }
            }
            select(cj, pick);
            if (stop) break;
            cur = pick;
        }
        claim_pass();
    }

    const VerifyResult v = verify_assignment(ws.formula, rep);
    if (!v.valid) {
        out.reason = "extracted selection invalid: " + v.reason;
        return out;
    }
    out.per_cell = std::move(rep);
    out.ok = true;
    return out;
}

}  // namespace seqsat
