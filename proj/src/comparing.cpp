// SPDX-License-Identifier: MIT

#include "seqsat/comparing.hpp"

#include <chrono>

namespace seqsat {

const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::SolvedInPreprocess: return "SolvedInPreprocess";
        case Outcome::Unsat: return "Unsat";
        case Outcome::Fixpoint: return "Fixpoint";
    }
    return "?";
}

void determine_edge(Workspace& ws, int eid, int other_group) {
    EdgeSeq& t = ws.edges[eid];
    if (!t.alive) return;
    ++ws.counters.determinations;
    const CellLayout& L = ws.layout;

    BitVec& z = ws.scratch_z;
    BitVec& u = ws.scratch_u;
    u.clear_all();
    bool any_survivor = false;

    for (int jid : ws.groups[other_group].edges) {
        const EdgeSeq& j = ws.edges[jid];
        if (!j.alive) continue;
        // A candidate without both endpoint bits would intersect to an empty
        // endpoint cell anyway (those cells hold a single bit), so skip it.
        if (!j.bits.get(t.pos_a) || !j.bits.get(t.pos_b)) continue;

        ++ws.counters.intersections;
        if (!and_of_compliant(z, t.bits, j.bits, L)) continue;
        if (ws.config.complement_discard) {
            const int endpoint_cells[4] = {t.cell_a, t.cell_b, j.cell_a, j.cell_b};
            if (eliminated_complement_pair(z, L, endpoint_cells, 4)) {
                ++ws.counters.complement_eliminations;
                continue;
            }
        }
        u.or_with(z);
        any_survivor = true;
        ++ws.counters.unions;
    }

    if (!any_survivor) {
        // No candidate documents a selection through this edge's endpoints.
        kill_edge(ws, eid, Origin::Determination);
        saturate(ws);
        return;
    }
    if (u == t.bits) return;

    // Every survivor is a subset of t, so u <= t and the xor is exactly the
    // cleared positions.
    std::vector<Lit> lits;
    int flips = 0;
    for (int w = 0; w < t.bits.words(); ++w) {
        std::uint64_t diff = t.bits.word(w) ^ u.word(w);
        flips += std::popcount(diff);
        while (diff) {
            const int p = w * 64 + std::countr_zero(diff);
            diff &= diff - 1;
            const Lit gone = L.lit_at(p);
            bool fresh = true;
            for (Lit l : lits)
                if (l == gone) {
                    fresh = false;
                    break;
                }
            if (fresh) {
                lits.push_back(gone);
                if (ws.config.record_events)
                    ws.events.push_back(
                        {RefinementEvent::Kind::EdgeBitsCleared, eid, gone, Origin::Determination});
            }
        }
    }
    t.bits = u;
    ws.counters.bit_changes += static_cast<std::uint64_t>(flips);
    ++ws.group_version[t.group];

    finish_edge_mutation(ws, eid, std::move(lits), Origin::Determination);
    saturate(ws);
}

bool compare_groups(Workspace& ws, int p, int q) {
    ++ws.counters.comparisons;

    std::size_t rank = 0;
    if (ws.config.memoize_settled_pairs) {
        const std::size_t n = ws.groups.size();
        if (ws.settled_pairs.empty() && n >= 2)
            ws.settled_pairs.assign(n * (n - 1) / 2,
                                    {Workspace::kNeverSettled, Workspace::kNeverSettled});
        rank = ws.group_pair_rank(p, q);
        const auto& memo = ws.settled_pairs[rank];
        if (memo.first == ws.group_version[p] && memo.second == ws.group_version[q]) {
            ++ws.counters.comparisons_skipped;
            return false;
        }
    }

    const std::uint64_t before = ws.refinements();
    int sweep = 0;
    while (true) {
        const int target = (sweep % 2 == 0) ? p : q;
        const int other = (sweep % 2 == 0) ? q : p;
        const std::uint64_t at_start = ws.refinements();
        for (int eid : ws.groups[target].edges) {
            if (ws.unsat) break;
            if (ws.edges[eid].alive) determine_edge(ws, eid, other);
        }
        const bool sweep_refined = ws.refinements() != at_start;
        ++sweep;
        if (ws.unsat) break;
        if (sweep < 2) continue;           // both directions always get one sweep
        if (ws.config.single_pass) break;  // and single-pass mode stops there
        if (!sweep_refined) break;         // stable once the latest sweep adds nothing
    }

    const bool refined = ws.refinements() != before;
    if (ws.config.memoize_settled_pairs && !ws.unsat) {
        if (refined)
            ws.settled_pairs[rank] = {Workspace::kNeverSettled, Workspace::kNeverSettled};
        else
            ws.settled_pairs[rank] = {ws.group_version[p], ws.group_version[q]};
    }
    return refined;
}

RunStats execute_run(Workspace& ws) {
    const Counters before = ws.counters;
    ++ws.counters.runs;
    const int n = static_cast<int>(ws.groups.size());
    for (int p = 0; p < n && !ws.unsat; ++p)
        for (int q = p + 1; q < n && !ws.unsat; ++q) compare_groups(ws, p, q);

    const Counters& after = ws.counters;
    RunStats rs;
    rs.run = static_cast<int>(after.runs);
    rs.comparisons = after.comparisons - before.comparisons;
    rs.comparisons_skipped = after.comparisons_skipped - before.comparisons_skipped;
    rs.determinations = after.determinations - before.determinations;
    rs.intersections = after.intersections - before.intersections;
    rs.unions = after.unions - before.unions;
    rs.complement_eliminations = after.complement_eliminations - before.complement_eliminations;
    rs.bit_changes = after.bit_changes - before.bit_changes;
    rs.edge_deaths = after.edge_deaths - before.edge_deaths;
    rs.vertex_deaths = after.vertex_deaths - before.vertex_deaths;
    return rs;
}

std::vector<RunStats> execute_round(Workspace& ws) {
    std::vector<RunStats> out;
    while (!ws.unsat) {
        out.push_back(execute_run(ws));
        if (out.back().refinements() == 0) break;
    }
    return out;
}

DecideResult decide(const Formula& f, const Config& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    DecideResult r;
    r.pre = preprocess(f);
    switch (r.pre.status) {
        case PreStatus::SolvedUnsat:
            r.outcome = Outcome::Unsat;
            r.unsat_reason = "preprocessing derived a contradiction";
            break;
        case PreStatus::SolvedSat: {
            r.outcome = Outcome::SolvedInPreprocess;
            auto witness = preprocess_witness(f, r.pre);
            if (witness) r.witness_per_clause = std::move(*witness);
            break;
        }
        case PreStatus::Continue: {
            r.ws = build_workspace(r.pre.reduced, cfg);
            if (!r.ws->unsat) saturate(*r.ws);
            r.initial_live_bits = r.ws->live_bit_total();
            if (!r.ws->unsat) r.runs = execute_round(*r.ws);
            if (r.ws->unsat) {
                r.outcome = Outcome::Unsat;
                r.unsat_reason = r.ws->unsat_reason;
            } else {
                r.outcome = Outcome::Fixpoint;
            }
            break;
        }
    }
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                   .count();
    return r;
}

}  // namespace seqsat
