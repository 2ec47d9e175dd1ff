// SPDX-License-Identifier: MIT
//
// Worklist-driven refinement closure over edge and vertex sequences.
//
// Clearing a literal or killing a sequence is never a local act: families of
// sequences that share labels must stay consistent, so every mutation ends by
// queuing a work item, and saturate() drains the queue by replaying the
// corresponding family-wide rule. All rules only turn 1 bits into 0 bits, so
// saturation terminates.

#include "seqsat/refine.hpp"

#include <algorithm>
#include <unordered_set>

namespace seqsat {

namespace {

void log_event(Workspace& ws, RefinementEvent::Kind kind, int seq, Lit lit, Origin origin) {
    if (ws.config.record_events) ws.events.push_back({kind, seq, lit, origin});
}

// Appends `lit` if not already present (vectors here stay tiny).
void push_unique(std::vector<Lit>& v, Lit lit) {
    if (std::find(v.begin(), v.end(), lit) == v.end()) v.push_back(lit);
}

// Tracks which sequences a family rule touched, preserving first-touch order
// so the follow-up compliance pass is deterministic.
class Touched {
public:
    void add(int id) {
        if (seen_.insert(id).second) order_.push_back(id);
    }
    const std::vector<int>& order() const { return order_; }

private:
    std::unordered_set<int> seen_;
    std::vector<int> order_;
};

const std::vector<int>* family(const std::unordered_map<std::uint64_t, std::vector<int>>& map,
                               std::uint64_t key) {
    auto it = map.find(key);
    return it == map.end() ? nullptr : &it->second;
}

const std::vector<int>* family(const std::unordered_map<Lit, std::vector<int>>& map, Lit key) {
    auto it = map.find(key);
    return it == map.end() ? nullptr : &it->second;
}

// --- in-place cell compliance -----------------------------------------------
//
// Shared by edges and vertices: any cell down to a single live bit forces its
// literal, so the occurrences of the negation are cleared (restarting the
// scan); any cell with no live bit kills the sequence. The ClearFn must route
// through clear_lit_in_* so counters, versions and the event log stay honest.

template <typename ClearFn>
bool comply(Workspace& ws, const BitVec& bits, ClearFn clear, std::vector<Lit>& cleared) {
    const CellLayout& L = ws.layout;
    const int cells = L.cell_count();
    bool restart = true;
    while (restart) {
        restart = false;
        for (int k = 0; k < cells; ++k) {
            const int live = L.cell_live_count(bits, k);
            if (live == 0) return false;
            if (live != 1) continue;
            const int off = L.cell_offset(k);
            const int size = L.cell_size(k);
            for (int s = 0; s < size; ++s) {
                if (!bits.get(off + s)) continue;
                const Lit forced = L.lit_at(off + s);
                if (clear(negated(forced)) > 0) {
                    push_unique(cleared, negated(forced));
                    restart = true;
                }
                break;
            }
            if (restart) break;
        }
    }
    for (int k = 0; k < cells; ++k)
        if (L.cell_empty(bits, k)) return false;
    return true;
}

// --- family rules (see refine.hpp for the behavioural contract) --------------

void on_edge_changed(Workspace& ws, const WorkItem& item);
void on_edge_died(Workspace& ws, const WorkItem& item);
void on_vertex_changed(Workspace& ws, const WorkItem& item);
void on_vertex_died(Workspace& ws, const WorkItem& item);

void on_edge_changed(Workspace& ws, const WorkItem& item) {
    const EdgeSeq& e = ws.edges[item.seq];
    if (!e.alive) return;  // the death rule supersedes per-literal closure
    const Lit a = e.la;
    const Lit b = e.lb;
    Touched touched;
    // An {a,b} edge without c means no solution selects a, b and c together,
    // whichever occurrences are involved. Enforce that on all three label
    // pairs of the triple.
    for (Lit c : item.lits) {
        struct Step {
            Lit fam_x, fam_y, gone;
        } steps[3] = {{a, b, c}, {a, c, b}, {b, c, a}};
        for (const Step& st : steps) {
            const auto* fam = family(ws.edges_by_labels, label_key(st.fam_x, st.fam_y));
            if (!fam) continue;
            for (int id : *fam) {
                if (!ws.edges[id].alive) continue;
                if (clear_lit_in_edge(ws, id, st.gone, Origin::LabelClosure) > 0) touched.add(id);
            }
        }
    }
    // The family sweep above is already closed for the literals it cleared;
    // only fresh compliance fallout needs to propagate further.
    for (int id : touched.order()) {
        if (ws.unsat) return;
        if (ws.edges[id].alive) finish_edge_mutation(ws, id, {}, Origin::LabelClosure);
    }
}

void on_edge_died(Workspace& ws, const WorkItem& item) {
    const EdgeSeq& e = ws.edges[item.seq];
    const Lit x = e.la;
    const Lit y = e.lb;
    // One death per label pair does all the work; later deaths in the same
    // family are the fallout of this handler.
    if (!ws.dead_label_pairs.insert(label_key(x, y)).second) return;

    if (const auto* fam = family(ws.edges_by_labels, label_key(x, y))) {
        for (int id : *fam)
            if (ws.edges[id].alive) kill_edge(ws, id, Origin::DeathClosure);
    }
    if (ws.unsat) return;

    // No solution selects x and y together: every x-labelled vertex sequence
    // and every edge with endpoint label x drops y, and symmetrically.
    struct Side {
        Lit endpoint, gone;
    } sides[2] = {{x, y}, {y, x}};

    Touched tv;
    for (const Side& sd : sides) {
        const auto* fam = family(ws.vertices_by_label, sd.endpoint);
        if (!fam) continue;
        for (int id : *fam) {
            if (!ws.vertices[id].alive) continue;
            if (clear_lit_in_vertex(ws, id, sd.gone, Origin::DeathClosure) > 0) tv.add(id);
        }
    }
    for (int id : tv.order()) {
        if (ws.unsat) return;
        if (ws.vertices[id].alive) finish_vertex_mutation(ws, id, {}, Origin::DeathClosure);
    }

    Touched te;
    for (const Side& sd : sides) {
        const auto* fam = family(ws.edges_by_endpoint, sd.endpoint);
        if (!fam) continue;
        for (int id : *fam) {
            if (!ws.edges[id].alive) continue;
            if (clear_lit_in_edge(ws, id, sd.gone, Origin::DeathClosure) > 0) te.add(id);
        }
    }
    for (int id : te.order()) {
        if (ws.unsat) return;
        if (ws.edges[id].alive) finish_edge_mutation(ws, id, {}, Origin::DeathClosure);
    }
}

void on_vertex_changed(Workspace& ws, const WorkItem& item) {
    const VertexSeq& v = ws.vertices[item.seq];
    if (!v.alive) return;
    const auto* fam = family(ws.vertices_by_label, v.lit);
    if (!fam) return;
    Touched touched;
    // Same-label vertex sequences describe the same selections up to swapping
    // occurrences, so they keep identical cleared-literal sets.
    for (Lit w : item.lits) {
        for (int id : *fam) {
            if (!ws.vertices[id].alive) continue;
            if (clear_lit_in_vertex(ws, id, w, Origin::LabelClosure) > 0) touched.add(id);
        }
    }
    for (int id : touched.order()) {
        if (ws.unsat) return;
        if (ws.vertices[id].alive) finish_vertex_mutation(ws, id, {}, Origin::LabelClosure);
    }
}

void on_vertex_died(Workspace& ws, const WorkItem& item) {
    const Lit x = ws.vertices[item.seq].lit;
    if (!ws.eliminated_labels.insert(x).second) return;

    // No solution selects x at all: same-label vertex sequences and every
    // edge with endpoint label x die with it.
    if (const auto* fam = family(ws.vertices_by_label, x)) {
        for (int id : *fam)
            if (ws.vertices[id].alive) kill_vertex(ws, id, Origin::DeathClosure);
    }
    if (ws.unsat) return;
    if (const auto* fam = family(ws.edges_by_endpoint, x)) {
        for (int id : *fam)
            if (ws.edges[id].alive) kill_edge(ws, id, Origin::DeathClosure);
    }
    if (ws.unsat) return;

    // Then x disappears from every surviving sequence.
    Touched tv;
    for (int id = 0; id < static_cast<int>(ws.vertices.size()); ++id) {
        if (!ws.vertices[id].alive) continue;
        if (clear_lit_in_vertex(ws, id, x, Origin::DeathClosure) > 0) tv.add(id);
    }
    for (int id : tv.order()) {
        if (ws.unsat) return;
        if (ws.vertices[id].alive) finish_vertex_mutation(ws, id, {}, Origin::DeathClosure);
    }

    Touched te;
    for (int id = 0; id < static_cast<int>(ws.edges.size()); ++id) {
        if (!ws.edges[id].alive) continue;
        if (clear_lit_in_edge(ws, id, x, Origin::DeathClosure) > 0) te.add(id);
    }
    for (int id : te.order()) {
        if (ws.unsat) return;
        if (ws.edges[id].alive) finish_edge_mutation(ws, id, {}, Origin::DeathClosure);
    }
}

}  // namespace

int clear_lit_in_edge(Workspace& ws, int eid, Lit lit, Origin origin) {
    EdgeSeq& e = ws.edges[eid];
    const int flips = ws.layout.clear_lit(e.bits, lit);
    if (flips > 0) {
        ws.counters.bit_changes += static_cast<std::uint64_t>(flips);
        ++ws.group_version[e.group];
        log_event(ws, RefinementEvent::Kind::EdgeBitsCleared, eid, lit, origin);
    }
    return flips;
}

int clear_lit_in_vertex(Workspace& ws, int vid, Lit lit, Origin origin) {
    VertexSeq& v = ws.vertices[vid];
    const int flips = ws.layout.clear_lit(v.bits, lit);
    if (flips > 0) {
        ws.counters.bit_changes += static_cast<std::uint64_t>(flips);
        log_event(ws, RefinementEvent::Kind::VertexBitsCleared, vid, lit, origin);
    }
    return flips;
}

void kill_edge(Workspace& ws, int eid, Origin origin) {
    EdgeSeq& e = ws.edges[eid];
    if (!e.alive) return;
    e.alive = false;
    e.bits.clear_all();
    ++ws.counters.edge_deaths;
    ++ws.group_version[e.group];
    EdgeGroup& g = ws.groups[e.group];
    --g.live;
    log_event(ws, RefinementEvent::Kind::EdgeDied, eid, 0, origin);
    ws.queue.push_back({WorkItem::Kind::EdgeDied, eid, {}});
    // A clause pair with no surviving edge admits no joint selection at all.
    if (!ws.constructing && g.live == 0)
        set_unsat(ws, "no live edges between clauses " + std::to_string(g.cell_i + 1) + " and " +
                          std::to_string(g.cell_j + 1));
}

void kill_vertex(Workspace& ws, int vid, Origin origin) {
    VertexSeq& v = ws.vertices[vid];
    if (!v.alive) return;
    v.alive = false;
    v.bits.clear_all();
    ++ws.counters.vertex_deaths;
    --ws.live_vertices_in_cell[v.cell];
    log_event(ws, RefinementEvent::Kind::VertexDied, vid, 0, origin);
    ws.queue.push_back({WorkItem::Kind::VertexDied, vid, {}});
    // A clause none of whose literals can be selected is falsified outright.
    if (!ws.constructing && ws.live_vertices_in_cell[v.cell] == 0)
        set_unsat(ws, "clause " + std::to_string(v.cell + 1) + " has no live vertex sequences");
}

void finish_edge_mutation(Workspace& ws, int eid, std::vector<Lit> carry, Origin origin) {
    EdgeSeq& e = ws.edges[eid];
    if (!e.alive) return;
    const bool alive = comply(
        ws, e.bits, [&](Lit gone) { return clear_lit_in_edge(ws, eid, gone, Origin::ForcedCell); },
        carry);
    if (!alive) {
        kill_edge(ws, eid, origin);
        return;
    }
    if (!carry.empty()) ws.queue.push_back({WorkItem::Kind::EdgeChanged, eid, std::move(carry)});
}

void finish_vertex_mutation(Workspace& ws, int vid, std::vector<Lit> carry, Origin origin) {
    VertexSeq& v = ws.vertices[vid];
    if (!v.alive) return;
    const bool alive = comply(
        ws, v.bits,
        [&](Lit gone) { return clear_lit_in_vertex(ws, vid, gone, Origin::ForcedCell); }, carry);
    if (!alive) {
        kill_vertex(ws, vid, origin);
        return;
    }
    if (!carry.empty()) ws.queue.push_back({WorkItem::Kind::VertexChanged, vid, std::move(carry)});
}

void set_unsat(Workspace& ws, std::string reason) {
    if (ws.unsat) return;
    ws.unsat = true;
    ws.unsat_reason = std::move(reason);
    ws.queue.clear();
    if (ws.config.record_events)
        ws.events.push_back({RefinementEvent::Kind::UnsatDetected, -1, 0, Origin::DeathClosure});
}

void saturate(Workspace& ws) {
    while (!ws.queue.empty() && !ws.unsat) {
        WorkItem item;
        if (ws.config.lifo_worklist) {
            item = std::move(ws.queue.back());
            ws.queue.pop_back();
        } else {
            item = std::move(ws.queue.front());
            ws.queue.pop_front();
        }
        switch (item.kind) {
            case WorkItem::Kind::EdgeChanged: on_edge_changed(ws, item); break;
            case WorkItem::Kind::EdgeDied: on_edge_died(ws, item); break;
            case WorkItem::Kind::VertexChanged: on_vertex_changed(ws, item); break;
            case WorkItem::Kind::VertexDied: on_vertex_died(ws, item); break;
        }
    }
    if (ws.unsat) ws.queue.clear();
}

}  // namespace seqsat
