// SPDX-License-Identifier: MIT

#include "seqsat/sequences.hpp"

#include <bit>
#include <sstream>

#include "seqsat/refine.hpp"

namespace seqsat {

std::string RefinementEvent::json_line() const {
    static const char* kinds[] = {"edge_bits_cleared", "edge_died", "vertex_bits_cleared",
                                  "vertex_died", "unsat_detected"};
    static const char* origins[] = {"construction", "forced_cell", "label_closure",
                                    "determination", "death_closure"};
    std::ostringstream os;
    os << "{\"event\":\"" << kinds[static_cast<int>(kind)] << "\",\"seq\":" << seq;
    if (lit != 0) os << ",\"lit\":" << lit;
    os << ",\"origin\":\"" << origins[static_cast<int>(origin)] << "\"}";
    return os.str();
}

std::uint64_t label_key(Lit a, Lit b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
}

int Workspace::group_index(int cell_i, int cell_j) const {
    if (cell_i > cell_j) std::swap(cell_i, cell_j);
    // Groups are ordered (0,1), (0,2), ..., (0,c-1), (1,2), ...
    const int c = layout.cell_count();
    if (cell_i < 0 || cell_j >= c || cell_i == cell_j) return -1;
    return cell_i * c - cell_i * (cell_i + 1) / 2 + (cell_j - cell_i - 1);
}

int Workspace::find_edge(int cell_i, Lit x, int cell_j, Lit y) const {
    if (cell_i > cell_j) {
        std::swap(cell_i, cell_j);
        std::swap(x, y);
    }
    const int g = group_index(cell_i, cell_j);
    if (g < 0) return -1;
    for (int eid : groups[g].edges)
        if (edges[eid].la == x && edges[eid].lb == y) return eid;
    return -1;
}

std::uint64_t Workspace::live_bit_total() const {
    std::uint64_t n = 0;
    for (const EdgeSeq& e : edges)
        if (e.alive) n += static_cast<std::uint64_t>(e.bits.count());
    for (const VertexSeq& v : vertices)
        if (v.alive) n += static_cast<std::uint64_t>(v.bits.count());
    return n;
}

BitVec initial_edge_bits(const CellLayout& L, int cell_a, int slot_a, int cell_b, int slot_b) {
    BitVec bits = BitVec::ones(L.total_bits());
    const int pos_a = L.position_of(cell_a, slot_a);
    const int pos_b = L.position_of(cell_b, slot_b);
    const Lit la = L.lit_at(pos_a);
    const Lit lb = L.lit_at(pos_b);
    L.clear_lit(bits, negated(la));
    L.clear_lit(bits, negated(lb));
    for (int p = L.cell_offset(cell_a); p < L.cell_offset(cell_a) + L.cell_size(cell_a); ++p)
        if (p != pos_a) bits.clear(p);
    bits.set(pos_a);
    for (int p = L.cell_offset(cell_b); p < L.cell_offset(cell_b) + L.cell_size(cell_b); ++p)
        if (p != pos_b) bits.clear(p);
    bits.set(pos_b);
    return bits;
}

BitVec initial_vertex_bits(const CellLayout& L, int cell, int slot) {
    BitVec bits = BitVec::ones(L.total_bits());
    const int pos = L.position_of(cell, slot);
    L.clear_lit(bits, negated(L.lit_at(pos)));
    for (int p = L.cell_offset(cell); p < L.cell_offset(cell) + L.cell_size(cell); ++p)
        if (p != pos) bits.clear(p);
    bits.set(pos);
    return bits;
}

bool propagate_forced_cells(BitVec& bits, const CellLayout& L, std::vector<Lit>* out_lits) {
    // Worklist form of the forced-cell closure. The clear set is monotone and
    // a forced (single-candidate) cell stays forced until it empties, so any
    // processing order reaches the same fixpoint; this one touches each cell
    // once plus once per clear that lands in it.
    const int c = L.cell_count();
    thread_local std::vector<int> counts;
    thread_local std::vector<int> forced;
    counts.resize(static_cast<std::size_t>(c));
    forced.clear();
    for (int k = 0; k < c; ++k) {
        const int live = L.cell_live_count(bits, k);
        if (live == 0) return false;
        counts[static_cast<std::size_t>(k)] = live;
        if (live == 1) forced.push_back(k);
    }
    for (std::size_t h = 0; h < forced.size(); ++h) {
        const int k = forced[h];
        if (counts[static_cast<std::size_t>(k)] != 1) continue;  // died and was reported, or stale
        const CellRef& r = L.cell_ref(k);
        std::uint64_t word = bits.word(r.w0) & r.m0;
        int p;
        if (word != 0) {
            p = (r.w0 << 6) + std::countr_zero(word);
        } else {
            word = bits.word(r.w1) & r.m1;
            p = (r.w1 << 6) + std::countr_zero(word);
        }
        const Lit neg = negated(L.lit_at(p));
        if (L.clear_lit(bits, neg) == 0) continue;
        if (out_lits) out_lits->push_back(neg);
        for (int q : L.positions_of(neg)) {
            const int k2 = L.cell_of(q);
            const int live = L.cell_live_count(bits, k2);
            if (live == 0) return false;
            counts[static_cast<std::size_t>(k2)] = live;
            if (live == 1) forced.push_back(k2);
        }
    }
    return true;
}

bool and_of_compliant(BitVec& dst, const BitVec& a, const BitVec& b, const CellLayout& L) {
    thread_local std::vector<std::uint64_t> stamp;
    thread_local std::uint64_t gen = 0;
    thread_local std::vector<int> dirty;
    thread_local std::vector<int> forced;
    const int c = L.cell_count();
    if (static_cast<int>(stamp.size()) < c) stamp.resize(static_cast<std::size_t>(c), 0);
    ++gen;
    dirty.clear();
    forced.clear();

    for (int w = 0; w < dst.words(); ++w) {
        const std::uint64_t aw = a.word(w);
        const std::uint64_t zw = aw & b.word(w);
        dst.word(w) = zw;
        std::uint64_t gone = aw ^ zw;  // bits live in a that the AND cleared
        while (gone) {
            const int p = (w << 6) + std::countr_zero(gone);
            gone &= gone - 1;
            const int k = L.cell_of(p);
            if (stamp[static_cast<std::size_t>(k)] != gen) {
                stamp[static_cast<std::size_t>(k)] = gen;
                dirty.push_back(k);
            }
        }
    }
    for (int k : dirty) {
        const int live = L.cell_live_count(dst, k);
        if (live == 0) return false;
        if (live == 1) forced.push_back(k);
    }
    for (std::size_t h = 0; h < forced.size(); ++h) {
        const int k = forced[h];
        const CellRef& r = L.cell_ref(k);
        std::uint64_t word = dst.word(r.w0) & r.m0;
        int p;
        if (word != 0) {
            p = (r.w0 << 6) + std::countr_zero(word);
        } else {
            word = dst.word(r.w1) & r.m1;
            p = (r.w1 << 6) + std::countr_zero(word);
        }
        const Lit neg = negated(L.lit_at(p));
        if (L.clear_lit(dst, neg) == 0) continue;
        for (int q : L.positions_of(neg)) {
            const int k2 = L.cell_of(q);
            const int live = L.cell_live_count(dst, k2);
            if (live == 0) return false;
            if (live == 1) forced.push_back(k2);
        }
    }
    return true;
}

bool eliminated_complement_pair(const BitVec& bits, const CellLayout& L, const int* cells,
                                int ncells) {
    auto outside = [&](Lit l) {
        for (int p : L.positions_of(l)) {
            bool inside = false;
            for (int i = 0; i < ncells; ++i)
                if (L.cell_of(p) == cells[i]) {
                    inside = true;
                    break;
                }
            if (!inside) return true;
        }
        return false;
    };
    const auto& vars = L.both_polarity_vars();
    for (int i = 0; i < static_cast<int>(vars.size()); ++i) {
        if (!L.var_all_dead(bits, i)) continue;  // cheap reject: some occurrence is live
        const std::int32_t v = vars[i];
        if (outside(v) && outside(-v)) return true;
    }
    return false;
}

std::string dump_sequence(const BitVec& bits, const CellLayout& L) {
    std::ostringstream os;
    for (int k = 0; k < L.cell_count(); ++k) {
        if (k) os << " | ";
        for (int s = 0; s < L.cell_size(k); ++s) {
            if (s) os << ' ';
            const int p = L.position_of(k, s);
            os << (bits.get(p) ? '1' : '0') << '_' << L.lit_at(p);
        }
    }
    return os.str();
}

std::unique_ptr<Workspace> build_workspace(const Formula& f, const Config& cfg) {
    auto wsp = std::make_unique<Workspace>();
    Workspace& ws = *wsp;
    ws.formula = f;
    ws.layout = CellLayout(f);
    ws.config = cfg;
    const CellLayout& L = ws.layout;
    const int c = L.cell_count();

    ws.live_vertices_in_cell.assign(c, 0);
    ws.scratch_z = BitVec(L.total_bits());
    ws.scratch_u = BitVec(L.total_bits());
    ws.constructing = true;

    // Vertex sequences, one per occurrence, in position order.
    for (int k = 0; k < c; ++k) {
        for (int s = 0; s < L.cell_size(k); ++s) {
            VertexSeq v;
            v.cell = k;
            v.pos = L.position_of(k, s);
            v.lit = L.lit_at(v.pos);
            v.bits = initial_vertex_bits(L, k, s);
            v.alive = true;
            const int vid = static_cast<int>(ws.vertices.size());
            ws.vertices.push_back(std::move(v));
            ws.vertices_by_label[ws.vertices[vid].lit].push_back(vid);
            ws.live_vertices_in_cell[k]++;
            finish_vertex_mutation(ws, vid, {}, Origin::Construction);
        }
        if (ws.live_vertices_in_cell[k] == 0 && !ws.unsat)
            set_unsat(ws, "clause " + std::to_string(k + 1) + " has no live vertex sequences");
        if (ws.unsat) break;
    }

    // Edge groups for every clause pair, in (i, j) order.
    for (int i = 0; i < c && !ws.unsat; ++i) {
        for (int j = i + 1; j < c && !ws.unsat; ++j) {
            EdgeGroup g;
            g.cell_i = i;
            g.cell_j = j;
            const int gid = static_cast<int>(ws.groups.size());
            ws.groups.push_back(g);
            ws.group_version.push_back(0);
            for (int sa = 0; sa < L.cell_size(i); ++sa) {
                for (int sb = 0; sb < L.cell_size(j); ++sb) {
                    const Lit x = L.lit_at(L.position_of(i, sa));
                    const Lit y = L.lit_at(L.position_of(j, sb));
                    if (x == negated(y)) continue;  // complementary endpoints never pair
                    EdgeSeq e;
                    e.cell_a = i;
                    e.cell_b = j;
                    e.pos_a = L.position_of(i, sa);
                    e.pos_b = L.position_of(j, sb);
                    e.la = x;
                    e.lb = y;
                    e.group = gid;
                    e.bits = initial_edge_bits(L, i, sa, j, sb);
                    e.alive = true;
                    const int eid = static_cast<int>(ws.edges.size());
                    ws.edges.push_back(std::move(e));
                    ws.groups[gid].edges.push_back(eid);
                    ws.groups[gid].live++;
                    ws.edges_by_labels[label_key(x, y)].push_back(eid);
                    ws.edges_by_endpoint[x].push_back(eid);
                    if (y != x) ws.edges_by_endpoint[y].push_back(eid);
                    finish_edge_mutation(ws, eid, {}, Origin::Construction);
                    if (ws.unsat) break;
                }
                if (ws.unsat) break;
            }
            if (!ws.unsat && ws.groups[gid].live == 0)
                set_unsat(ws, "no live edges between clauses " + std::to_string(i + 1) + " and " +
                                  std::to_string(j + 1));
        }
    }
    ws.constructing = false;
    return wsp;
}

}  // namespace seqsat
