// SPDX-License-Identifier: MIT
//
// Sequence workspace. Every clause pair (i, j) owns a group of edge
// sequences, one per compatible occurrence pair (x in clause i, y in clause
// j, x != -y); every literal occurrence owns a vertex sequence. A sequence is
// a bit vector over all literal positions: bit (k, z) of an edge sequence
// claims that choosing z from clause k is still compatible with choosing both
// endpoints; endpoint cells carry exactly their own occurrence bit.
//
// Sequences only ever lose bits. Two intra-sequence compliance rules apply
// throughout: a cell whose bits are all gone kills the sequence (some clause
// would have no choice left), and a cell with exactly one live bit forces
// that literal, so every occurrence of its negation is cleared.

#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "seqsat/bitvec.hpp"
#include "seqsat/layout.hpp"
#include "seqsat/types.hpp"

namespace seqsat {

struct Config {
    bool complement_discard = true;     // eliminated-complement-pair check on intersections
    bool single_pass = false;    // exactly one determination sweep per direction
    bool lifo_worklist = false;  // process closure work LIFO instead of FIFO
    bool record_events = false;  // keep a structured refinement log
    bool memoize_settled_pairs = true;  // skip re-comparing provably settled group pairs
};

// Where a refinement came from (for the event log).
enum class Origin : std::uint8_t {
    Construction,   // initial build of a sequence
    ForcedCell,     // single-candidate cell forced a literal; negation cleared
    LabelClosure,   // shared-label propagation between sequences
    Determination,  // cross-refinement against another group's edges
    DeathClosure,   // propagation of an edge/vertex death
};

struct RefinementEvent {
    enum class Kind : std::uint8_t {
        EdgeBitsCleared,
        EdgeDied,
        VertexBitsCleared,
        VertexDied,
        UnsatDetected,
    };
    Kind kind;
    int seq = -1;  // edge or vertex id
    Lit lit = 0;   // literal cleared (bit-clear events)
    Origin origin = Origin::Construction;

    std::string json_line() const;
};

struct EdgeSeq {
    BitVec bits;
    Lit la = 0, lb = 0;           // endpoint labels
    int cell_a = -1, cell_b = -1;  // cell_a < cell_b
    int pos_a = -1, pos_b = -1;    // global endpoint positions
    int group = -1;
    bool alive = true;
};

struct VertexSeq {
    BitVec bits;
    Lit lit = 0;
    int cell = -1;
    int pos = -1;
    bool alive = true;
};

struct EdgeGroup {
    int cell_i = -1, cell_j = -1;
    std::vector<int> edges;
    int live = 0;
};

struct Counters {
    std::uint64_t comparisons = 0;          // group pairs compared (skipped ones included)
    std::uint64_t comparisons_skipped = 0;  // settled pairs answered from the memo
    std::uint64_t determinations = 0;
    std::uint64_t intersections = 0;
    std::uint64_t unions = 0;  // surviving intersections merged into a determination union
    std::uint64_t complement_eliminations = 0;
    std::uint64_t bit_changes = 0;  // individual 1 -> 0 flips on live sequences
    std::uint64_t edge_deaths = 0;
    std::uint64_t vertex_deaths = 0;
    std::uint64_t runs = 0;
};

// Deferred closure work (shared-label and death propagation).
struct WorkItem {
    enum class Kind : std::uint8_t { EdgeChanged, EdgeDied, VertexChanged, VertexDied };
    Kind kind;
    int seq = -1;
    std::vector<Lit> lits;  // literals that lost bits (change items only)
};

struct Workspace {
    Formula formula;  // the normalized, reduced formula the workspace was built from
    CellLayout layout;
    Config config;

    std::vector<VertexSeq> vertices;
    std::vector<EdgeSeq> edges;
    std::vector<EdgeGroup> groups;  // ordered by (cell_i, cell_j)

    std::unordered_map<std::uint64_t, std::vector<int>> edges_by_labels;
    std::unordered_map<Lit, std::vector<int>> edges_by_endpoint;
    std::unordered_map<Lit, std::vector<int>> vertices_by_label;
    std::vector<int> live_vertices_in_cell;
    std::vector<std::uint64_t> group_version;  // bumped on any member refinement

    // Comparison memo, indexed by group_pair_rank: a pair of groups whose
    // last comparison produced no refinement is recorded with both version
    // stamps; while neither group changes, re-comparing it provably refines
    // nothing. Sized lazily on first use; kNeverSettled marks absent entries.
    static constexpr std::uint64_t kNeverSettled = ~std::uint64_t{0};
    std::vector<std::pair<std::uint64_t, std::uint64_t>> settled_pairs;

    std::set<Lit> eliminated_labels;             // vertex-death closure already ran
    std::set<std::uint64_t> dead_label_pairs;    // edge-death closure already ran
    std::deque<WorkItem> queue;
    std::vector<RefinementEvent> events;
    Counters counters;
    bool unsat = false;
    bool constructing = false;  // liveness checks deferred until a group/clause is fully built
    std::string unsat_reason;

    // Scratch buffers for determinations.
    BitVec scratch_z, scratch_u;

    std::uint64_t refinements() const {
        return counters.bit_changes + counters.edge_deaths + counters.vertex_deaths;
    }
    int group_index(int cell_i, int cell_j) const;          // -1 when absent
    int find_edge(int cell_i, Lit x, int cell_j, Lit y) const;  // -1 when absent
    std::uint64_t live_bit_total() const;
    // Rank of the unordered group pair {p, q}, p < q, among all such pairs.
    std::size_t group_pair_rank(int p, int q) const {
        const std::size_t n = groups.size();
        return static_cast<std::size_t>(p) * (2 * n - static_cast<std::size_t>(p) - 1) / 2 +
               static_cast<std::size_t>(q - p - 1);
    }
};

// Unordered label-pair key.
std::uint64_t label_key(Lit a, Lit b);

// Raw sequence bits before any compliance pass.
BitVec initial_edge_bits(const CellLayout& L, int cell_a, int slot_a, int cell_b, int slot_b);
BitVec initial_vertex_bits(const CellLayout& L, int cell, int slot);

// Builds all vertex then all edge sequences, applying the two compliance
// rules to each; construction-time refinements are queued (not yet
// propagated). May set ws.unsat (a clause with no live vertex sequences, or a
// clause pair with no live edges). Call saturate() afterwards to propagate.
std::unique_ptr<Workspace> build_workspace(const Formula& f, const Config& cfg);

// Forced-cell propagation on raw bits (used for transient intersections):
// clears negations of forced cells until stable; false when a cell empties.
// Cleared literals are appended to out_lits when non-null.
bool propagate_forced_cells(BitVec& bits, const CellLayout& L, std::vector<Lit>* out_lits);

// dst = a & b with the forced-cell closure applied, equivalent to and_of
// followed by propagate_forced_cells but touching only cells the AND
// changed. `a` must be cell-compliant (live sequences always are): then an
// unchanged cell cannot be empty, and an unchanged forced cell's
// negation-clears are already reflected in `a`, hence in dst. Returns false
// (dst unspecified) when a cell empties.
bool and_of_compliant(BitVec& dst, const BitVec& a, const BitVec& b, const CellLayout& L);

// True when some variable occurs in both polarities, every occurrence of both
// polarities is cleared in `bits`, and both polarities also occur outside the
// given endpoint cells. Such an intersection cannot document any selection
// through its endpoints: a selection avoiding both polarities of a variable
// that is still choosable elsewhere could always be rerouted through either.
bool eliminated_complement_pair(const BitVec& bits, const CellLayout& L, const int* cells,
                                int ncells);

// Display form: cells separated by '|', each bit annotated with its literal,
// e.g. "1_2 0_-1 | 0_3 1_4".
std::string dump_sequence(const BitVec& bits, const CellLayout& L);

}  // namespace seqsat
