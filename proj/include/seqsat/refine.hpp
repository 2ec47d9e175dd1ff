// SPDX-License-Identifier: MIT
//
// Refinement closure engine. Bit clears and sequence deaths queue work items;
// saturate() drains the queue, enforcing the cross-sequence closure rules:
//
//  * Shared-label closure: when an edge with endpoint labels {a, b} loses its
//    last chance of selecting literal c, every {a, b}-labelled edge clears c,
//    every {a, c}-labelled edge clears b, and every {b, c}-labelled edge
//    clears a (the triple {a, b, c} is jointly unselectable).
//  * Edge-death closure: a dead {x, y} edge kills every {x, y}-labelled edge,
//    clears y from every vertex sequence of x and from every edge with
//    endpoint x, and symmetrically for x.
//  * Vertex-change closure: vertex sequences of the same label keep identical
//    cleared-literal sets.
//  * Vertex-death closure: a dead vertex sequence of label x kills all vertex
//    sequences of x, clears x everywhere, and kills every edge with endpoint
//    x. A clause left with no live vertex sequence is a contradiction.
//
// All updates are monotone (bits only clear, alive only drops), so the queue
// always drains.

#pragma once

#include "seqsat/sequences.hpp"

namespace seqsat {

// Clears every occurrence of `lit`; returns the number of bits flipped.
// Counts, versions and (optionally) logs the flips. No compliance pass.
int clear_lit_in_edge(Workspace& ws, int eid, Lit lit, Origin origin);
int clear_lit_in_vertex(Workspace& ws, int vid, Lit lit, Origin origin);

// Marks a sequence dead (idempotent), zeroes its bits, updates liveness
// bookkeeping, queues the death closure, and raises unsat when a clause pair
// runs out of edges / a clause runs out of vertex sequences.
void kill_edge(Workspace& ws, int eid, Origin origin);
void kill_vertex(Workspace& ws, int vid, Origin origin);

// After direct bit changes on a live sequence: restores cell compliance
// (forced-cell propagation; empty cell kills), then queues one change item
// carrying `carry` plus whatever compliance cleared. Pass an empty carry when
// the direct changes already had their label closure applied.
void finish_edge_mutation(Workspace& ws, int eid, std::vector<Lit> carry, Origin origin);
void finish_vertex_mutation(Workspace& ws, int vid, std::vector<Lit> carry, Origin origin);

// Drains the work queue (FIFO by default, LIFO when configured), applying the
// closure rules until nothing is pending or a contradiction was found.
void saturate(Workspace& ws);

void set_unsat(Workspace& ws, std::string reason);

}  // namespace seqsat
