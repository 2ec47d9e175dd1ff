// SPDX-License-Identifier: MIT
//
// Position layout for a normalized formula. Every literal occurrence gets one
// global bit position; positions are grouped into per-clause cells. The layout
// precomputes per-cell word masks (for fast emptiness / forced-cell checks)
// and per-literal sparse masks (for fast "clear every occurrence" updates).

#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "seqsat/bitvec.hpp"
#include "seqsat/types.hpp"

namespace seqsat {

// Word-level view of all occurrences of one literal.
struct LitMask {
    std::vector<std::pair<int, std::uint64_t>> parts;  // (word index, bits)
    std::vector<int> positions;                        // global positions, ascending
};

// Word-level view of one cell (a cell never spans more than two words).
struct CellRef {
    int w0 = 0;
    std::uint64_t m0 = 0;
    int w1 = 0;  // equals w0 with m1 == 0 unless the cell straddles a word boundary
    std::uint64_t m1 = 0;
};

class CellLayout {
  public:
    CellLayout() = default;

    // The formula must be normalized: nonempty, every clause nonempty with
    // ascending, duplicate-free literals.
    explicit CellLayout(const Formula& f);

    int cell_count() const { return static_cast<int>(offsets_.size()); }
    int total_bits() const { return total_bits_; }

    int cell_offset(int cell) const { return offsets_[cell]; }
    int cell_size(int cell) const { return sizes_[cell]; }
    int position_of(int cell, int slot) const { return offsets_[cell] + slot; }

    Lit lit_at(int pos) const { return pos_lit_[pos]; }
    int cell_of(int pos) const { return pos_cell_[pos]; }

    // Slot of `lit` inside `cell`, or -1 when the clause does not contain it.
    int slot_in_cell(int cell, Lit lit) const;

    bool contains(Lit lit) const { return mask_of(lit) != nullptr; }

    // Occurrence positions of `lit` (empty when the literal is absent).
    const std::vector<int>& positions_of(Lit lit) const;

    // Sparse word mask of `lit` (null when the literal is absent).
    const LitMask* mask_of(Lit lit) const {
        const int i = lit_index(lit);
        return i >= 0 && i < static_cast<int>(lit_masks_.size()) && !lit_masks_[i].positions.empty()
                   ? &lit_masks_[i]
                   : nullptr;
    }

    const CellRef& cell_ref(int cell) const { return cell_refs_[cell]; }

    // Variables occurring in both polarities, ascending.
    const std::vector<std::int32_t>& both_polarity_vars() const { return both_polarity_vars_; }

    // All occurrences of both polarities of both_polarity_vars()[idx] dead?
    bool var_all_dead(const BitVec& bits, int idx) const {
        for (const auto& [w, m] : both_parts_[idx])
            if (bits.word(w) & m) return false;
        return true;
    }

    // Number of set bits of `bits` inside `cell`.
    int cell_live_count(const BitVec& bits, int cell) const {
        const CellRef& r = cell_refs_[cell];
        return std::popcount(bits.word(r.w0) & r.m0) + std::popcount(bits.word(r.w1) & r.m1);
    }

    bool cell_empty(const BitVec& bits, int cell) const {
        const CellRef& r = cell_refs_[cell];
        return ((bits.word(r.w0) & r.m0) | (bits.word(r.w1) & r.m1)) == 0;
    }

    // True if any occurrence of `lit` is set in `bits`.
    bool any_of_lit(const BitVec& bits, Lit lit) const {
        const LitMask* m = mask_of(lit);
        if (!m) return false;
        for (const auto& [w, mask] : m->parts)
            if (bits.word(w) & mask) return true;
        return false;
    }

    // Clears every occurrence of `lit` in `bits`; returns the number of bits
    // that were actually set.
    int clear_lit(BitVec& bits, Lit lit) const {
        const LitMask* m = mask_of(lit);
        if (!m) return 0;
        int flips = 0;
        for (const auto& [w, mask] : m->parts) {
            const std::uint64_t hit = bits.word(w) & mask;
            if (hit) {
                flips += std::popcount(hit);
                bits.word(w) &= ~mask;
            }
        }
        return flips;
    }

  private:
    // Dense index of a literal: +v and -v interleave, so lookups on the hot
    // refinement path are a bounds check and an array access.
    static int lit_index(Lit lit) {
        const int v = lit < 0 ? -lit : lit;
        return v == 0 ? -1 : 2 * (v - 1) + (lit < 0 ? 1 : 0);
    }

    std::vector<int> offsets_;
    std::vector<int> sizes_;
    std::vector<Lit> pos_lit_;
    std::vector<int> pos_cell_;
    std::vector<CellRef> cell_refs_;
    std::vector<LitMask> lit_masks_;  // indexed by lit_index(); absent = empty
    std::vector<std::int32_t> both_polarity_vars_;
    // Merged occurrence masks of +v and -v, aligned with both_polarity_vars_.
    std::vector<std::vector<std::pair<int, std::uint64_t>>> both_parts_;
    int total_bits_ = 0;

    static const std::vector<int> kNoPositions;
};

}  // namespace seqsat
