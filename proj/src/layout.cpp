// SPDX-License-Identifier: MIT

#include "seqsat/layout.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace seqsat {

const std::vector<int> CellLayout::kNoPositions{};

std::string to_string(const Formula& f) {
    std::ostringstream os;
    for (const Clause& c : f.clauses) {
        os << '(';
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i) os << ' ';
            os << c[i];
        }
        os << ')';
    }
    return os.str();
}

CellLayout::CellLayout(const Formula& f) {
    if (f.empty()) throw std::invalid_argument("CellLayout: empty formula");
    const int c = f.clause_count();
    offsets_.resize(c);
    sizes_.resize(c);
    cell_refs_.resize(c);
    std::int32_t max_var = 0;
    for (const Clause& cl : f.clauses)
        for (Lit l : cl) max_var = std::max(max_var, l < 0 ? -l : l);
    lit_masks_.assign(2 * static_cast<std::size_t>(max_var), {});

    auto lit_index = [](Lit l) { return 2 * ((l < 0 ? -l : l) - 1) + (l < 0 ? 1 : 0); };

    int pos = 0;
    for (int k = 0; k < c; ++k) {
        const Clause& cl = f.clauses[k];
        if (cl.empty()) throw std::invalid_argument("CellLayout: empty clause");
        offsets_[k] = pos;
        sizes_[k] = static_cast<int>(cl.size());
        for (std::size_t s = 0; s < cl.size(); ++s) {
            if (s > 0 && cl[s] <= cl[s - 1])
                throw std::invalid_argument("CellLayout: clause not normalized");
            pos_lit_.push_back(cl[s]);
            pos_cell_.push_back(k);
            LitMask& m = lit_masks_[static_cast<std::size_t>(lit_index(cl[s]))];
            m.parts.emplace_back(pos >> 6, std::uint64_t{1} << (pos & 63));
            m.positions.push_back(pos);
            ++pos;
        }
    }
    total_bits_ = pos;

    // Coalesce per-literal masks that landed in the same word.
    for (LitMask& m : lit_masks_) {
        std::vector<std::pair<int, std::uint64_t>> merged;
        for (const auto& [w, bits] : m.parts) {
            if (!merged.empty() && merged.back().first == w)
                merged.back().second |= bits;
            else
                merged.emplace_back(w, bits);
        }
        m.parts = std::move(merged);
    }

    for (int k = 0; k < c; ++k) {
        const int lo = offsets_[k];
        const int hi = lo + sizes_[k] - 1;  // inclusive
        CellRef& r = cell_refs_[k];
        r.w0 = lo >> 6;
        if ((hi >> 6) == r.w0) {
            for (int p = lo; p <= hi; ++p) r.m0 |= std::uint64_t{1} << (p & 63);
            r.w1 = r.w0;
            r.m1 = 0;
        } else {
            r.w1 = hi >> 6;
            for (int p = lo; p <= hi; ++p) {
                if ((p >> 6) == r.w0)
                    r.m0 |= std::uint64_t{1} << (p & 63);
                else
                    r.m1 |= std::uint64_t{1} << (p & 63);
            }
        }
    }

    for (std::int32_t v = 1; v <= max_var; ++v) {
        const LitMask& p = lit_masks_[static_cast<std::size_t>(lit_index(v))];
        const LitMask& n = lit_masks_[static_cast<std::size_t>(lit_index(-v))];
        if (p.positions.empty() || n.positions.empty()) continue;
        both_polarity_vars_.push_back(v);
        std::vector<std::pair<int, std::uint64_t>> parts;
        auto add = [&parts](const std::pair<int, std::uint64_t>& part) {
            for (auto& [w, bits] : parts)
                if (w == part.first) {
                    bits |= part.second;
                    return;
                }
            parts.push_back(part);
        };
        for (const auto& part : p.parts) add(part);
        for (const auto& part : n.parts) add(part);
        both_parts_.push_back(std::move(parts));
    }
}

int CellLayout::slot_in_cell(int cell, Lit lit) const {
    for (int s = 0; s < sizes_[cell]; ++s)
        if (pos_lit_[offsets_[cell] + s] == lit) return s;
    return -1;
}

const std::vector<int>& CellLayout::positions_of(Lit lit) const {
    const LitMask* m = mask_of(lit);
    return m ? m->positions : kNoPositions;
}

}  // namespace seqsat
