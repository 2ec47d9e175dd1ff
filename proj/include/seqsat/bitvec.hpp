// SPDX-License-Identifier: MIT
//
// A small fixed-width bit vector backed by 64-bit words. Sequences over
// literal positions are short (a few hundred bits), so everything is kept
// inline and allocation-free once constructed.

#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace seqsat {

class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(int nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

    static BitVec zeros(int nbits) { return BitVec(nbits); }

    static BitVec ones(int nbits) {
        BitVec v(nbits);
        for (auto& w : v.w_) w = ~std::uint64_t{0};
        v.trim();
        return v;
    }

    int size() const { return nbits_; }
    int words() const { return static_cast<int>(w_.size()); }
    std::uint64_t word(int i) const { return w_[i]; }
    std::uint64_t& word(int i) { return w_[i]; }

    bool get(int p) const { return (w_[p >> 6] >> (p & 63)) & 1; }
    void set(int p) { w_[p >> 6] |= std::uint64_t{1} << (p & 63); }
    void clear(int p) { w_[p >> 6] &= ~(std::uint64_t{1} << (p & 63)); }

    // Clears bit p and reports whether it was set.
    bool test_and_clear(int p) {
        const std::uint64_t m = std::uint64_t{1} << (p & 63);
        std::uint64_t& w = w_[p >> 6];
        const bool was = (w & m) != 0;
        w &= ~m;
        return was;
    }

    bool none() const {
        for (std::uint64_t w : w_)
            if (w) return false;
        return true;
    }

    int count() const {
        int n = 0;
        for (std::uint64_t w : w_) n += std::popcount(w);
        return n;
    }

    bool operator==(const BitVec& o) const { return nbits_ == o.nbits_ && w_ == o.w_; }
    bool operator!=(const BitVec& o) const { return !(*this == o); }

    void clear_all() {
        for (auto& w : w_) w = 0;
    }

    // dst = a & b (all three must have equal width).
    static void and_of(BitVec& dst, const BitVec& a, const BitVec& b) {
        for (std::size_t i = 0; i < dst.w_.size(); ++i) dst.w_[i] = a.w_[i] & b.w_[i];
    }

    void or_with(const BitVec& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    }

    // True if every set bit of *this is also set in o.
    bool subset_of(const BitVec& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

  private:
    void trim() {
        if (nbits_ % 64 != 0 && !w_.empty())
            w_.back() &= (~std::uint64_t{0}) >> (64 - nbits_ % 64);
    }

    int nbits_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace seqsat
