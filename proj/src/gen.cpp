// SPDX-License-Identifier: MIT

#include "seqsat/gen.hpp"

#include <algorithm>
#include <stdexcept>

namespace seqsat::gen {

namespace {

std::uint64_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
    return r;
}

// rank-th k-subset of {0..n-1} in lexicographic order.
void unrank_combination(std::uint64_t rank, int n, int k, std::vector<int>& out) {
    out.clear();
    int next = 0;
    for (int slot = 0; slot < k; ++slot) {
        for (int v = next;; ++v) {
            const std::uint64_t with_v = binom(n - 1 - v, k - 1 - slot);
            if (rank < with_v) {
                out.push_back(v);
                next = v + 1;
                break;
            }
            rank -= with_v;
        }
    }
}

bool has_complement(const Clause& cl) {
    for (Lit l : cl)
        if (std::find(cl.begin(), cl.end(), negated(l)) != cl.end()) return true;
    return false;
}

}  // namespace

ExhaustiveSpace::ExhaustiveSpace(int nvars, int max_clauses) : max_clauses_(max_clauses) {
    if (nvars < 1 || max_clauses < 1) throw std::invalid_argument("empty exhaustive space");
    std::vector<Lit> lits;
    for (int v = nvars; v >= 1; --v) lits.push_back(-v);
    for (int v = 1; v <= nvars; ++v) lits.push_back(v);
    const int m = static_cast<int>(lits.size());

    for (int a = 0; a < m; ++a) {
        universe_.push_back({lits[a]});
        for (int b = a + 1; b < m; ++b) {
            Clause two = {lits[a], lits[b]};
            if (!has_complement(two)) universe_.push_back(two);
            for (int c = b + 1; c < m; ++c) {
                Clause three = {lits[a], lits[b], lits[c]};
                if (!has_complement(three)) universe_.push_back(three);
            }
        }
    }
    // Group by size so subset ranks stay aligned with clause counts.
    std::stable_sort(universe_.begin(), universe_.end(),
                     [](const Clause& x, const Clause& y) { return x.size() < y.size(); });

    const int n = static_cast<int>(universe_.size());
    for (int k = 1; k <= max_clauses_ && k <= n; ++k) total_ += binom(n, k);
}

Formula ExhaustiveSpace::at(std::uint64_t index) const {
    const int n = static_cast<int>(universe_.size());
    int k = 1;
    while (k <= max_clauses_) {
        const std::uint64_t block = binom(n, k);
        if (index < block) break;
        index -= block;
        ++k;
    }
    if (k > max_clauses_) throw std::out_of_range("exhaustive index out of range");

    std::vector<int> picks;
    unrank_combination(index, n, k, picks);
    Formula f;
    f.clauses.reserve(picks.size());
    for (int p : picks) f.clauses.push_back(universe_[static_cast<std::size_t>(p)]);
    return f;
}

std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

Formula random_3sat(std::mt19937_64& rng, int nvars, int nclauses) {
    Formula f;
    f.clauses.reserve(static_cast<std::size_t>(nclauses));
    for (int i = 0; i < nclauses; ++i) {
        Clause cl;
        while (cl.size() < 3) {
            const int v = 1 + static_cast<int>(below(rng, static_cast<std::uint64_t>(nvars)));
            bool fresh = true;
            for (Lit l : cl)
                if (var_of(l) == v) {
                    fresh = false;
                    break;
                }
            if (!fresh) continue;
            cl.push_back(below(rng, 2) ? v : -v);
        }
        f.clauses.push_back(std::move(cl));
    }
    return f;
}

Formula random_adversarial(std::mt19937_64& rng, int nvars, int max_clauses, int dirty_percent) {
    Formula f;
    const int n = 1 + static_cast<int>(below(rng, static_cast<std::uint64_t>(max_clauses)));
    auto random_lit = [&]() -> Lit {
        const int v = 1 + static_cast<int>(below(rng, static_cast<std::uint64_t>(nvars)));
        return below(rng, 2) ? v : -v;
    };
    for (int i = 0; i < n; ++i) {
        const bool dirty = static_cast<int>(below(rng, 100)) < dirty_percent;
        if (dirty && !f.clauses.empty() && below(rng, 3) == 0) {
            f.clauses.push_back(f.clauses[below(rng, f.clauses.size())]);  // duplicate clause
            continue;
        }
        Clause cl;
        if (dirty && below(rng, 2) == 0) {
            const Lit l = random_lit();  // complementary pair inside one clause
            cl = {l, negated(l)};
            if (below(rng, 2)) cl.push_back(random_lit());
        } else if (dirty) {
            const Lit l = random_lit();  // repeated literal
            cl = {l, l};
            if (below(rng, 2)) cl.push_back(random_lit());
        } else {
            const int len = 1 + static_cast<int>(below(rng, 3));
            for (int j = 0; j < len; ++j) cl.push_back(random_lit());
        }
        f.clauses.push_back(std::move(cl));
    }
    return f;
}

}  // namespace seqsat::gen
