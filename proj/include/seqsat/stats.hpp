// SPDX-License-Identifier: MIT
//
// Work accounting for scaling studies: per-instance counter totals, CSV
// rows, and a log-log slope fit giving the empirical growth exponent of
// work against problem size.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "seqsat/comparing.hpp"
#include "seqsat/types.hpp"

namespace seqsat::stats {

struct InstanceStats {
    int vars = 0;
    int clauses = 0;          // input clause count
    int positions = 0;        // input literal occurrences (the size parameter n)
    int reduced_clauses = 0;  // clauses the engine actually ran on
    Outcome outcome = Outcome::Fixpoint;
    std::uint64_t runs = 0;
    std::uint64_t comparisons = 0;
    std::uint64_t comparisons_skipped = 0;
    std::uint64_t determinations = 0;
    std::uint64_t intersections = 0;
    std::uint64_t unions = 0;
    std::uint64_t bit_changes = 0;
    std::uint64_t edge_deaths = 0;
    std::uint64_t vertex_deaths = 0;
    std::uint64_t initial_live_bits = 0;  // run bound: runs <= initial_live_bits + 1
    double millis = 0.0;

    // The operations whose growth the polynomial claim is judged on.
    std::uint64_t work() const { return intersections + unions; }
};

InstanceStats collect_stats(const Formula& f, const Config& cfg = {});

std::string csv_header();  // preceded by a "# seqsat-stats schema 1" comment line
std::string csv_row(const std::string& name, const InstanceStats& s);

// Least-squares slope of log y against log x over points with x, y > 0; the
// growth exponent when y ~ x^k. Returns 0 with fewer than two usable points.
double fit_log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace seqsat::stats
