// SPDX-License-Identifier: MIT

#include "seqsat/stats.hpp"

#include <cmath>
#include <sstream>

namespace seqsat::stats {

InstanceStats collect_stats(const Formula& f, const Config& cfg) {
    InstanceStats s;
    s.vars = f.distinct_var_count();
    s.clauses = f.clause_count();
    for (const Clause& c : f.clauses) s.positions += static_cast<int>(c.size());

    DecideResult r = decide(f, cfg);
    s.outcome = r.outcome;
    s.millis = r.millis;
    s.reduced_clauses = r.pre.reduced.clause_count();
    s.initial_live_bits = r.initial_live_bits;
    s.runs = r.runs.size();
    for (const RunStats& run : r.runs) {
        s.comparisons += run.comparisons;
        s.comparisons_skipped += run.comparisons_skipped;
        s.determinations += run.determinations;
        s.intersections += run.intersections;
        s.unions += run.unions;
        s.bit_changes += run.bit_changes;
        s.edge_deaths += run.edge_deaths;
        s.vertex_deaths += run.vertex_deaths;
    }
    return s;
}

std::string csv_header() {
    return "# seqsat-stats schema 1\n"
           "name,vars,clauses,positions,reduced_clauses,outcome,runs,comparisons,"
           "comparisons_skipped,determinations,intersections,unions,bit_changes,"
           "edge_deaths,vertex_deaths,millis";
}

std::string csv_row(const std::string& name, const InstanceStats& s) {
    std::ostringstream out;
    out << name << ',' << s.vars << ',' << s.clauses << ',' << s.positions << ','
        << s.reduced_clauses << ',' << to_string(s.outcome) << ',' << s.runs << ','
        << s.comparisons << ',' << s.comparisons_skipped << ',' << s.determinations << ','
        << s.intersections << ',' << s.unions << ',' << s.bit_changes << ',' << s.edge_deaths
        << ',' << s.vertex_deaths << ',' << s.millis;
    return out.str();
}

double fit_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (x[i] > 0.0 && y[i] > 0.0) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        }
    }
    const std::size_t n = lx.size();
    if (n < 2) return 0.0;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num += (lx[i] - mx) * (ly[i] - my);
        den += (lx[i] - mx) * (lx[i] - mx);
    }
    return den == 0.0 ? 0.0 : num / den;
}

}  // namespace seqsat::stats
