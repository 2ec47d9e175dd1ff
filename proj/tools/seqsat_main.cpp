// SPDX-License-Identifier: MIT
//
// seqsat: decide / solve 3-SAT instances with the sequence-refinement
// engine, fuzz it against reference deciders, audit its satisfiability
// claim, and measure how its work scales.
//
// Exit codes: 10 satisfiable (or claimed satisfiable), 20 unsatisfiable,
// 30 solution construction stalled, 0 report-only success, 2 soundness
// violation found, 1 usage / input / spec error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "seqsat/comparing.hpp"
#include "seqsat/diff.hpp"
#include "seqsat/dimacs.hpp"
#include "seqsat/gen.hpp"
#include "seqsat/solution.hpp"
#include "seqsat/stats.hpp"

namespace {

using nlohmann::json;
using namespace seqsat;

// Generous empirical headroom for the polynomial claim: total intersection +
// union operations on an instance with n literal occurrences stay under
// kWorkBoundM * n^8. Observed growth is far flatter (roughly n^5); the n^8
// ceiling with M = 1 leaves room for pathological inputs without ever
// excusing super-polynomial behaviour.
constexpr double kWorkBoundM = 1.0;

struct EngineFlags {
    bool single_pass = false;
    bool no_complement_discard = false;
    bool lifo = false;
    bool no_memo = false;

    Config config() const {
        Config c;
        c.single_pass = single_pass;
        c.complement_discard = !no_complement_discard;
        c.lifo_worklist = lifo;
        c.memoize_settled_pairs = !no_memo;
        return c;
    }
};

void add_engine_flags(CLI::App* cmd, EngineFlags& e) {
    cmd->add_flag("--single-pass", e.single_pass,
                  "stop each group comparison after one sweep in each direction");
    cmd->add_flag("--no-complement-discard", e.no_complement_discard, "disable the eliminated-complement-pair discard");
    cmd->add_flag("--lifo", e.lifo, "drain closure work newest-first instead of oldest-first");
    cmd->add_flag("--no-memo", e.no_memo, "re-compare settled group pairs every run");
}

Formula load_or_exit(const std::string& path) {
    ParseResult p = parse_dimacs_file(path);
    if (!p.ok) {
        std::cerr << "error: " << path << ": " << p.error << "\n";
        std::exit(1);
    }
    return std::move(p.formula);
}

void print_v_line(const std::vector<Lit>& chosen) {
    std::cout << "v";
    std::vector<Lit> seen;
    for (Lit l : chosen) {
        if (std::find(seen.begin(), seen.end(), l) == seen.end()) {
            seen.push_back(l);
            std::cout << " " << l;
        }
    }
    std::cout << " 0\n";
}

json run_stats_json(const std::vector<RunStats>& runs) {
    json arr = json::array();
    for (const RunStats& r : runs) {
        arr.push_back({{"run", r.run},
                       {"comparisons", r.comparisons},
                       {"comparisons_skipped", r.comparisons_skipped},
                       {"determinations", r.determinations},
                       {"intersections", r.intersections},
                       {"unions", r.unions},
                       {"complement_eliminations", r.complement_eliminations},
                       {"bit_changes", r.bit_changes},
                       {"edge_deaths", r.edge_deaths},
                       {"vertex_deaths", r.vertex_deaths}});
    }
    return arr;
}

// ---------------------------------------------------------------- decide ---

struct DecideOpts {
    std::string file;
    bool json_out = false;
    bool stats = false;
    bool explain = false;
    EngineFlags engine;
};

int cmd_decide(const DecideOpts& o) {
    Formula f = load_or_exit(o.file);
    Config cfg = o.engine.config();
    cfg.record_events = o.explain;
    DecideResult r = decide(f, cfg);

    bool witness_ok = false;
    if (r.outcome == Outcome::SolvedInPreprocess)
        witness_ok = verify_assignment(f, r.witness_per_clause).valid;

    if (o.json_out) {
        json j;
        j["schema_version"] = 1;
        j["file"] = o.file;
        j["outcome"] = to_string(r.outcome);
        j["claimed_satisfiable"] = r.outcome != Outcome::Unsat;
        j["proven"] = r.outcome != Outcome::Fixpoint;
        j["runs"] = run_stats_json(r.runs);
        j["initial_live_bits"] = r.initial_live_bits;
        j["millis"] = r.millis;
        if (r.outcome == Outcome::Unsat) j["reason"] = r.unsat_reason;
        if (witness_ok) j["witness_per_clause"] = r.witness_per_clause;
        if (o.explain) {
            json ev = json::array();
            for (const auto& step : r.pre.log) ev.push_back(json::parse(step.json_line()));
            if (r.ws)
                for (const auto& e : r.ws->events) ev.push_back(json::parse(e.json_line()));
            j["events"] = std::move(ev);
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "c " << o.file << ": " << f.distinct_var_count() << " vars, "
                  << f.clause_count() << " clauses\n";
        if (o.explain) {
            for (const auto& step : r.pre.log) std::cout << "c " << step.json_line() << "\n";
            if (r.ws)
                for (const auto& e : r.ws->events) std::cout << "c " << e.json_line() << "\n";
        }
        if (o.stats) {
            for (const RunStats& run : r.runs)
                std::cout << "c run " << run.run << ": comparisons=" << run.comparisons
                          << " (skipped " << run.comparisons_skipped << ")"
                          << " intersections=" << run.intersections << " unions=" << run.unions
                          << " bit-changes=" << run.bit_changes << " deaths="
                          << run.edge_deaths + run.vertex_deaths << "\n";
            std::cout << "c initial live bits: " << r.initial_live_bits << "\n";
        }
        switch (r.outcome) {
            case Outcome::SolvedInPreprocess:
                std::cout << "c solved in preprocessing (" << r.pre.log.size()
                          << " reduction steps)\n";
                if (witness_ok) {
                    std::cout << "s SATISFIABLE\n";
                    print_v_line(r.witness_per_clause);
                } else {
                    // should be unreachable; stay honest rather than print a bad witness
                    std::cout << "s SATISFIABLE (claimed)\n";
                }
                break;
            case Outcome::Fixpoint:
                std::cout << "c fixpoint after " << r.runs.size()
                          << " run(s); the claim is not verified -- use `solve` for a checked "
                             "assignment\n";
                std::cout << "s SATISFIABLE (claimed)\n";
                break;
            case Outcome::Unsat:
                std::cout << "c " << r.unsat_reason << "\n";
                std::cout << "s UNSATISFIABLE\n";
                break;
        }
    }
    return r.outcome == Outcome::Unsat ? 20 : 10;
}

// ----------------------------------------------------------------- solve ---

struct SolveOpts {
    std::string file;
    bool json_out = false;
    EngineFlags engine;
};

int cmd_solve(const SolveOpts& o) {
    Formula f = load_or_exit(o.file);
    SolveResult s = construct_solution(f, o.engine.config());

    if (o.json_out) {
        json j;
        j["schema_version"] = 1;
        j["file"] = o.file;
        j["status"] = s.status == SolveResult::Status::Sat     ? "sat"
                      : s.status == SolveResult::Status::Unsat ? "unsat"
                                                               : "stalled";
        j["rounds"] = s.rounds;
        j["detail"] = s.detail;
        j["round_notes"] = s.round_notes;
        if (s.status == SolveResult::Status::Sat) {
            j["per_clause"] = s.per_clause;
            j["chosen"] = s.chosen;
        }
        std::cout << j.dump(2) << "\n";
    } else {
        switch (s.status) {
            case SolveResult::Status::Sat:
                std::cout << "c verified assignment constructed in " << s.rounds << " round(s)\n";
                std::cout << "s SATISFIABLE\n";
                print_v_line(s.chosen);
                break;
            case SolveResult::Status::Unsat:
                std::cout << "c " << s.detail << "\n";
                std::cout << "s UNSATISFIABLE\n";
                break;
            case SolveResult::Status::Stalled:
                std::cout << "c construction stalled: " << s.detail << "\n";
                std::cout << "s UNKNOWN\n";
                break;
        }
    }
    switch (s.status) {
        case SolveResult::Status::Sat: return 10;
        case SolveResult::Status::Unsat: return 20;
        case SolveResult::Status::Stalled: return 30;
    }
    return 1;
}

// ----------------------------------------------------------- fuzz / audit ---

struct CorpusOpts {
    std::string spec_file;
    std::string corpus;
    std::uint64_t instances = 0;
    int max_vars = 0;
    int max_clauses = 0;
    std::uint64_t seed = 0;
    int adversarial = -1;
    int threads = -1;
    std::string findings;
    bool json_out = false;
    EngineFlags engine;
};

void add_corpus_options(CLI::App* cmd, CorpusOpts& o) {
    cmd->add_option("--spec", o.spec_file, "corpus spec JSON file (flags below override it)");
    cmd->add_option("--corpus", o.corpus, "corpus kind: exhaustive | random")
        ->check(CLI::IsMember({"exhaustive", "random"}));
    cmd->add_option("--instances", o.instances, "random corpus size");
    cmd->add_option("--max-vars", o.max_vars, "variable bound");
    cmd->add_option("--max-clauses", o.max_clauses, "clause bound");
    cmd->add_option("--seed", o.seed, "random corpus seed");
    cmd->add_option("--adversarial", o.adversarial,
                    "percent of random instances drawn from the messy generator")
        ->check(CLI::Range(0, 100));
    cmd->add_option("--threads", o.threads, "worker threads (0 = hardware concurrency)");
    cmd->add_option("--findings", o.findings, "directory for DIMACS artifacts and report.json")
        ->envname("SEQSAT_FINDINGS_DIR");
    cmd->add_flag("--json", o.json_out, "emit the full report as JSON");
    add_engine_flags(cmd, o.engine);
}

diff::CorpusSpec build_spec(const CLI::App* cmd, const CorpusOpts& o) {
    diff::CorpusSpec spec;
    if (!o.spec_file.empty()) spec = diff::CorpusSpec::from_json_file(o.spec_file);
    if (cmd->count("--corpus")) spec.corpus = o.corpus;
    if (cmd->count("--instances")) spec.instances = o.instances;
    if (cmd->count("--max-vars")) spec.max_vars = o.max_vars;
    if (cmd->count("--max-clauses")) spec.max_clauses = o.max_clauses;
    if (cmd->count("--seed")) spec.seed = o.seed;
    if (cmd->count("--adversarial")) spec.adversarial_percent = o.adversarial;
    if (cmd->count("--threads")) spec.threads = o.threads;
    if (!o.findings.empty()) spec.findings_dir = o.findings;
    if (cmd->count("--single-pass") || cmd->count("--no-complement-discard") || cmd->count("--lifo") ||
        cmd->count("--no-memo"))
        spec.engine = o.engine.config();
    return spec;
}

int report_corpus(const diff::CorpusSpec& spec, bool json_out) {
    diff::DiffReport rep = diff::differential_run(spec);
    if (json_out) {
        std::cout << rep.to_json() << "\n";
    } else {
        std::cout << "c corpus " << spec.id << " (" << spec.corpus << "): " << rep.instances
                  << " instances in " << rep.millis / 1000.0 << " s\n";
        std::cout << "c oracle: " << rep.oracle_sat << " sat / " << rep.oracle_unsat
                  << " unsat\n";
        std::cout << "c engine: " << rep.solved_in_preprocess << " solved in preprocessing, "
                  << rep.fixpoint_claims << " fixpoint claims, " << rep.engine_unsat
                  << " unsat\n";
        std::cout << "c soundness: unsat-on-sat=" << rep.unsat_on_sat
                  << " solution-bit-violations=" << rep.solution_bit_violations
                  << " invalid-witnesses=" << rep.invalid_witnesses << "\n";
        std::cout << "c claim audit: claimed-sat-on-unsat=" << rep.claimed_sat_on_unsat
                  << " extraction-stalls=" << rep.extraction_stalls << "\n";
        if (rep.live_bits_checked > 0)
            std::cout << "c membership: " << rep.live_bits_checked << " live bits checked, "
                      << rep.live_bits_unsupported << " unsupported (agreement "
                      << 100.0 * rep.membership_agreement() << "%)\n";
        if (!rep.findings.empty()) {
            std::cout << "c findings: " << rep.findings.size();
            if (!spec.findings_dir.empty()) std::cout << " (artifacts in " << spec.findings_dir << ")";
            std::cout << "\n";
            for (const auto& d : rep.findings)
                std::cout << "c   [" << d.kind << "] " << d.detail << "\n";
        }
        std::cout << (rep.sound() ? "s SOUND\n" : "s UNSOUND\n");
    }
    return rep.sound() ? 0 : 2;
}

// ----------------------------------------------------------------- stats ---

struct StatsOpts {
    std::vector<std::string> files;
    std::string dir;
    bool csv = false;
    bool sweep = false;
    std::vector<int> sizes = {30, 60, 120, 240};
    int seeds = 2;
    std::uint64_t seed = 7;
    bool json_out = false;
    EngineFlags engine;
};

std::uint64_t group_pairs(std::uint64_t clauses) {
    const std::uint64_t groups = clauses * (clauses - 1) / 2;
    return groups * (groups - 1) / 2;
}

void print_stats_human(const std::string& name, const stats::InstanceStats& s) {
    std::cout << "c " << name << ": n=" << s.positions << " clauses=" << s.clauses
              << " vars=" << s.vars << " reduced-clauses=" << s.reduced_clauses << "\n";
    std::cout << "c   outcome=" << to_string(s.outcome) << " runs=" << s.runs
              << " (bound: initial live bits + 1 = " << s.initial_live_bits + 1 << ")\n";
    if (s.runs > 0) {
        const std::uint64_t pairs = group_pairs(static_cast<std::uint64_t>(s.reduced_clauses));
        std::cout << "c   comparisons=" << s.comparisons << " (" << s.comparisons / s.runs
                  << " per run; group pairs=" << pairs << ", skipped " << s.comparisons_skipped
                  << ")\n";
    }
    std::cout << "c   intersections=" << s.intersections << " unions=" << s.unions
              << " bit-changes=" << s.bit_changes << " deaths="
              << s.edge_deaths + s.vertex_deaths << "\n";
    if (s.positions > 0) {
        const double n8 = std::pow(static_cast<double>(s.positions), 8.0);
        std::cout << "c   work=" << s.work() << " work/n^8=" << static_cast<double>(s.work()) / n8
                  << " millis=" << s.millis << "\n";
    }
}

int cmd_stats(const StatsOpts& o) {
    const Config cfg = o.engine.config();

    if (o.sweep) {
        std::vector<double> xs, ys;
        json rows = json::array();
        double max_ratio = 0.0;
        if (!o.json_out) {
            std::cout << "c scaling sweep: " << o.seeds << " instance(s) per size, work = "
                      << "intersections + unions, bound M*n^8 with M=" << kWorkBoundM << "\n";
            std::cout << stats::csv_header() << "\n";
        }
        std::mt19937_64 rng(o.seed);
        for (int n : o.sizes) {
            const int c = std::max(2, n / 3);
            const int vars = std::max(4, static_cast<int>(std::lround(c / 4.26)));
            double work_sum = 0.0;
            for (int s = 0; s < o.seeds; ++s) {
                const Formula f = gen::random_3sat(rng, vars, c);
                const stats::InstanceStats st = stats::collect_stats(f, cfg);
                const std::string name = "n" + std::to_string(n) + "_s" + std::to_string(s);
                if (o.json_out) {
                    rows.push_back({{"name", name},
                                    {"positions", st.positions},
                                    {"clauses", st.clauses},
                                    {"vars", st.vars},
                                    {"outcome", to_string(st.outcome)},
                                    {"runs", st.runs},
                                    {"comparisons", st.comparisons},
                                    {"intersections", st.intersections},
                                    {"unions", st.unions},
                                    {"bit_changes", st.bit_changes},
                                    {"work", st.work()},
                                    {"millis", st.millis}});
                } else {
                    std::cout << stats::csv_row(name, st) << "\n";
                }
                work_sum += static_cast<double>(st.work());
                const double ratio = static_cast<double>(st.work()) /
                                     std::pow(static_cast<double>(st.positions), 8.0);
                max_ratio = std::max(max_ratio, ratio);
            }
            if (work_sum > 0.0) {
                xs.push_back(static_cast<double>(n));
                ys.push_back(work_sum / o.seeds);
            }
        }
        const double k = stats::fit_log_slope(xs, ys);
        const bool ok = max_ratio < kWorkBoundM;
        if (o.json_out) {
            json j;
            j["schema_version"] = 1;
            j["rows"] = std::move(rows);
            j["fitted_exponent"] = k;
            j["max_work_over_n8"] = max_ratio;
            j["bound_m"] = kWorkBoundM;
            j["bound_ok"] = ok;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "c fitted exponent: work ~ n^" << k << "\n";
            std::cout << "c bound check: max work/n^8 = " << max_ratio << " (M=" << kWorkBoundM
                      << ") -> " << (ok ? "OK" : "VIOLATION") << "\n";
        }
        return ok ? 0 : 2;
    }

    std::vector<std::string> files = o.files;
    if (!o.dir.empty()) {
        std::vector<std::string> found;
        for (const auto& entry : std::filesystem::directory_iterator(o.dir))
            if (entry.is_regular_file() && entry.path().extension() == ".cnf")
                found.push_back(entry.path().string());
        std::sort(found.begin(), found.end());
        files.insert(files.end(), found.begin(), found.end());
    }
    if (files.empty()) {
        std::cerr << "error: no input files (pass files, --dir, or --sweep)\n";
        return 1;
    }

    const bool csv = o.csv || !o.dir.empty();
    json rows = json::array();
    if (csv && !o.json_out) std::cout << stats::csv_header() << "\n";
    for (const std::string& path : files) {
        const Formula f = load_or_exit(path);
        const stats::InstanceStats s = stats::collect_stats(f, cfg);
        if (o.json_out) {
            json r;
            r["name"] = path;
            r["vars"] = s.vars;
            r["clauses"] = s.clauses;
            r["positions"] = s.positions;
            r["reduced_clauses"] = s.reduced_clauses;
            r["outcome"] = to_string(s.outcome);
            r["runs"] = s.runs;
            r["comparisons"] = s.comparisons;
            r["comparisons_skipped"] = s.comparisons_skipped;
            r["determinations"] = s.determinations;
            r["intersections"] = s.intersections;
            r["unions"] = s.unions;
            r["bit_changes"] = s.bit_changes;
            r["initial_live_bits"] = s.initial_live_bits;
            r["millis"] = s.millis;
            rows.push_back(std::move(r));
        } else if (csv) {
            std::cout << stats::csv_row(path, s) << "\n";
        } else {
            print_stats_human(path, s);
        }
    }
    if (o.json_out) {
        json j;
        j["schema_version"] = 1;
        j["rows"] = std::move(rows);
        std::cout << j.dump(2) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"3-SAT via refinement of occurrence bit-sequences, with built-in "
                 "differential auditing of the procedure's satisfiability claim"};
    app.require_subcommand(1);
    int rc = 0;

    DecideOpts d;
    CLI::App* decide_cmd = app.add_subcommand(
        "decide", "run the refinement procedure; satisfiability at fixpoint is CLAIMED");
    decide_cmd->add_option("file", d.file, "DIMACS CNF input")->required();
    decide_cmd->add_flag("--json", d.json_out, "machine-readable result");
    decide_cmd->add_flag("--stats", d.stats, "per-run counters");
    decide_cmd->add_flag("--explain", d.explain, "log every reduction and refinement event");
    add_engine_flags(decide_cmd, d.engine);
    decide_cmd->callback([&] { rc = cmd_decide(d); });

    SolveOpts s;
    CLI::App* solve_cmd = app.add_subcommand(
        "solve", "construct and verify an assignment (reports a stall honestly)");
    solve_cmd->add_option("file", s.file, "DIMACS CNF input")->required();
    solve_cmd->add_flag("--json", s.json_out, "machine-readable result");
    add_engine_flags(solve_cmd, s.engine);
    solve_cmd->callback([&] { rc = cmd_solve(s); });

    CorpusOpts fz;
    CLI::App* fuzz_cmd = app.add_subcommand(
        "fuzz", "differential-test the engine against reference deciders on a corpus");
    add_corpus_options(fuzz_cmd, fz);
    fuzz_cmd->callback([&] { rc = report_corpus(build_spec(fuzz_cmd, fz), fz.json_out); });

    CorpusOpts au;
    CLI::App* audit_cmd = app.add_subcommand(
        "audit", "exhaustively audit the fixpoint claim and surviving-bit membership on "
                 "small instances");
    add_corpus_options(audit_cmd, au);
    audit_cmd->callback([&] {
        diff::CorpusSpec spec;
        spec.id = "audit";
        spec.corpus = "exhaustive";
        spec.max_vars = 3;
        spec.max_clauses = 4;
        if (!au.spec_file.empty()) spec = diff::CorpusSpec::from_json_file(au.spec_file);
        diff::CorpusSpec overridden = build_spec(audit_cmd, au);
        if (au.spec_file.empty()) {
            // keep audit defaults, then apply explicit flags
            overridden.id = spec.id;
            if (!audit_cmd->count("--corpus")) overridden.corpus = spec.corpus;
            if (!audit_cmd->count("--max-vars")) overridden.max_vars = spec.max_vars;
            if (!audit_cmd->count("--max-clauses")) overridden.max_clauses = spec.max_clauses;
        }
        rc = report_corpus(overridden, au.json_out);
    });

    StatsOpts st;
    CLI::App* stats_cmd =
        app.add_subcommand("stats", "work counters for instances, directories, or a scaling sweep");
    stats_cmd->add_option("files", st.files, "DIMACS CNF inputs");
    stats_cmd->add_option("--dir", st.dir, "measure every .cnf in a directory (CSV output)");
    stats_cmd->add_flag("--csv", st.csv, "CSV rows instead of human-readable blocks");
    stats_cmd->add_flag("--sweep", st.sweep, "random-instance scaling sweep with exponent fit");
    stats_cmd->add_option("--sizes", st.sizes, "sweep sizes in literal occurrences")
        ->delimiter(',');
    stats_cmd->add_option("--seeds", st.seeds, "instances per sweep size")->check(CLI::Range(1, 100));
    stats_cmd->add_option("--seed", st.seed, "sweep base seed");
    stats_cmd->add_flag("--json", st.json_out, "machine-readable result");
    add_engine_flags(stats_cmd, st.engine);
    stats_cmd->callback([&] { rc = cmd_stats(st); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
