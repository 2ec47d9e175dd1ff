// SPDX-License-Identifier: MIT

#include "seqsat/diff.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "seqsat/comparing.hpp"
#include "seqsat/dimacs.hpp"
#include "seqsat/gen.hpp"
#include "seqsat/oracle.hpp"
#include "seqsat/solution.hpp"

namespace seqsat::diff {

namespace {

using nlohmann::json;

constexpr int kFindingsPerKind = 4;
constexpr int kMinimizeCap = 12;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct Tally {
    DiffReport r;
    std::map<std::string, int> per_kind;

    void finding(const std::string& kind, std::string detail, const Formula& f) {
        if (per_kind[kind]++ >= kFindingsPerKind) return;
        r.findings.push_back({kind, std::move(detail), f, {}, {}});
    }
};

bool engine_claims_sat(const Formula& f, const Config& cfg) {
    return decide(f, cfg).outcome != Outcome::Unsat;
}

// Index of the cell-k occurrence of literal z, or -1.
int position_in_cell(const CellLayout& L, int cell, Lit z) {
    const int off = L.cell_offset(cell);
    const int sz = L.cell_size(cell);
    for (int s = 0; s < sz; ++s)
        if (L.lit_at(off + s) == z) return off + s;
    return -1;
}

// A selection of ws.formula whose pairwise edge is dead/missing or holds a 0
// where the selection has a literal. Returns a description, or "" when clean.
std::string solution_bit_violation(const Workspace& ws, const std::vector<Lit>& sol) {
    const CellLayout& L = ws.layout;
    const int c = L.cell_count();
    for (int i = 0; i < c; ++i) {
        for (int j = i + 1; j < c; ++j) {
            const int eid = ws.find_edge(i, sol[static_cast<std::size_t>(i)], j,
                                         sol[static_cast<std::size_t>(j)]);
            if (eid < 0) return "edge for a solution pair was never constructed";
            const EdgeSeq& e = ws.edges[eid];
            if (!e.alive)
                return "edge (" + std::to_string(sol[static_cast<std::size_t>(i)]) + "@" +
                       std::to_string(i + 1) + "," + std::to_string(sol[static_cast<std::size_t>(j)]) +
                       "@" + std::to_string(j + 1) + ") died despite a solution using it";
            for (int k = 0; k < c; ++k) {
                const int p = position_in_cell(L, k, sol[static_cast<std::size_t>(k)]);
                if (p < 0 || !e.bits.get(p))
                    return "solution literal " + std::to_string(sol[static_cast<std::size_t>(k)]) +
                           "@" + std::to_string(k + 1) + " cleared in a solution edge";
            }
        }
    }
    return {};
}

bool small_instance(const Formula& f) {
    return f.distinct_var_count() <= 4 && f.clause_count() <= 6;
}

// Surviving 1 bits each need a solution selecting both endpoints and the bit.
// Returns checked/unsupported counts plus one sample description.
struct MembershipAudit {
    std::uint64_t checked = 0;
    std::uint64_t unsupported = 0;
    std::string sample;
};

MembershipAudit audit_membership(const Workspace& ws,
                                 const std::vector<std::vector<Lit>>& sols) {
    MembershipAudit a;
    const CellLayout& L = ws.layout;
    for (const EdgeSeq& e : ws.edges) {
        if (!e.alive) continue;
        for (int p = 0; p < L.total_bits(); ++p) {
            if (!e.bits.get(p)) continue;
            ++a.checked;
            const int k = L.cell_of(p);
            const Lit z = L.lit_at(p);
            bool supported = false;
            for (const auto& sol : sols) {
                if (sol[static_cast<std::size_t>(e.cell_a)] == e.la &&
                    sol[static_cast<std::size_t>(e.cell_b)] == e.lb &&
                    sol[static_cast<std::size_t>(k)] == z) {
                    supported = true;
                    break;
                }
            }
            if (!supported) {
                ++a.unsupported;
                if (a.sample.empty())
                    a.sample = "bit " + std::to_string(z) + "@" + std::to_string(k + 1) +
                               " survives in edge (" + std::to_string(e.la) + "@" +
                               std::to_string(e.cell_a + 1) + "," + std::to_string(e.lb) + "@" +
                               std::to_string(e.cell_b + 1) + ") but no solution uses all three";
            }
        }
    }
    return a;
}

void process_instance(const Formula& f, const CorpusSpec& spec, Tally& t) {
    ++t.r.instances;
    std::vector<bool> model;
    const bool sat = oracle::dpll_satisfiable(f, &model);
    sat ? ++t.r.oracle_sat : ++t.r.oracle_unsat;

    DecideResult r = decide(f, spec.engine);
    switch (r.outcome) {
        case Outcome::SolvedInPreprocess: ++t.r.solved_in_preprocess; break;
        case Outcome::Fixpoint: ++t.r.fixpoint_claims; break;
        case Outcome::Unsat: ++t.r.engine_unsat; break;
    }
    const bool claims_sat = r.outcome != Outcome::Unsat;

    if (claims_sat == sat) ++t.r.agreements;
    if (!claims_sat && sat) {
        ++t.r.unsat_on_sat;
        t.finding("unsat_on_sat", r.unsat_reason, f);
    }
    if (claims_sat && !sat) {
        ++t.r.claimed_sat_on_unsat;
        t.finding("claimed_sat_on_unsat",
                  "fixpoint reached but the instance has no solution", f);
    }

    if (r.outcome == Outcome::SolvedInPreprocess) {
        const VerifyResult v = verify_assignment(f, r.witness_per_clause);
        if (!v.valid) {
            ++t.r.invalid_witnesses;
            t.finding("invalid_witness", "preprocessing witness: " + v.reason, f);
        }
    }

    if (r.outcome == Outcome::Fixpoint && r.ws) {
        const Workspace& ws = *r.ws;
        const bool reduced_small = small_instance(ws.formula);

        if (sat && spec.check_solution_bits) {
            std::vector<std::vector<Lit>> sols;
            if (reduced_small) {
                sols = oracle::all_selections(ws.formula);
            } else {
                // Any model of the input also satisfies the reduced formula,
                // so its first true literal per clause is a valid selection.
                std::vector<Lit> one;
                one.reserve(ws.formula.clauses.size());
                for (const Clause& cl : ws.formula.clauses) {
                    Lit pick = 0;
                    for (Lit l : cl) {
                        const auto v = static_cast<std::size_t>(l < 0 ? -l : l);
                        if ((l > 0) == (v < model.size() && model[v])) {
                            pick = l;
                            break;
                        }
                    }
                    if (pick == 0) break;
                    one.push_back(pick);
                }
                if (one.size() == ws.formula.clauses.size()) sols.push_back(std::move(one));
            }
            for (const auto& sol : sols) {
                const std::string why = solution_bit_violation(ws, sol);
                if (!why.empty()) {
                    ++t.r.solution_bit_violations;
                    t.finding("solution_bit_violation", why, f);
                    break;
                }
            }
        }

        if (spec.check_membership && reduced_small) {
            const auto sols = oracle::all_selections(ws.formula);
            const MembershipAudit a = audit_membership(ws, sols);
            t.r.live_bits_checked += a.checked;
            t.r.live_bits_unsupported += a.unsupported;
            if (a.unsupported > 0) t.finding("live_bit_unsupported", a.sample, f);
        }

        // Extraction re-runs the decision loop once per commitment round, so
        // keep it to instances the engine already reduced to a modest size.
        if (sat && spec.extract_witnesses && ws.formula.clause_count() <= 20) {
            const SolveResult s = construct_solution(f, spec.engine);
            if (s.status == SolveResult::Status::Sat) {
                const VerifyResult v = verify_assignment(f, s.per_clause);
                if (!v.valid) {
                    ++t.r.invalid_witnesses;
                    t.finding("invalid_witness", "constructed solution: " + v.reason, f);
                }
            } else {
                ++t.r.extraction_stalls;
                t.finding("extraction_stall", s.detail, f);
            }
        }
    }
}

void merge(DiffReport& into, const Tally& t) {
    const DiffReport& r = t.r;
    into.instances += r.instances;
    into.oracle_sat += r.oracle_sat;
    into.oracle_unsat += r.oracle_unsat;
    into.solved_in_preprocess += r.solved_in_preprocess;
    into.fixpoint_claims += r.fixpoint_claims;
    into.engine_unsat += r.engine_unsat;
    into.agreements += r.agreements;
    into.unsat_on_sat += r.unsat_on_sat;
    into.solution_bit_violations += r.solution_bit_violations;
    into.invalid_witnesses += r.invalid_witnesses;
    into.claimed_sat_on_unsat += r.claimed_sat_on_unsat;
    into.live_bits_checked += r.live_bits_checked;
    into.live_bits_unsupported += r.live_bits_unsupported;
    into.extraction_stalls += r.extraction_stalls;
    for (const Disagreement& d : r.findings) into.findings.push_back(d);
}

std::function<bool(const Formula&)> predicate_for(const std::string& kind, const CorpusSpec& spec) {
    const Config cfg = spec.engine;
    if (kind == "unsat_on_sat")
        return [cfg](const Formula& g) {
            return oracle::dpll_satisfiable(g) && !engine_claims_sat(g, cfg);
        };
    if (kind == "claimed_sat_on_unsat")
        return [cfg](const Formula& g) {
            return !oracle::dpll_satisfiable(g) && engine_claims_sat(g, cfg);
        };
    if (kind == "solution_bit_violation")
        return [cfg](const Formula& g) {
            if (!oracle::dpll_satisfiable(g)) return false;
            DecideResult r = decide(g, cfg);
            if (r.outcome != Outcome::Fixpoint || !r.ws) return false;
            if (!small_instance(r.ws->formula)) return false;
            for (const auto& sol : oracle::all_selections(r.ws->formula))
                if (!solution_bit_violation(*r.ws, sol).empty()) return true;
            return false;
        };
    if (kind == "live_bit_unsupported")
        return [cfg](const Formula& g) {
            DecideResult r = decide(g, cfg);
            if (r.outcome != Outcome::Fixpoint || !r.ws) return false;
            if (!small_instance(r.ws->formula)) return false;
            const auto sols = oracle::all_selections(r.ws->formula);
            return audit_membership(*r.ws, sols).unsupported > 0;
        };
    if (kind == "extraction_stall")
        return [cfg](const Formula& g) {
            return oracle::dpll_satisfiable(g) && engine_claims_sat(g, cfg) &&
                   construct_solution(g, cfg).status != SolveResult::Status::Sat;
        };
    if (kind == "invalid_witness")
        return [cfg](const Formula& g) {
            DecideResult r = decide(g, cfg);
            return r.outcome == Outcome::SolvedInPreprocess &&
                   !verify_assignment(g, r.witness_per_clause).valid;
        };
    return {};
}

json spec_to_json(const CorpusSpec& s) {
    json j;
    j["schema_version"] = 1;
    j["id"] = s.id;
    j["corpus"] = s.corpus;
    j["max_vars"] = s.max_vars;
    j["max_clauses"] = s.max_clauses;
    j["instances"] = s.instances;
    j["seed"] = s.seed;
    j["adversarial_percent"] = s.adversarial_percent;
    j["threads"] = s.threads;
    j["policy"] = {{"complement_discard", s.engine.complement_discard},
                   {"single_pass", s.engine.single_pass},
                   {"lifo_worklist", s.engine.lifo_worklist},
                   {"memoize", s.engine.memoize_settled_pairs}};
    j["check_solution_bits"] = s.check_solution_bits;
    j["check_membership"] = s.check_membership;
    j["extract_witnesses"] = s.extract_witnesses;
    j["findings_dir"] = s.findings_dir;
    return j;
}

}  // namespace

CorpusSpec CorpusSpec::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open corpus spec: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error("corpus spec is not valid JSON: " + std::string(e.what()));
    }
    if (!j.is_object()) throw std::runtime_error("corpus spec must be a JSON object");

    static const std::set<std::string> known = {
        "schema_version", "id",      "corpus",        "max_vars",
        "max_clauses",    "instances", "seed",        "adversarial_percent",
        "threads",        "policy",  "check_solution_bits", "check_membership",
        "extract_witnesses", "findings_dir"};
    for (const auto& [key, _] : j.items())
        if (!known.count(key)) throw std::runtime_error("unknown corpus spec key: " + key);

    CorpusSpec s;
    try {
        s.id = j.value("id", s.id);
        s.corpus = j.value("corpus", s.corpus);
        s.max_vars = j.value("max_vars", s.max_vars);
        s.max_clauses = j.value("max_clauses", s.max_clauses);
        s.instances = j.value("instances", s.instances);
        s.seed = j.value("seed", s.seed);
        s.adversarial_percent = j.value("adversarial_percent", s.adversarial_percent);
        s.threads = j.value("threads", s.threads);
        s.check_solution_bits = j.value("check_solution_bits", s.check_solution_bits);
        s.check_membership = j.value("check_membership", s.check_membership);
        s.extract_witnesses = j.value("extract_witnesses", s.extract_witnesses);
        s.findings_dir = j.value("findings_dir", s.findings_dir);
        if (j.contains("policy")) {
            const json& p = j.at("policy");
            s.engine.complement_discard = p.value("complement_discard", s.engine.complement_discard);
            s.engine.single_pass = p.value("single_pass", s.engine.single_pass);
            s.engine.lifo_worklist = p.value("lifo_worklist", s.engine.lifo_worklist);
            s.engine.memoize_settled_pairs = p.value("memoize", s.engine.memoize_settled_pairs);
        }
    } catch (const json::exception& e) {
        throw std::runtime_error("corpus spec field has wrong type: " + std::string(e.what()));
    }
    if (s.corpus != "exhaustive" && s.corpus != "random")
        throw std::runtime_error("corpus must be \"exhaustive\" or \"random\"");
    if (s.max_vars < 1 || s.max_clauses < 1)
        throw std::runtime_error("corpus bounds must be positive");
    if (s.corpus == "random" && s.instances == 0)
        throw std::runtime_error("random corpus needs instances > 0");
    return s;
}

std::string CorpusSpec::to_json() const { return spec_to_json(*this).dump(2); }

Formula random_corpus_instance(const CorpusSpec& spec, std::uint64_t index) {
    std::mt19937_64 rng(splitmix64(spec.seed * 0x100000001b3ULL + index));
    const bool adversarial =
        static_cast<int>(gen::below(rng, 100)) < spec.adversarial_percent;
    const int vars =
        3 + static_cast<int>(gen::below(
                rng, static_cast<std::uint64_t>(std::max(1, spec.max_vars - 2))));
    if (adversarial) return gen::random_adversarial(rng, vars, spec.max_clauses);

    // Tiered sizes: one verification run costs about C(C(c,2),2) comparisons,
    // so the mix concentrates on small instances and keeps a genuine but thin
    // tail up to the configured cap.
    const std::uint64_t tier = gen::below(rng, 100);
    int hi = spec.max_clauses;
    if (tier < 62)
        hi = std::min(spec.max_clauses, 12);
    else if (tier < 85)
        hi = std::min(spec.max_clauses, 20);
    else if (tier < 97)
        hi = std::min(spec.max_clauses, 28);
    const int clauses = 1 + static_cast<int>(gen::below(rng, static_cast<std::uint64_t>(hi)));
    return gen::random_3sat(rng, vars, clauses);
}

Formula minimize_counterexample(const Formula& f,
                                const std::function<bool(const Formula&)>& still_failing) {
    Formula cur = f;
    if (!still_failing(cur)) return cur;  // not reproducible; leave untouched

    bool shrunk = true;
    while (shrunk) {
        shrunk = false;
        for (std::size_t i = 0; i < cur.clauses.size() && cur.clauses.size() > 1;) {
            Formula cand = cur;
            cand.clauses.erase(cand.clauses.begin() + static_cast<long>(i));
            if (still_failing(cand)) {
                cur = std::move(cand);
                shrunk = true;
            } else {
                ++i;
            }
        }
        for (std::size_t i = 0; i < cur.clauses.size(); ++i) {
            for (std::size_t j = 0; j < cur.clauses[i].size();) {
                Formula cand = cur;
                cand.clauses[i].erase(cand.clauses[i].begin() + static_cast<long>(j));
                if (still_failing(cand)) {
                    cur = std::move(cand);
                    shrunk = true;
                } else {
                    ++j;
                }
            }
        }
    }
    return cur;
}

DiffReport differential_run(const CorpusSpec& spec) {
    const auto t0 = std::chrono::steady_clock::now();

    std::unique_ptr<gen::ExhaustiveSpace> space;
    std::uint64_t total = spec.instances;
    if (spec.corpus == "exhaustive") {
        space = std::make_unique<gen::ExhaustiveSpace>(spec.max_vars, spec.max_clauses);
        total = space->count();
    }

    unsigned nthreads = spec.threads > 0 ? static_cast<unsigned>(spec.threads)
                                         : std::max(1u, std::thread::hardware_concurrency());
    if (static_cast<std::uint64_t>(nthreads) > total)
        nthreads = static_cast<unsigned>(std::max<std::uint64_t>(1, total));

    std::vector<Tally> tallies(nthreads);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&](unsigned id) {
        for (;;) {
            const std::uint64_t i = next.fetch_add(1);
            if (i >= total) break;
            const Formula f =
                space ? space->at(i) : random_corpus_instance(spec, i);
            process_instance(f, spec, tallies[id]);
        }
    };
    if (nthreads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker, i);
        for (auto& th : pool) th.join();
    }

    DiffReport report;
    report.corpus_id = spec.id;
    for (const Tally& t : tallies) merge(report, t);

    // Minimize a bounded number of findings and write artifacts.
    int minimized = 0;
    for (Disagreement& d : report.findings) {
        if (minimized >= kMinimizeCap) break;
        if (d.formula.clause_count() > 24) continue;  // keep the raw artifact re-runnable
        auto pred = predicate_for(d.kind, spec);
        if (pred) {
            d.minimized = minimize_counterexample(d.formula, pred);
            ++minimized;
        }
    }
    if (!spec.findings_dir.empty() && !report.findings.empty()) {
        std::filesystem::create_directories(spec.findings_dir);
        int n = 0;
        for (Disagreement& d : report.findings) {
            const std::string base = spec.findings_dir + "/" + d.kind + "_" + std::to_string(n);
            write_dimacs_file(d.formula, base + ".cnf");
            if (!d.minimized.clauses.empty()) write_dimacs_file(d.minimized, base + "_min.cnf");
            d.artifact = base + ".cnf";
            ++n;
        }
    }

    report.millis =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    if (!spec.findings_dir.empty()) {
        std::filesystem::create_directories(spec.findings_dir);
        std::ofstream out(spec.findings_dir + "/report.json");
        out << report.to_json() << "\n";
    }
    return report;
}

std::string DiffReport::to_json() const {
    json j;
    j["schema_version"] = 1;
    j["corpus_id"] = corpus_id;
    j["instances"] = instances;
    j["oracle_sat"] = oracle_sat;
    j["oracle_unsat"] = oracle_unsat;
    j["solved_in_preprocess"] = solved_in_preprocess;
    j["fixpoint_claims"] = fixpoint_claims;
    j["engine_unsat"] = engine_unsat;
    j["agreements"] = agreements;
    j["unsat_on_sat"] = unsat_on_sat;
    j["solution_bit_violations"] = solution_bit_violations;
    j["invalid_witnesses"] = invalid_witnesses;
    j["claimed_sat_on_unsat"] = claimed_sat_on_unsat;
    j["live_bits_checked"] = live_bits_checked;
    j["live_bits_unsupported"] = live_bits_unsupported;
    j["membership_agreement"] = membership_agreement();
    j["extraction_stalls"] = extraction_stalls;
    j["sound"] = sound();
    j["millis"] = millis;
    j["findings"] = json::array();
    for (const Disagreement& d : findings) {
        json e;
        e["kind"] = d.kind;
        e["detail"] = d.detail;
        e["dimacs"] = to_dimacs(d.formula);
        if (!d.minimized.clauses.empty()) e["minimized_dimacs"] = to_dimacs(d.minimized);
        if (!d.artifact.empty()) e["artifact"] = d.artifact;
        j["findings"].push_back(std::move(e));
    }
    return j.dump(2);
}

}  // namespace seqsat::diff
