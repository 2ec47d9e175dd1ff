// SPDX-License-Identifier: MIT

#include "seqsat/dimacs.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace seqsat {

ParseResult parse_dimacs(std::istream& in) {
    ParseResult res;
    Clause cur;
    std::string line;
    int lineno = 0;
    bool saw_header = false;
    long declared_clauses = -1;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;  // blank line
        if (tok == "c" || tok[0] == 'c' || tok[0] == '%') continue;
        if (tok == "p") {
            std::string fmt;
            long nv = 0, nc = 0;
            if (!(ls >> fmt >> nv >> nc) || fmt != "cnf") {
                res.error = "line " + std::to_string(lineno) + ": malformed problem line";
                return res;
            }
            if (saw_header) {
                res.error = "line " + std::to_string(lineno) + ": duplicate problem line";
                return res;
            }
            saw_header = true;
            declared_clauses = nc;
            continue;
        }
        // Literal tokens; the first token was already consumed.
        do {
            errno = 0;
            char* end = nullptr;
            const long v = std::strtol(tok.c_str(), &end, 10);
            if (errno != 0 || end == tok.c_str() || *end != '\0' || v < INT32_MIN || v > INT32_MAX) {
                res.error = "line " + std::to_string(lineno) + ": bad token '" + tok + "'";
                return res;
            }
            if (v == 0) {
                if (cur.empty()) {
                    res.error = "line " + std::to_string(lineno) + ": empty clause";
                    return res;
                }
                res.formula.clauses.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(static_cast<Lit>(v));
            }
        } while (ls >> tok);
    }
    if (!cur.empty()) res.formula.clauses.push_back(cur);  // tolerate a missing trailing 0
    if (declared_clauses >= 0 &&
        declared_clauses != static_cast<long>(res.formula.clauses.size())) {
        // Header mismatches are common in the wild; accept what was read.
    }
    res.ok = true;
    return res;
}

ParseResult parse_dimacs_string(const std::string& text) {
    std::istringstream in(text);
    return parse_dimacs(in);
}

ParseResult parse_dimacs_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        ParseResult res;
        res.error = "cannot open '" + path + "'";
        return res;
    }
    return parse_dimacs(in);
}

std::string to_dimacs(const Formula& f) {
    std::ostringstream os;
    os << "p cnf " << f.max_var() << ' ' << f.clause_count() << '\n';
    for (const Clause& c : f.clauses) {
        for (Lit l : c) os << l << ' ';
        os << "0\n";
    }
    return os.str();
}

bool write_dimacs_file(const Formula& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) return false;
    out << to_dimacs(f);
    return static_cast<bool>(out);
}

}  // namespace seqsat
