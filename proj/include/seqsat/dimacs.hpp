// SPDX-License-Identifier: MIT
//
// DIMACS CNF reader/writer. The reader is tolerant: comment lines, blank
// lines, an optional "p cnf" header, and clauses spanning multiple lines are
// all accepted. Malformed tokens are reported with a line number.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "seqsat/types.hpp"

namespace seqsat {

struct ParseResult {
    bool ok = false;
    Formula formula;
    std::string error;  // "line N: ..." when !ok
};

ParseResult parse_dimacs(std::istream& in);
ParseResult parse_dimacs_string(const std::string& text);
ParseResult parse_dimacs_file(const std::string& path);

std::string to_dimacs(const Formula& f);
bool write_dimacs_file(const Formula& f, const std::string& path);

}  // namespace seqsat
