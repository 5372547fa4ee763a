// ============================================================================
// tsim/parser.hpp — Text format for automata
// ============================================================================
//
// Declarations, an initial condition, an invariant, and transitions:
//
//     event send, receive;
//     clock x;
//     global lock;
//     local waiting;
//     mode idle, busy;                  // one-hot local propositions
//
//     init idle && x = 0;
//     invariant !busy || x <= 5;
//
//     trans {send} when idle && x >= 2 do x := 0, goto busy;
//     trans {} when busy do goto idle;
//
// `mode` declares local propositions with an automatic mutual-exclusion
// invariant; `goto m` sets m and clears the other modes. Comparisons chain
// (`3 < x <= 5`), `=` means the conjunction of <= and >=, and constants are
// integers. `//` and `#` start comments.
//
// ============================================================================

#pragma once

#include <stdexcept>
#include <string>

#include "tsim/model.hpp"

namespace tsim {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t col, const std::string& msg);
    std::size_t line() const { return line_; }
    std::size_t col() const { return col_; }

private:
    std::size_t line_;
    std::size_t col_;
};

/// Parses one automaton. The name is not part of the format; callers pass
/// one (usually the file name). Mode sugar is expanded, so the result is a
/// plain automaton; parse(print_tea(a)) reproduces a.
Tea parse_tea(const std::string& text, const std::string& name = "A");

/// Renders in the surface syntax, desugared and deterministic.
std::string print_tea(const Tea& a);

}  // namespace tsim
