#pragma once

#include <stdexcept>
#include <string>

#include "lyhall/term.hpp"

namespace lyhall {

struct ParseError : std::runtime_error {
  ParseError(size_t offset, const std::string& what)
      : std::runtime_error("parse error at byte " + std::to_string(offset) + ": " + what),
        offset(offset) {}
  size_t offset;
};

// Grammar:
//   term := atom ("*" atom)*                  -- chains associate left
//   atom := ident | "(" term ")" | "[" term "," term "," term "]"
//   ident := [A-Za-z_][A-Za-z0-9_]*
// Whitespace between tokens is ignored. Identifiers must name generators of
// the bank; anything else throws ParseError with the byte offset.
TermId parse_term(TermBank& bank, const std::string& input);

// Canonical form: stars fully parenthesized "(u*v)", brackets "[y,z,w]".
// parse_term(print_term(t)) == t.
std::string print_term(const TermBank& bank, TermId t);

}  // namespace lyhall
