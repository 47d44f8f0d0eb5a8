#pragma once

#include <string>
#include <string_view>

#include "swq/query/ast.hpp"

namespace swq::query {

// Grammar (keywords case-insensitive, identifiers case-sensitive):
//
//   query         := SELECT item { "," item } FROM identifier [ ";" ]
//   item          := identifier | call
//   call          := identifier "(" [ "*" | identifier { "," identifier } ] ")" OVER over
//   over          := window_name | "(" [ window_name ] frame ")"
//   frame         := integer NEAREST NEIGHBOR ON identifier
//                  | RADIUS number ON identifier
//
// Throws SyntaxError (with a byte offset), NamedWindowUnsupported when a
// named window is referenced, and UnknownAggregate for unrecognized function
// names. MIN, MAX and friends parse; the planner rejects them.
QueryAST parse(std::string_view text);

// Canonical text that parses back to an equal AST.
std::string unparse(const QueryAST& ast);

}  // namespace swq::query
