#ifndef WKB_TEXT_HPP
#define WKB_TEXT_HPP

#include <string>

#include "wkb/core.hpp"

// Text frontend for weighted KBs and conjunctive queries.
//
// KB grammar (keywords are reserved, `#` starts a comment):
//   file    := section*
//   section := "tbox:" line* | "abox:" line*
//   tline   := weight ":" concept "SubClassOf" concept
//   aline   := weight ":" Name "(" ind ")" | weight ":" Name "(" ind "," ind ")"
//   weight  := positive integer | "inf"
//   concept := "Top" | "Bot" | Name | "{" ind "}" | "not" concept
//            | "some" Role "." concept | "only" Role "." concept
//            | concept "and" concept | concept "or" concept | "(" concept ")"
//   precedence: not > some/only > and > or
//
// Query grammar:
//   q "(" var-list ")" ":=" atom ("," atom)*
//   atom := Name "(" term ")" | Name "(" term "," term ")"
// Terms declared in the head or prefixed with `?` are variables (the latter
// existential); everything else is an individual.

namespace wkb {

struct ParseError : Error {
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " +
              message),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

struct UndeclaredAnswerVariableError : Error {
  explicit UndeclaredAnswerVariableError(const std::string& name)
      : Error("answer variable does not occur in any atom: " + name), variable(name) {}
  std::string variable;
};

WeightedKB parse_wkb(const std::string& text);
std::string serialize_wkb(const WeightedKB& kb);

Concept parse_concept(const std::string& text);
std::string serialize_concept(const Concept& c);

Query parse_query(const std::string& text);
std::string serialize_query(const Query& query);

}  // namespace wkb

#endif  // WKB_TEXT_HPP
