// Regular expressions with back-references, compiled to automata over
// Unicode codepoints.  Patterns match the whole input.
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sra/sra.hpp"

namespace sra {

struct RegexNode {
  enum class Kind { Empty, Symbol, Concat, Alt, Star, Plus, Optional, Repeat, Group, Backref };
  Kind kind = Kind::Empty;
  Predicate symbol;                ///< Symbol
  std::vector<RegexNode> children;  ///< Concat/Alt: any; Star..Group: one
  int group = 0;                    ///< Group, Backref
  bool capturing = true;            ///< Group
  int min = 0, max = 0;             ///< Repeat; max < 0 means unbounded
};

struct RegexAst {
  RegexNode root;
  int groups = 0;
};

/// Syntax errors carry the codepoint offset where parsing stopped.
class RegexError : public std::invalid_argument {
 public:
  RegexError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Literals, escapes (\d \D \s \S \w \W \t \n \r \f \v and escaped
/// punctuation), classes with ranges and negation, '.', '|', '*', '+', '?',
/// {n}, {n,}, {n,m}, (...) and (?:...), back-references \1..\9.
RegexAst parse_regex(std::string_view pattern);

struct CompiledPattern {
  Sra sra;
  /// Registers of each referenced group, one per position.
  std::map<int, std::vector<RegId>> group_registers;
};

/// Position automaton.  Each position inside a referenced group stores into
/// that group's register for its offset; a back-reference reads the group's
/// registers in order.  Referenced groups must have a fixed length.
CompiledPattern compile_regex(const RegexAst& ast);
CompiledPattern compile_regex(std::string_view pattern);

struct BenchmarkPattern {
  std::string name;
  std::string pattern;
};

/// The reconstructed benchmark family: IP{2,3,4,6,9}, Name-F, Name-L, Name,
/// XML, Pr-C{2,3,4,6,9}, Pr-CL{2,3,4,6,9}.
std::vector<BenchmarkPattern> benchmark_patterns();
std::string benchmark_pattern(std::string_view name);

}  // namespace sra
