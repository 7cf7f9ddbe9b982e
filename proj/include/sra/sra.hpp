// Symbolic register automata: data model and configuration semantics.
#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sra/algebra.hpp"

namespace sra {

using StateId = std::uint32_t;
using RegId = std::uint32_t;
/// Register sets are bitsets; an automaton has at most 64 registers.
using RegSet = std::uint64_t;
inline constexpr std::size_t kMaxRegisters = 64;

inline constexpr RegSet reg_bit(RegId r) { return RegSet{1} << r; }
inline constexpr RegSet all_regs(std::size_t n) {
  return n >= 64 ? ~RegSet{0} : (RegSet{1} << n) - 1;
}
inline bool has_reg(RegSet s, RegId r) { return (s >> r) & 1; }
inline int reg_count(RegSet s) { return std::popcount(s); }
/// Register ids of `s`, ascending.
std::vector<RegId> regs_of(RegSet s);

/// Guard plus register constraints: E must equal the input, I must differ
/// from it, U receives it.
struct Label {
  Predicate guard;
  RegSet E = 0;
  RegSet I = 0;
  RegSet U = 0;
};

struct Transition {
  StateId from = 0;
  Label label;
  StateId to = 0;
};

/// Register contents; kEmptyRegister marks an empty register.
using Valuation = std::vector<Value>;
using Word = std::vector<Value>;

struct Sra {
  AlgebraKind algebra = AlgebraKind::Unicode;
  std::vector<std::string> registers;
  std::vector<std::string> states;
  StateId initial = 0;
  Valuation initial_valuation;
  std::vector<bool> finals;
  std::vector<Transition> transitions;

  std::size_t num_states() const { return states.size(); }
  std::size_t num_registers() const { return registers.size(); }
  RegSet all_registers() const { return all_regs(registers.size()); }
  bool is_final(StateId q) const { return finals[q]; }

  StateId add_state(std::string name, bool final = false);
  RegId add_register(std::string name, Value initial_value = kEmptyRegister);
  void add_transition(StateId from, Label label, StateId to) {
    transitions.push_back({from, std::move(label), to});
  }
  /// Outgoing transition indices per state.
  std::vector<std::vector<std::uint32_t>> out_index() const;
};

Sra make_sra(AlgebraKind algebra, std::size_t num_states, std::size_t num_registers);

struct Configuration {
  StateId state = 0;
  Valuation valuation;
  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

/// Violations of the well-formedness rules, one message each.
std::vector<std::string> validate(const Sra& s);

/// True iff the transition can fire on `a` from valuation `v`.
bool fires(const Label& l, const Valuation& v, Value a);
/// All successor configurations of `c` on `a`.
std::vector<Configuration> step(const Sra& s, const Configuration& c, Value a);

/// Word acceptance by breadth-first search over configuration sets.
/// Build once and reuse for repeated queries.
class Matcher {
 public:
  explicit Matcher(const Sra& s);
  bool accepts(std::span<const Value> w) const;
  /// Largest configuration set seen during the last accepts() call.
  std::size_t last_peak() const { return peak_; }

 private:
  struct Edge {
    const Predicate* guard;
    std::vector<RegId> E, I, U;
    StateId to;
  };
  const Sra& s_;
  std::vector<std::vector<Edge>> out_;
  std::size_t stride_;
  mutable std::size_t peak_ = 0;
};

bool membership(const Sra& s, std::span<const Value> w);

/// Register automaton transition: all guards are true.
struct RaTransition {
  StateId from = 0;
  RegSet E = 0, I = 0, U = 0;
  StateId to = 0;
};

Sra from_ra(AlgebraKind algebra, std::size_t num_states, StateId initial,
            const std::vector<StateId>& finals, const Valuation& initial_valuation,
            const std::vector<RaTransition>& transitions);

struct SfaTransition {
  StateId from = 0;
  Predicate guard;
  StateId to = 0;
};

/// Register-free SRA.
Sra from_sfa(AlgebraKind algebra, std::size_t num_states, StateId initial,
             const std::vector<StateId>& finals, const std::vector<SfaTransition>& transitions);

/// Decodes UTF-8 text into codepoints.
Word utf8_decode(std::string_view text);
/// Encodes codepoints as UTF-8, escaping non-printable ones as \u{XXXX}.
std::string printable(const Word& w, AlgebraKind kind);

}  // namespace sra
