// Translation to single-valued form: injective valuations, read/fresh labels.
#pragma once

#include <optional>

#include "sra/sra.hpp"

namespace sra {

enum class SvKind { Read, Fresh, Bullet };

struct SvLabel {
  SvKind kind = SvKind::Read;
  RegId reg = 0;  ///< unused for Bullet
  Predicate guard;
};

/// read(r) is E={r}; fresh(r) is I=R, U={r}.
Label encode_read(Predicate guard, RegId r);
Label encode_fresh(Predicate guard, RegId r, std::size_t num_registers);
/// Read/fresh view of a label, or nothing if it has another shape.
std::optional<SvLabel> classify(const Label& l, std::size_t num_registers);

bool is_single_valued(const Sra& s);

/// Single-valued automaton that may still carry bullet transitions: a fresh
/// symbol that is read but not stored.
struct BulletSra {
  AlgebraKind algebra = AlgebraKind::Unicode;
  std::vector<std::string> registers;
  std::vector<std::string> states;
  StateId initial = 0;
  Valuation initial_valuation;
  std::vector<bool> finals;
  struct Edge {
    StateId from;
    SvLabel label;
    StateId to;
  };
  std::vector<Edge> transitions;
};

struct TranslateOptions {
  std::size_t max_states = 5'000'000;  ///< std::length_error beyond this
};

/// The (reg)/(fresh)/(nop) rules over states (q, f), f mapping original
/// registers onto registers of the result.  Only reachable states are built.
/// Uses exactly |R| registers; fresh symbols that are not stored become bullets.
BulletSra translate_with_bullets(const Sra& s, const TranslateOptions& opt = {});

/// Removes bullets by adding one spare register.  Each bullet reads a fresh
/// symbol into whichever register is currently unused, and whatever that
/// register holds can be read back as well.
Sra eliminate_bullet(const BulletSra& t, const TranslateOptions& opt = {});

/// Single-valued automaton bisimilar to `s`, with |R|+1 registers.  The
/// translation runs in one pass: the spare register is part of the target
/// register set, so the (fresh) rule with U = {} stores into a spare register
/// instead of producing a bullet.
Sra to_single_valued(const Sra& s, const TranslateOptions& opt = {});

/// The bullet automaton seen as an ordinary SRA (bullet = E {}, I R, U {}).
Sra bullets_as_sra(const BulletSra& t);

}  // namespace sra
