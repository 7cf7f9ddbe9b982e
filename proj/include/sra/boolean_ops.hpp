// Product, union, completion and complement.
#pragma once

#include "sra/normal.hpp"

namespace sra {

/// Product automaton over the reachable state pairs.  Registers of the
/// operands are renamed "1.x" and "2.x".  Pairs of transitions whose joint
/// guard is unsatisfiable are dropped.
Sra intersect(const Sra& a, const Sra& b);

/// Both automata side by side, plus a new initial state that copies the
/// out-transitions of both initial states.
Sra unite(const Sra& a, const Sra& b);

/// Adds a sink that takes every read and fresh symbol no existing transition
/// takes.  Requires a deterministic single-valued (or register-free) input;
/// set `check` false when the caller has verified that already.
Sra complete(const Sra& s, bool check = true);

/// Every reachable configuration of N(s) can move on every element.
/// Exact: decided on the normalized automaton.
bool is_complete(const Sra& s);

/// Same automaton with final states flipped.  Refuses input that is not
/// deterministic and complete (std::invalid_argument).
Sra complement(const Sra& s);

}  // namespace sra
