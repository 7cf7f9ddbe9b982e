// Symbolic simulation and bisimulation on normalized automata; language
// inclusion and equivalence for deterministic automata.
#pragma once

#include "sra/normal.hpp"

namespace sra {

/// Partial injective map from left registers to right registers; -1 = unmapped.
using Correspondence = std::vector<std::int8_t>;

/// sigma(r) = s iff v1(r) = v2(s) and both are non-empty.  Throws
/// std::invalid_argument when either valuation repeats a value.
Correspondence correspondence_of(const Valuation& v1, const Valuation& v2);

/// One move of the witness path.  `left`/`right` are edges of the two
/// normalized automata; one of them is missing on a failing last step.
struct SimStep {
  std::optional<NormEdge> left;
  std::optional<NormEdge> right;
};

struct SimResult {
  bool holds = true;
  /// On failure: moves from the initial triple to a violating one, when the
  /// violation is forced by single-candidate moves (always the case for a
  /// deterministic right-hand side).
  std::optional<std::vector<SimStep>> trace;
  std::string reason;
  std::size_t triples = 0;
};

struct SimOptions {
  bool both_ways = false;          ///< bisimulation
  std::size_t max_triples = 20'000'000;
};

/// N-simulation between two normalized automata over one shared basis.
SimResult n_simulation(Normalized& left, Normalized& right, const SimOptions& opt = {});

/// Wrappers that translate to single-valued form and normalize over the
/// shared basis first.
SimResult n_similar(const Sra& a, const Sra& b);
SimResult n_bisimilar(const Sra& a, const Sra& b);

/// Word along a trace; reads copy register values, fresh moves take the
/// least element outside both valuations.
Word materialize_trace(const Normalized& left, const Normalized& right, const std::vector<SimStep>& trace);

struct InclusionResult {
  bool holds = true;
  /// On failure: accepted by exactly one side (for includes: by the left).
  std::optional<Word> counterexample;
  std::size_t triples = 0;
};

/// L(a) within L(b) for deterministic a and b (std::invalid_argument
/// otherwise).  b is completed first.
InclusionResult includes(const Sra& a, const Sra& b);
/// L(a) = L(b) for deterministic a and b; both are completed.
InclusionResult equivalent(const Sra& a, const Sra& b);

}  // namespace sra
