// Configuration expansion of an automaton with registers into a register-free
// one over a finite domain, plus the size report rows built from it.
#pragma once

#include <optional>
#include <string>

#include "sra/sra.hpp"

namespace sra {

/// Largest domain expand_to_sfa accepts; covers all of Unicode.
inline constexpr std::uint64_t kMaxDomain = std::uint64_t{1} << 21;

struct ExpandLimits {
  std::size_t max_states = 2'000'000;
};

struct Expansion {
  bool overflow = false;
  /// Configurations discovered; on overflow, max_states + 1.
  std::size_t states = 0;
  std::size_t transitions = 0;
  /// Distinct values held by some register in a discovered configuration; a
  /// lower bound on overflow.
  std::size_t register_values = 0;
  std::optional<Sra> sfa;  ///< absent on overflow
};

/// Reachable configurations (q, v) of `s` on letters from `domain`, one SFA
/// state each.  Letters moving between the same pair of configurations are
/// merged into one guard.  Throws std::invalid_argument when the domain has
/// more than kMaxDomain elements.
Expansion expand_to_sfa(const Sra& s, const Predicate& domain, const ExpandLimits& limits = {});

struct SizeRow {
  std::string name;
  std::size_t sra_states = 0;
  std::size_t sra_transitions = 0;
  /// Register count of the single-valued form: one more than the original.
  std::size_t registers = 0;
  std::size_t register_domain = 0;
  std::optional<std::size_t> sfa_states;  ///< absent on overflow
  std::optional<std::size_t> sfa_transitions;
};

SizeRow size_report(const std::string& name, const Sra& s, const Expansion& e);

std::string size_csv_header();
/// One CSV line (no newline); overflowing rows print "---".
std::string to_csv(const SizeRow& row);

}  // namespace sra
