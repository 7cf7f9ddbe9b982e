// Minterm normalization: register abstractions, lazy normalized automaton,
// emptiness and determinism.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>

#include "sra/single_valued.hpp"

namespace sra {

/// Abstraction marker for an empty register.
inline constexpr std::uint32_t kNoMinterm = UINT32_MAX;

/// Per-register minterm index, or kNoMinterm.
using Abstraction = std::vector<std::uint32_t>;

using Basis = std::shared_ptr<const MintermSet>;

/// Minterms over all guards and all atoms of non-empty initial values of
/// `s` (and of `extra` when given).  Counting cap covers both register sets.
Basis minterm_basis(const Sra& s, const Sra* extra = nullptr);

/// Number of registers whose abstraction is minterm `m`.
std::size_t count_matching_registers(const Abstraction& theta, std::uint32_t m);

/// Whether a read/fresh label with minterm guard `m` can fire under `theta`.
bool enabled(const MintermSet& basis, const Abstraction& theta, SvKind kind, RegId reg,
             std::uint32_t m);

struct NormEdge {
  SvKind kind;
  RegId reg;
  std::uint32_t minterm;
  std::uint32_t to;
  std::uint32_t source_transition;  ///< index into the single-valued automaton
};

/// N(S) for a single-valued S, built on demand.  Node 0 is the initial node.
/// Register-free automata are accepted too; their edges are Bullet edges
/// that only split the guard.
class Normalized {
 public:
  Normalized(const Sra& single_valued, Basis basis, std::size_t max_nodes = 5'000'000);

  const Sra& automaton() const { return s_; }
  const MintermSet& basis() const { return *basis_; }
  const Basis& basis_ptr() const { return basis_; }

  std::uint32_t initial() const { return 0; }
  std::size_t size() const { return base_.size(); }
  StateId base(std::uint32_t n) const { return base_[n]; }
  const Abstraction& abstraction(std::uint32_t n) const { return theta_[n]; }
  bool is_final(std::uint32_t n) const { return s_.finals[base_[n]]; }
  std::string name(std::uint32_t n) const;

  /// Outgoing transitions of node n; computed on first request.
  const std::vector<NormEdge>& edges(std::uint32_t n);

  /// Builds every reachable node.
  void explore_all();

 private:
  std::uint32_t intern(StateId q, Abstraction theta);

  const Sra& s_;
  Basis basis_;
  std::size_t max_nodes_;
  std::vector<std::vector<std::uint32_t>> out_;
  std::vector<std::size_t> guard_source_;  // per transition
  std::vector<SvLabel> labels_;            // per transition
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<StateId> base_;
  std::vector<Abstraction> theta_;
  std::vector<std::optional<std::vector<NormEdge>>> edges_;
};

/// Fully materialized N(S) as an ordinary SRA with minterm guards.
/// Throws std::invalid_argument if `s` is not single-valued.
Sra normalize(const Sra& s);
/// Same, over a given basis (which must cover the guards and initial atoms of s).
Sra normalize(const Sra& s, const Basis& basis);

/// normalize() output in the JSON format plus an "abstractions" object
/// mapping each state to {register: minterm or null}.
std::string normalized_json(const Sra& s);

/// Concrete word along a path of N(S): reads repeat the register value,
/// fresh steps take the least minterm element not held by any register.
Word materialize_path(const Normalized& n, const std::vector<NormEdge>& path);

struct EmptinessResult {
  bool empty = true;
  std::optional<Word> witness;
  std::size_t nodes_visited = 0;
};

/// Reachability of a final node in N(to_single_valued(s)); the witness is
/// checked against the input by membership.
EmptinessResult check_emptiness(const Sra& s);
inline bool is_empty(const Sra& s) { return check_emptiness(s).empty; }

struct DeterminismResult {
  bool deterministic = true;
  std::string reason;  ///< empty when deterministic
};

DeterminismResult check_determinism(const Sra& s);
inline bool is_deterministic(const Sra& s) { return check_determinism(s).deterministic; }

/// `s` itself when already single-valued or register-free, else to_single_valued(s).
Sra as_single_valued(const Sra& s);

}  // namespace sra
