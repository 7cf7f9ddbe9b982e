// Effective Boolean algebras over Unicode codepoints and machine integers.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sra {

enum class AlgebraKind { Unicode, Integer };

using Value = std::int64_t;

/// Largest Unicode codepoint.
inline constexpr Value kUnicodeMax = 0x10FFFF;
/// The integer domain is int64 minus its lowest value, which is reserved
/// as the empty-register marker.
inline constexpr Value kIntegerMin = INT64_MIN + 1;
inline constexpr Value kIntegerMax = INT64_MAX;
inline constexpr Value kEmptyRegister = INT64_MIN;

Value domain_min(AlgebraKind kind);
Value domain_max(AlgebraKind kind);
std::string algebra_name(AlgebraKind kind);
AlgebraKind parse_algebra_name(std::string_view name);

/// Residue classes modulo some m, as a bitset of m bits.
class Residues {
 public:
  Residues() = default;
  Residues(std::uint32_t modulus, bool all);
  bool test(std::uint64_t r) const { return (bits_[r >> 6] >> (r & 63)) & 1; }
  void set(std::uint64_t r) { bits_[r >> 6] |= std::uint64_t{1} << (r & 63); }
  bool none() const;
  std::uint64_t count() const;
  Residues lift(std::uint32_t from, std::uint32_t to) const;
  Residues flipped(std::uint32_t modulus) const;
  friend bool operator==(const Residues&, const Residues&) = default;
  friend Residues operator&(const Residues& a, const Residues& b);
  friend Residues operator|(const Residues& a, const Residues& b);

 private:
  std::vector<std::uint64_t> bits_;
};

/// Exact denotation of a predicate: the domain is cut into consecutive
/// pieces and each piece keeps the residues (mod a shared modulus) it holds.
/// Unicode sets always have modulus 1, so they reduce to interval unions.
class ElemSet {
 public:
  static ElemSet empty(AlgebraKind kind);
  static ElemSet full(AlgebraKind kind);
  static ElemSet interval(AlgebraKind kind, Value lo, Value hi);
  static ElemSet multiples(AlgebraKind kind, std::int64_t k);
  static ElemSet single(AlgebraKind kind, Value a);

  AlgebraKind kind() const { return kind_; }
  std::uint32_t modulus() const { return modulus_; }

  bool contains(Value x) const;
  bool is_empty() const;
  /// min(|set|, cap)
  std::uint64_t count_capped(std::uint64_t cap) const;
  /// Least element in the witness order of the algebra.
  std::optional<Value> least() const;
  /// Enumerates elements in increasing numeric order; stops when `fn`
  /// returns false.  Meant for finite restrictions only.
  template <class Fn>
  void for_each(Fn&& fn) const;
  /// Maximal runs [lo, hi] of consecutive members, numeric order.
  std::vector<std::pair<Value, Value>> runs() const;

  ElemSet complement() const;
  ElemSet operator&(const ElemSet& o) const;
  ElemSet operator|(const ElemSet& o) const;
  ElemSet minus(const ElemSet& o) const { return *this & o.complement(); }
  bool operator==(const ElemSet& o) const;

 private:
  struct Piece {
    Value lo;  // piece spans [lo, next.lo - 1]
    Residues res;
  };
  ElemSet(AlgebraKind kind, std::uint32_t modulus, std::vector<Piece> pieces)
      : kind_(kind), modulus_(modulus), pieces_(std::move(pieces)) {}
  Value piece_hi(std::size_t i) const;
  void normalize();
  template <class Op>
  static ElemSet combine(const ElemSet& a, const ElemSet& b, Op op);

  AlgebraKind kind_ = AlgebraKind::Unicode;
  std::uint32_t modulus_ = 1;
  std::vector<Piece> pieces_;
};

/// Witness order: numeric for Unicode; 0, 1, -1, 2, -2, ... for integers.
bool witness_less(AlgebraKind kind, Value a, Value b);

enum class Connective { And, Or, Not };

/// Immutable predicate: syntax tree plus its cached denotation.
class Predicate {
 public:
  enum class Op { True, False, Interval, Div, Atom, Not, And, Or };

  Predicate() = default;  // only valid as a placeholder

  static Predicate top(AlgebraKind kind);
  static Predicate bottom(AlgebraKind kind);
  /// Inclusive interval; `lo_inf`/`hi_inf` make the bound unbounded.
  static Predicate interval(AlgebraKind kind, Value lo, Value hi,
                            bool lo_inf = false, bool hi_inf = false);
  static Predicate at_least(AlgebraKind kind, Value lo);
  static Predicate at_most(AlgebraKind kind, Value hi);
  /// x mod k == 0; integer algebra only.
  static Predicate div(std::int64_t k);
  static Predicate atom(AlgebraKind kind, Value a);
  static Predicate build(Connective c, const std::vector<Predicate>& operands);
  /// A conjunction whose denotation has already been computed.
  static Predicate conjunction(const std::vector<Predicate>& operands, ElemSet set);

  Predicate operator&(const Predicate& o) const { return build(Connective::And, {*this, o}); }
  Predicate operator|(const Predicate& o) const { return build(Connective::Or, {*this, o}); }
  Predicate operator!() const { return build(Connective::Not, {*this}); }

  bool valid() const { return node_ != nullptr; }
  AlgebraKind kind() const;
  Op op() const;
  const std::vector<Predicate>& operands() const;
  const ElemSet& denotation() const;

  bool denotes(Value a) const;
  bool is_sat() const { return !denotation().is_empty(); }
  bool has_min_size(std::uint64_t k) const { return denotation().count_capped(k) >= k; }
  /// Least element of [[this]] \ excluded in the witness order.
  std::optional<Value> witness(const std::vector<Value>& excluded = {}) const;
  /// Same denotation, checked exactly.
  bool equivalent(const Predicate& o) const { return denotation() == o.denotation(); }

  /// Canonical concrete syntax; parse(to_string()) prints back identically.
  std::string to_string() const;
  static Predicate parse(AlgebraKind kind, std::string_view text);

  /// Structural identity (same printed form).
  bool same_syntax(const Predicate& o) const { return to_string() == o.to_string(); }

 private:
  struct Node;
  explicit Predicate(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

std::string format_value(AlgebraKind kind, Value v);
/// Accepts decimal integers, 'c' (one UTF-8 character) and U+XXXX.
Value parse_value(AlgebraKind kind, std::string_view text);

/// One satisfiable sign pattern over a predicate set.
struct Minterm {
  Predicate conjunction;
  std::vector<bool> positives;  ///< positives[i]: source i taken non-negated
  std::uint64_t source_set_id = 0;
  std::uint64_t size_capped = 0;  ///< min(|[[conjunction]]|, cap used at build time)
};

/// All minterms of a finite predicate set.  Sources are deduplicated by
/// syntax; minterms are identified by index, which is stable for a set.
class MintermSet {
 public:
  MintermSet() = default;
  MintermSet(AlgebraKind kind, const std::vector<Predicate>& sources,
             std::uint64_t size_cap = 64);

  AlgebraKind kind() const { return kind_; }
  std::uint64_t id() const { return id_; }
  const std::vector<Predicate>& sources() const { return sources_; }
  const std::vector<Minterm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  const Minterm& operator[](std::size_t i) const { return terms_[i]; }

  /// Index of a source predicate (by syntax), if present.
  std::optional<std::size_t> source_index(const Predicate& p) const;
  /// Minterms m with p ⊏ m, i.e. p occurs positively in m.
  const std::vector<std::uint32_t>& terms_under(std::size_t source) const {
    return under_[source];
  }
  bool positive_in(std::size_t term, std::size_t source) const {
    return terms_[term].positives[source];
  }
  /// The minterm holding element a.
  std::uint32_t term_of(Value a) const;

 private:
  AlgebraKind kind_ = AlgebraKind::Unicode;
  std::uint64_t id_ = 0;
  std::vector<Predicate> sources_;
  std::vector<Minterm> terms_;
  std::vector<std::vector<std::uint32_t>> under_;
};

/// Convenience wrapper returning the minterm list.
std::vector<Minterm> minterms(AlgebraKind kind, const std::vector<Predicate>& phis);

// ---- ElemSet::for_each ------------------------------------------------------

template <class Fn>
void ElemSet::for_each(Fn&& fn) const {
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const Value lo = pieces_[i].lo;
    const Value hi = piece_hi(i);
    if (pieces_[i].res.none()) continue;
    for (Value x = lo;; ++x) {
      const auto m = static_cast<std::uint64_t>(((static_cast<__int128>(x) % modulus_) + modulus_) % modulus_);
      if (pieces_[i].res.test(m) && !fn(x)) return;
      if (x == hi) break;
    }
  }
}

}  // namespace sra
