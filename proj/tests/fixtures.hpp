// Hand-built automata shared by the test binaries.
#pragma once

#include <functional>
#include <random>
#include <set>

#include "sra/sra.hpp"

namespace fx {

using namespace sra;

inline constexpr auto Z = AlgebraKind::Integer;
inline constexpr auto U = AlgebraKind::Unicode;

inline Predicate iv(Value lo, Value hi) { return Predicate::interval(Z, lo, hi); }
inline Predicate even() { return Predicate::div(2); }
inline Predicate top(AlgebraKind k = Z) { return Predicate::top(k); }

inline Label read(Predicate g, RegId r) { return {std::move(g), reg_bit(r), 0, 0}; }
inline Label fresh(Predicate g, RegId r, RegSet all) { return {std::move(g), 0, all, reg_bit(r)}; }
inline Label plain(Predicate g) { return {std::move(g), 0, 0, 0}; }

/// 0 -div3 & !atom0 / fresh r-> 1 -[0,10] & div5 / read r-> 2 (final), and
/// a read loop on 1 guarded by x<0 | x>10.  Empty language.
inline Sra empty_by_guards(Predicate one_to_two = iv(0, 10) & Predicate::div(5)) {
  Sra s = make_sra(Z, 3, 1);
  s.registers[0] = "r";
  s.finals[2] = true;
  s.add_transition(0, fresh(Predicate::div(3) & !Predicate::atom(Z, 0), 0, 1), 1);
  s.add_transition(1, read(one_to_two, 0), 2);
  s.add_transition(1, read(Predicate::at_most(Z, -1) | Predicate::at_least(Z, 11), 0), 1);
  return s;
}

inline Sra nonempty_by_guards() { return empty_by_guards(iv(0, 10) & Predicate::div(3)); }

/// Even integers whose first and last element coincide (length >= 1).
/// `middle` guards the reads that differ from the stored value.
inline Sra even_bookends(Predicate middle = even()) {
  Sra s = make_sra(Z, 3, 1);
  s.registers[0] = "r";
  s.states = {"start", "same", "differs"};
  s.finals[1] = true;
  s.add_transition(0, fresh(even(), 0, 1), 1);
  s.add_transition(1, {middle, 0, 1, 0}, 2);
  s.add_transition(1, read(even(), 0), 1);
  s.add_transition(2, {middle, 0, 1, 0}, 2);
  s.add_transition(2, read(even(), 0), 1);
  return s;
}

/// Same as even_bookends but the middle elements may be anything.
inline Sra bookends() { return even_bookends(top()); }

inline bool even_bookends_oracle(const Word& w) {
  if (w.empty()) return false;
  for (Value x : w) {
    if (x % 2 != 0) return false;
  }
  return w.front() == w.back();
}

/// RA over integers: the first symbol occurs again later.
inline Sra first_repeats() {
  return from_ra(Z, 3, 0, {2}, {kEmptyRegister},
                 {{0, 0, 0, 1, 1}, {1, 0, 1, 0, 1}, {1, 1, 0, 0, 2}, {2, 0, 0, 0, 2}});
}

inline bool first_repeats_oracle(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i] == w[0]) return true;
  }
  return false;
}

/// SFA for [0-9]+ over Unicode.
inline Sra digits_plus() {
  const Predicate d = Predicate::interval(U, '0', '9');
  return from_sfa(U, 2, 0, {1}, {{0, d, 1}, {1, d, 1}});
}

/// Two stores into two registers, then each must be repeated: "ab" "ab".
inline Sra two_copies() {
  Sra s = make_sra(Z, 5, 2);
  s.finals[4] = true;
  s.add_transition(0, {top(), 0, 0, 1}, 1);
  s.add_transition(1, {top(), 0, 0, 2}, 2);
  s.add_transition(2, read(top(), 0), 3);
  s.add_transition(3, read(top(), 1), 4);
  return s;
}

/// Non-injective initial valuation and multi-register updates.
inline Sra shared_values() {
  Sra s = make_sra(Z, 4, 2);
  s.initial_valuation = {5, 5};
  s.finals[3] = true;
  s.add_transition(0, {top(), 3, 0, 0}, 1);         // reads 5 (both registers)
  s.add_transition(1, {even(), 0, 0, 3}, 2);        // store into both
  s.add_transition(1, {top(), 0, 3, 0}, 1);         // anything but the shared value
  s.add_transition(2, {top(), 1, 0, 0}, 3);         // repeat it
  s.add_transition(2, {Predicate::atom(Z, 5), 0, 0, 0}, 3);
  return s;
}

/// Nondeterministic: two fresh transitions into different registers.
inline Sra nondet_fresh() {
  Sra s = make_sra(Z, 3, 2);
  s.finals[1] = s.finals[2] = true;
  s.add_transition(0, fresh(even(), 0, 3), 1);
  s.add_transition(0, fresh(even(), 1, 3), 2);
  return s;
}

/// Nondeterministic: one register read leading to two targets.
inline Sra nondet_read() {
  Sra s = make_sra(Z, 4, 1);
  s.finals[3] = true;
  s.add_transition(0, fresh(top(), 0, 1), 1);
  s.add_transition(1, read(top(), 0), 2);
  s.add_transition(1, read(iv(-5, 5), 0), 3);
  return s;
}

/// Nondeterministic register-free automaton with overlapping guards.
inline Sra nondet_overlap() {
  return from_sfa(Z, 3, 0, {1}, {{0, iv(0, 5), 1}, {0, iv(3, 9), 2}, {2, top(), 2}});
}

/// Deterministic SRAs paired for the exhaustive construction checks.
inline std::vector<std::pair<Sra, Sra>> deterministic_pairs() {
  return {
      {even_bookends(), bookends()},
      {first_repeats(), even_bookends()},
      {empty_by_guards(), nonempty_by_guards()},
      {two_copies(), first_repeats()},
      {bookends(), two_copies()},
  };
}

inline std::vector<Sra> all_fixtures() {
  return {empty_by_guards(),     nonempty_by_guards(), even_bookends(),      bookends(),
          first_repeats(), two_copies(),      shared_values(), nondet_fresh(),
          nondet_read(),   nondet_overlap()};
}

/// All words up to `max_len` over `alphabet`.
inline std::vector<Word> all_words(const std::vector<Value>& alphabet, std::size_t max_len) {
  std::vector<Word> out{{}};
  std::vector<Word> layer{{}};
  for (std::size_t n = 1; n <= max_len; ++n) {
    std::vector<Word> next;
    for (const auto& w : layer) {
      for (Value a : alphabet) {
        Word x = w;
        x.push_back(a);
        next.push_back(x);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

/// Independent acceptance oracle: depth-first search over runs.
inline bool accepts_by_runs(const Sra& s, const Word& w, std::size_t i, StateId q, Valuation v) {
  if (i == w.size()) return s.finals[q];
  const Value a = w[i];
  for (const auto& t : s.transitions) {
    if (t.from != q || !t.label.guard.denotes(a)) continue;
    bool ok = true;
    for (std::size_t r = 0; r < v.size(); ++r) {
      if (has_reg(t.label.E, static_cast<RegId>(r)) && v[r] != a) ok = false;
      if (has_reg(t.label.I, static_cast<RegId>(r)) && v[r] == a) ok = false;
    }
    if (!ok) continue;
    Valuation n = v;
    for (std::size_t r = 0; r < v.size(); ++r) {
      if (has_reg(t.label.U, static_cast<RegId>(r))) n[r] = a;
    }
    if (accepts_by_runs(s, w, i + 1, t.to, n)) return true;
  }
  return false;
}

inline bool accepts_by_runs(const Sra& s, const Word& w) {
  return accepts_by_runs(s, w, 0, s.initial, s.initial_valuation);
}

/// Small random SRA over integers; labels draw guards from a fixed pool.
inline Sra random_sra(std::mt19937& rng, std::size_t states, std::size_t regs, std::size_t trans) {
  const std::vector<Predicate> pool = {top(), even(), iv(0, 2), !Predicate::atom(Z, 1),
                                       Predicate::atom(Z, 3), iv(1, 5) | Predicate::atom(Z, 0)};
  Sra s = make_sra(Z, states, regs);
  for (std::size_t r = 0; r < regs; ++r) {
    if (rng() % 3 == 0) s.initial_valuation[r] = static_cast<Value>(rng() % 4);
  }
  for (std::size_t q = 0; q < states; ++q) s.finals[q] = rng() % 2 == 0;
  for (std::size_t k = 0; k < trans; ++k) {
    Label l;
    l.guard = pool[rng() % pool.size()];
    for (RegId r = 0; r < regs; ++r) {
      switch (rng() % 4) {
        case 0: l.E |= reg_bit(r); break;
        case 1: l.I |= reg_bit(r); break;
        default: break;
      }
      if (rng() % 3 == 0) l.U |= reg_bit(r);
    }
    s.add_transition(static_cast<StateId>(rng() % states), l, static_cast<StateId>(rng() % states));
  }
  return s;
}

}  // namespace fx
