#include "sra/sra.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace sra {

std::vector<RegId> regs_of(RegSet s) {
  std::vector<RegId> out;
  while (s) {
    out.push_back(static_cast<RegId>(std::countr_zero(s)));
    s &= s - 1;
  }
  return out;
}

StateId Sra::add_state(std::string name, bool final) {
  states.push_back(std::move(name));
  finals.push_back(final);
  return static_cast<StateId>(states.size() - 1);
}

RegId Sra::add_register(std::string name, Value initial_value) {
  if (registers.size() >= kMaxRegisters) throw std::length_error("too many registers (max 64)");
  registers.push_back(std::move(name));
  initial_valuation.push_back(initial_value);
  return static_cast<RegId>(registers.size() - 1);
}

std::vector<std::vector<std::uint32_t>> Sra::out_index() const {
  std::vector<std::vector<std::uint32_t>> out(states.size());
  for (std::uint32_t i = 0; i < transitions.size(); ++i) out[transitions[i].from].push_back(i);
  return out;
}

Sra make_sra(AlgebraKind algebra, std::size_t num_states, std::size_t num_registers) {
  Sra s;
  s.algebra = algebra;
  for (std::size_t q = 0; q < num_states; ++q) s.add_state(std::to_string(q));
  for (std::size_t r = 0; r < num_registers; ++r) s.add_register("r" + std::to_string(r));
  return s;
}

std::vector<std::string> validate(const Sra& s) {
  std::vector<std::string> v;
  const std::size_t n = s.num_states();
  if (s.registers.size() > kMaxRegisters) v.push_back("more than 64 registers");
  if (s.finals.size() != n) v.push_back("final-state flags do not match the state count");
  if (n == 0) v.push_back("no states");
  if (n && s.initial >= n) v.push_back("initial state out of range");
  if (s.initial_valuation.size() != s.registers.size())
    v.push_back("initial valuation does not cover exactly the registers");
  for (std::size_t r = 0; r < s.initial_valuation.size(); ++r) {
    const Value x = s.initial_valuation[r];
    if (x != kEmptyRegister && (x < domain_min(s.algebra) || x > domain_max(s.algebra)))
      v.push_back("initial value of register " + std::to_string(r) + " outside the domain");
  }
  const RegSet all = s.all_registers();
  for (std::size_t i = 0; i < s.transitions.size(); ++i) {
    const auto& t = s.transitions[i];
    const std::string where = "transition " + std::to_string(i);
    if (t.from >= n || t.to >= n) v.push_back(where + ": state out of range");
    const auto& l = t.label;
    if (!l.guard.valid()) {
      v.push_back(where + ": missing guard");
    } else if (l.guard.kind() != s.algebra) {
      v.push_back(where + ": guard from another algebra");
    }
    if ((l.E | l.I | l.U) & ~all) v.push_back(where + ": register not in R");
    if (l.E & l.I) v.push_back(where + ": E and I intersect");
  }
  return v;
}

bool fires(const Label& l, const Valuation& v, Value a) {
  if (!l.guard.denotes(a)) return false;
  for (RegSet e = l.E; e; e &= e - 1) {
    if (v[std::countr_zero(e)] != a) return false;
  }
  for (RegSet i = l.I; i; i &= i - 1) {
    if (v[std::countr_zero(i)] == a) return false;
  }
  return true;
}

std::vector<Configuration> step(const Sra& s, const Configuration& c, Value a) {
  std::vector<Configuration> out;
  for (const auto& t : s.transitions) {
    if (t.from != c.state || !fires(t.label, c.valuation, a)) continue;
    Configuration n{t.to, c.valuation};
    for (RegSet u = t.label.U; u; u &= u - 1) n.valuation[std::countr_zero(u)] = a;
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(std::move(n));
  }
  return out;
}

Matcher::Matcher(const Sra& s) : s_(s), out_(s.num_states()), stride_(s.num_registers() + 1) {
  for (const auto& t : s.transitions) {
    out_[t.from].push_back({&t.label.guard, regs_of(t.label.E), regs_of(t.label.I),
                            regs_of(t.label.U), t.to});
  }
}

bool Matcher::accepts(std::span<const Value> w) const {
  const std::size_t st = stride_;
  std::vector<Value> cur, next;
  cur.push_back(s_.initial);
  cur.insert(cur.end(), s_.initial_valuation.begin(), s_.initial_valuation.end());
  peak_ = 1;
  std::vector<std::size_t> order;
  for (const Value a : w) {
    next.clear();
    for (std::size_t base = 0; base < cur.size(); base += st) {
      const auto p = static_cast<StateId>(cur[base]);
      const Value* v = cur.data() + base + 1;
      for (const auto& e : out_[p]) {
        if (!e.guard->denotes(a)) continue;
        bool ok = true;
        for (RegId r : e.E) ok = ok && v[r] == a;
        for (RegId r : e.I) ok = ok && v[r] != a;
        if (!ok) continue;
        const std::size_t at = next.size();
        next.push_back(e.to);
        next.insert(next.end(), v, v + (st - 1));
        for (RegId r : e.U) next[at + 1 + r] = a;
      }
    }
    const std::size_t k = next.size() / st;
    if (k > 1) {
      order.resize(k);
      std::iota(order.begin(), order.end(), std::size_t{0});
      auto slice_less = [&](std::size_t x, std::size_t y) {
        return std::lexicographical_compare(next.begin() + x * st, next.begin() + (x + 1) * st,
                                            next.begin() + y * st, next.begin() + (y + 1) * st);
      };
      auto slice_eq = [&](std::size_t x, std::size_t y) {
        return std::equal(next.begin() + x * st, next.begin() + (x + 1) * st, next.begin() + y * st);
      };
      std::sort(order.begin(), order.end(), slice_less);
      order.erase(std::unique(order.begin(), order.end(), slice_eq), order.end());
      cur.clear();
      for (std::size_t x : order) cur.insert(cur.end(), next.begin() + x * st, next.begin() + (x + 1) * st);
      peak_ = std::max(peak_, order.size());
    } else {
      std::swap(cur, next);
    }
    if (cur.empty()) return false;
  }
  for (std::size_t base = 0; base < cur.size(); base += st) {
    if (s_.finals[static_cast<StateId>(cur[base])]) return true;
  }
  return false;
}

bool membership(const Sra& s, std::span<const Value> w) { return Matcher(s).accepts(w); }

Sra from_ra(AlgebraKind algebra, std::size_t num_states, StateId initial,
            const std::vector<StateId>& finals, const Valuation& initial_valuation,
            const std::vector<RaTransition>& transitions) {
  Sra s = make_sra(algebra, num_states, initial_valuation.size());
  if (initial >= num_states) throw std::invalid_argument("initial state out of range");
  s.initial = initial;
  s.initial_valuation = initial_valuation;
  for (StateId f : finals) {
    if (f >= num_states) throw std::invalid_argument("final state out of range");
    s.finals[f] = true;
  }
  const RegSet all = s.all_registers();
  for (const auto& t : transitions) {
    if (t.from >= num_states || t.to >= num_states) throw std::invalid_argument("state out of range");
    if ((t.E | t.I | t.U) & ~all) throw std::invalid_argument("register out of range");
    s.add_transition(t.from, {Predicate::top(algebra), t.E, t.I, t.U}, t.to);
  }
  return s;
}

Sra from_sfa(AlgebraKind algebra, std::size_t num_states, StateId initial,
             const std::vector<StateId>& finals, const std::vector<SfaTransition>& transitions) {
  Sra s = make_sra(algebra, num_states, 0);
  if (initial >= num_states) throw std::invalid_argument("initial state out of range");
  s.initial = initial;
  for (StateId f : finals) {
    if (f >= num_states) throw std::invalid_argument("final state out of range");
    s.finals[f] = true;
  }
  for (const auto& t : transitions) {
    if (t.from >= num_states || t.to >= num_states) throw std::invalid_argument("state out of range");
    if (!t.guard.valid() || t.guard.kind() != algebra) throw std::invalid_argument("bad guard");
    s.add_transition(t.from, {t.guard, 0, 0, 0}, t.to);
  }
  return s;
}

Word utf8_decode(std::string_view text) {
  Word w;
  w.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    const auto c0 = static_cast<unsigned char>(text[i]);
    const int len = c0 < 0x80 ? 1 : (c0 >> 5) == 6 ? 2 : (c0 >> 4) == 14 ? 3 : (c0 >> 3) == 30 ? 4 : 0;
    if (len == 0 || i + len > text.size()) throw std::invalid_argument("invalid UTF-8 input");
    Value cp = len == 1 ? c0 : len == 2 ? (c0 & 0x1F) : len == 3 ? (c0 & 0x0F) : (c0 & 0x07);
    for (int k = 1; k < len; ++k) cp = (cp << 6) | (static_cast<unsigned char>(text[i + k]) & 0x3F);
    w.push_back(cp);
    i += len;
  }
  return w;
}

std::string printable(const Word& w, AlgebraKind kind) {
  std::string out;
  if (kind == AlgebraKind::Integer) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(w[i]);
    }
    return out;
  }
  for (Value c : w) {
    if (c == '\\') {
      out += "\\\\";
    } else if (c >= 0x20 && c <= 0x7E) {
      out += static_cast<char>(c);
    } else {
      char buf[24];
      std::snprintf(buf, sizeof buf, "\\u{%llX}", static_cast<unsigned long long>(c));
      out += buf;
    }
  }
  return out;
}

}  // namespace sra
