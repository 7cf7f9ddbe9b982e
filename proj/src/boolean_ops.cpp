#include "sra/boolean_ops.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace sra {

namespace {

void same_algebra(const Sra& a, const Sra& b) {
  if (a.algebra != b.algebra) throw std::invalid_argument("automata over different algebras");
}

std::vector<std::string> renamed_registers(const Sra& a, const Sra& b) {
  std::vector<std::string> out;
  for (const auto& r : a.registers) out.push_back("1." + r);
  for (const auto& r : b.registers) out.push_back("2." + r);
  if (out.size() > kMaxRegisters) throw std::length_error("too many registers in combined automaton");
  return out;
}

Valuation joined(const Valuation& a, const Valuation& b) {
  Valuation v = a;
  v.insert(v.end(), b.begin(), b.end());
  return v;
}

Label shifted(const Label& l, std::size_t by) {
  return {l.guard, l.E << by, l.I << by, l.U << by};
}

Predicate any_of(AlgebraKind kind, const std::vector<Predicate>& guards) {
  if (guards.empty()) return Predicate::bottom(kind);
  if (guards.size() == 1) return guards[0];
  return Predicate::build(Connective::Or, guards);
}

}  // namespace

Sra intersect(const Sra& a, const Sra& b) {
  same_algebra(a, b);
  Sra out;
  out.algebra = a.algebra;
  out.registers = renamed_registers(a, b);
  out.initial_valuation = joined(a.initial_valuation, b.initial_valuation);
  const std::size_t shift = a.num_registers();
  const auto out_a = a.out_index(), out_b = b.out_index();
  std::map<std::pair<StateId, StateId>, StateId> ids;
  std::deque<std::pair<StateId, StateId>> work;
  auto intern = [&](StateId p, StateId q) {
    auto [it, fresh] = ids.emplace(std::make_pair(p, q), static_cast<StateId>(out.states.size()));
    if (fresh) {
      out.add_state("(" + a.states[p] + "," + b.states[q] + ")", a.finals[p] && b.finals[q]);
      work.emplace_back(p, q);
    }
    return it->second;
  };
  out.initial = intern(a.initial, b.initial);
  while (!work.empty()) {
    const auto [p, q] = work.front();
    work.pop_front();
    const StateId from = ids[{p, q}];
    for (std::uint32_t i : out_a[p]) {
      for (std::uint32_t j : out_b[q]) {
        const Label& la = a.transitions[i].label;
        const Label lb = shifted(b.transitions[j].label, shift);
        const Predicate g = la.guard & lb.guard;
        if (!g.is_sat()) continue;
        const StateId to = intern(a.transitions[i].to, b.transitions[j].to);
        out.add_transition(from, {g, la.E | lb.E, la.I | lb.I, la.U | lb.U}, to);
      }
    }
  }
  return out;
}

Sra unite(const Sra& a, const Sra& b) {
  same_algebra(a, b);
  Sra out;
  out.algebra = a.algebra;
  out.registers = renamed_registers(a, b);
  out.initial_valuation = joined(a.initial_valuation, b.initial_valuation);
  const std::size_t shift = a.num_registers();
  const auto na = static_cast<StateId>(a.num_states());
  for (std::size_t q = 0; q < a.num_states(); ++q) out.add_state("1." + a.states[q], a.finals[q]);
  for (std::size_t q = 0; q < b.num_states(); ++q) out.add_state("2." + b.states[q], b.finals[q]);
  out.initial = out.add_state("init", a.finals[a.initial] || b.finals[b.initial]);
  for (const auto& t : a.transitions) {
    out.add_transition(t.from, t.label, t.to);
    if (t.from == a.initial) out.add_transition(out.initial, t.label, t.to);
  }
  for (const auto& t : b.transitions) {
    const Label l = shifted(t.label, shift);
    out.add_transition(na + t.from, l, na + t.to);
    if (t.from == b.initial) out.add_transition(out.initial, l, na + t.to);
  }
  return out;
}

Sra complete(const Sra& s, bool check) {
  const std::size_t nregs = s.num_registers();
  if (nregs > 0 && !is_single_valued(s)) throw std::invalid_argument("complete needs a single-valued automaton");
  if (check) {
    const auto d = check_determinism(s);
    if (!d.deterministic) throw std::invalid_argument("complete needs a deterministic automaton: " + d.reason);
  }
  Sra out = s;
  std::string sink_name = "sink";
  while (std::find(out.states.begin(), out.states.end(), sink_name) != out.states.end()) sink_name += "_";
  const StateId sink = out.add_state(sink_name);
  const AlgebraKind k = s.algebra;
  if (nregs == 0) {
    std::vector<std::vector<Predicate>> guards(s.num_states());
    for (const auto& t : s.transitions) guards[t.from].push_back(t.label.guard);
    for (StateId p = 0; p < s.num_states(); ++p) {
      const Predicate rest = !any_of(k, guards[p]);
      if (rest.is_sat()) out.add_transition(p, {rest, 0, 0, 0}, sink);
    }
    out.add_transition(sink, {Predicate::top(k), 0, 0, 0}, sink);
    return out;
  }
  // reads[p][r]: guards of read(r) transitions; fresh[p]: guards of all fresh ones.
  std::vector<std::vector<std::vector<Predicate>>> reads(s.num_states(), std::vector<std::vector<Predicate>>(nregs));
  std::vector<std::vector<Predicate>> fresh(s.num_states());
  for (const auto& t : s.transitions) {
    const auto l = classify(t.label, nregs);
    if (l->kind == SvKind::Read) {
      reads[t.from][l->reg].push_back(t.label.guard);
    } else {
      fresh[t.from].push_back(t.label.guard);
    }
  }
  const RegId chosen = 0;
  for (StateId p = 0; p < s.num_states(); ++p) {
    for (RegId r = 0; r < nregs; ++r) {
      const Predicate rest = !any_of(k, reads[p][r]);
      if (rest.is_sat()) out.add_transition(p, encode_read(rest, r), sink);
    }
    const Predicate rest = !any_of(k, fresh[p]);
    if (rest.is_sat()) out.add_transition(p, encode_fresh(rest, chosen, nregs), sink);
  }
  for (RegId r = 0; r < nregs; ++r) out.add_transition(sink, encode_read(Predicate::top(k), r), sink);
  out.add_transition(sink, encode_fresh(Predicate::top(k), chosen, nregs), sink);
  return out;
}

bool is_complete(const Sra& s) {
  const Sra sv = as_single_valued(s);
  Normalized n(sv, minterm_basis(sv));
  const MintermSet& basis = n.basis();
  for (std::uint32_t x = 0; x < n.size(); ++x) {
    const Abstraction theta = n.abstraction(x);
    RegSet read_regs = 0;
    std::vector<bool> fresh_terms(basis.size(), false);
    for (const auto& e : n.edges(x)) {
      if (e.kind == SvKind::Read) {
        read_regs |= reg_bit(e.reg);
      } else {
        fresh_terms[e.minterm] = true;
      }
    }
    for (RegId r = 0; r < theta.size(); ++r) {
      if (theta[r] != kNoMinterm && !has_reg(read_regs, r)) return false;
    }
    for (std::uint32_t m = 0; m < basis.size(); ++m) {
      // Elements of m not held by any register must have a fresh move.
      if (!fresh_terms[m] && basis[m].size_capped > count_matching_registers(theta, m)) return false;
    }
  }
  return true;
}

Sra complement(const Sra& s) {
  const auto d = check_determinism(s);
  if (!d.deterministic) throw std::invalid_argument("complement needs a deterministic automaton: " + d.reason);
  if (!is_complete(s)) throw std::invalid_argument("complement needs a complete automaton (see --complete)");
  Sra out = s;
  for (std::size_t q = 0; q < out.finals.size(); ++q) out.finals[q] = !s.finals[q];
  return out;
}

}  // namespace sra
