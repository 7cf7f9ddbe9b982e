#include "sra/normal.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "json.hpp"
#include "sra/json_io.hpp"

namespace sra {

namespace {

void collect_predicates(const Sra& s, std::vector<Predicate>& out) {
  for (const auto& t : s.transitions) out.push_back(t.label.guard);
  for (Value v : s.initial_valuation) {
    if (v != kEmptyRegister) out.push_back(Predicate::atom(s.algebra, v));
  }
}

}  // namespace

Basis minterm_basis(const Sra& s, const Sra* extra) {
  std::vector<Predicate> preds;
  collect_predicates(s, preds);
  std::size_t regs = s.num_registers();
  if (extra) {
    if (extra->algebra != s.algebra) throw std::invalid_argument("automata over different algebras");
    collect_predicates(*extra, preds);
    regs += extra->num_registers();
  }
  return std::make_shared<const MintermSet>(s.algebra, preds, regs + 2);
}

std::size_t count_matching_registers(const Abstraction& theta, std::uint32_t m) {
  if (m == kNoMinterm) return 0;
  return static_cast<std::size_t>(std::count(theta.begin(), theta.end(), m));
}

bool enabled(const MintermSet& basis, const Abstraction& theta, SvKind kind, RegId reg, std::uint32_t m) {
  if (m >= basis.size()) throw std::invalid_argument("minterm from another basis");
  switch (kind) {
    case SvKind::Read: return reg < theta.size() && theta[reg] == m;
    case SvKind::Fresh: return basis[m].size_capped > count_matching_registers(theta, m);
    case SvKind::Bullet: return basis[m].size_capped > 0;  // register-free input only
  }
  return false;
}

Normalized::Normalized(const Sra& single_valued, Basis basis, std::size_t max_nodes)
    : s_(single_valued), basis_(std::move(basis)), max_nodes_(max_nodes), out_(s_.out_index()) {
  const std::size_t nregs = s_.num_registers();
  for (const auto& t : s_.transitions) {
    auto l = classify(t.label, nregs);
    if (nregs == 0) l = SvLabel{SvKind::Bullet, 0, t.label.guard};
    if (!l) throw std::invalid_argument("normalization needs a single-valued automaton");
    auto src = basis_->source_index(t.label.guard);
    if (!src) throw std::invalid_argument("minterm basis does not cover a guard");
    labels_.push_back(*l);
    guard_source_.push_back(*src);
  }
  Abstraction theta0(nregs, kNoMinterm);
  for (std::size_t r = 0; r < nregs; ++r) {
    const Value v = s_.initial_valuation[r];
    if (v != kEmptyRegister) theta0[r] = basis_->term_of(v);
  }
  intern(s_.initial, std::move(theta0));
}

std::uint32_t Normalized::intern(StateId q, Abstraction theta) {
  std::string key(reinterpret_cast<const char*>(&q), sizeof q);
  key.append(reinterpret_cast<const char*>(theta.data()), theta.size() * sizeof(std::uint32_t));
  auto [it, fresh] = ids_.emplace(std::move(key), static_cast<std::uint32_t>(base_.size()));
  if (fresh) {
    if (base_.size() >= max_nodes_) throw std::length_error("normalized automaton too large");
    base_.push_back(q);
    theta_.push_back(std::move(theta));
    edges_.emplace_back();
  }
  return it->second;
}

std::string Normalized::name(std::uint32_t n) const {
  std::string out = s_.states[base_[n]] + "{";
  for (std::size_t r = 0; r < theta_[n].size(); ++r) {
    if (r) out += ",";
    out += theta_[n][r] == kNoMinterm ? "_" : std::to_string(theta_[n][r]);
  }
  return out + "}";
}

const std::vector<NormEdge>& Normalized::edges(std::uint32_t n) {
  if (edges_[n]) return *edges_[n];
  std::vector<NormEdge> out;
  const StateId p = base_[n];
  for (std::uint32_t ti : out_[p]) {
    const SvLabel& l = labels_[ti];
    const std::size_t src = guard_source_[ti];
    const StateId to = s_.transitions[ti].to;
    if (l.kind == SvKind::Read) {
      const std::uint32_t m = theta_[n][l.reg];
      if (m == kNoMinterm || !basis_->positive_in(m, src)) continue;
      const std::uint32_t target = intern(to, theta_[n]);
      out.push_back({SvKind::Read, l.reg, m, target, ti});
      continue;
    }
    for (std::uint32_t m : basis_->terms_under(src)) {
      if (!enabled(*basis_, theta_[n], l.kind, l.reg, m)) continue;
      Abstraction next = theta_[n];
      if (l.kind == SvKind::Fresh) next[l.reg] = m;
      const std::uint32_t target = intern(to, std::move(next));
      out.push_back({l.kind, l.reg, m, target, ti});
    }
  }
  edges_[n] = std::move(out);
  return *edges_[n];
}

void Normalized::explore_all() {
  for (std::uint32_t n = 0; n < size(); ++n) edges(n);
}

Sra normalize(const Sra& s, const Basis& basis) {
  if (s.num_registers() > 0 && !is_single_valued(s)) throw std::invalid_argument("normalize needs a single-valued automaton");
  Normalized n(s, basis);
  n.explore_all();
  Sra out;
  out.algebra = s.algebra;
  out.registers = s.registers;
  out.initial = 0;
  out.initial_valuation = s.initial_valuation;
  for (std::uint32_t i = 0; i < n.size(); ++i) {
    out.states.push_back(n.name(i));
    out.finals.push_back(n.is_final(i));
  }
  const std::size_t nregs = s.num_registers();
  for (std::uint32_t i = 0; i < n.size(); ++i) {
    for (const auto& e : n.edges(i)) {
      const Predicate& g = basis->terms()[e.minterm].conjunction;
      Label l{g, 0, 0, 0};
      if (e.kind == SvKind::Read) l = encode_read(g, e.reg);
      if (e.kind == SvKind::Fresh) l = encode_fresh(g, e.reg, nregs);
      out.add_transition(i, l, e.to);
    }
  }
  return out;
}

Sra normalize(const Sra& s) { return normalize(s, minterm_basis(s)); }

std::string normalized_json(const Sra& s) {
  const Basis basis = minterm_basis(s);
  Normalized n(s, basis);
  n.explore_all();
  const Sra out = normalize(s, basis);
  auto doc = nlohmann::ordered_json::parse(to_json(out));
  nlohmann::ordered_json abs = nlohmann::ordered_json::object();
  for (std::uint32_t i = 0; i < n.size(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::object();
    for (std::size_t r = 0; r < s.num_registers(); ++r) {
      const std::uint32_t m = n.abstraction(i)[r];
      if (m == kNoMinterm) {
        row[s.registers[r]] = nullptr;
      } else {
        row[s.registers[r]] = basis->terms()[m].conjunction.to_string();
      }
    }
    abs[out.states[i]] = std::move(row);
  }
  doc["abstractions"] = std::move(abs);
  return doc.dump(2) + "\n";
}

Word materialize_path(const Normalized& n, const std::vector<NormEdge>& path) {
  Valuation v = n.automaton().initial_valuation;
  Word w;
  for (const auto& e : path) {
    if (e.kind == SvKind::Read) {
      w.push_back(v[e.reg]);
      continue;
    }
    if (e.kind == SvKind::Bullet) {
      w.push_back(*n.basis()[e.minterm].conjunction.witness());
      continue;
    }
    std::vector<Value> held;
    for (Value x : v) {
      if (x != kEmptyRegister) held.push_back(x);
    }
    const auto a = n.basis()[e.minterm].conjunction.witness(held);
    if (!a) throw std::logic_error("fresh minterm has no free element");
    w.push_back(*a);
    v[e.reg] = *a;
  }
  return w;
}

Sra as_single_valued(const Sra& s) {
  return s.num_registers() == 0 || is_single_valued(s) ? s : to_single_valued(s);
}

EmptinessResult check_emptiness(const Sra& s) {
  const Sra sv = as_single_valued(s);
  Normalized n(sv, minterm_basis(sv));
  std::vector<std::pair<std::uint32_t, NormEdge>> parent(1, {kNoMinterm, NormEdge{}});
  std::vector<bool> seen(1, true);
  std::deque<std::uint32_t> work{n.initial()};
  EmptinessResult res;
  while (!work.empty()) {
    const std::uint32_t x = work.front();
    work.pop_front();
    ++res.nodes_visited;
    if (n.is_final(x)) {
      std::vector<NormEdge> path;
      for (std::uint32_t y = x; parent[y].first != kNoMinterm; y = parent[y].first) path.push_back(parent[y].second);
      std::reverse(path.begin(), path.end());
      Word w = materialize_path(n, path);
      if (!membership(s, w)) throw std::logic_error("emptiness witness rejected by the automaton");
      res.empty = false;
      res.witness = std::move(w);
      return res;
    }
    for (const auto& e : n.edges(x)) {
      if (e.to >= seen.size()) {
        seen.resize(n.size(), false);
        parent.resize(n.size());
      }
      if (seen[e.to]) continue;
      seen[e.to] = true;
      parent[e.to] = {x, e};
      work.push_back(e.to);
    }
  }
  return res;
}

namespace {

// Over-approximates the values each register can hold: its initial value
// plus whatever the storing transitions accept, iterated to a fixpoint.
std::vector<Predicate> register_contents(const Sra& s) {
  std::vector<Predicate> content;
  for (RegId r = 0; r < s.num_registers(); ++r) {
    const Value v = s.initial_valuation[r];
    content.push_back(v == kEmptyRegister ? Predicate::bottom(s.algebra) : Predicate::atom(s.algebra, v));
  }
  const auto accepted = [&](const Label& l) {
    Predicate g = l.guard;
    for (RegId e = 0; e < s.num_registers(); ++e) {
      if (l.E & reg_bit(e)) g = g & content[e];
    }
    return g;
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& t : s.transitions) {
      if (!t.label.U) continue;
      const Predicate g = accepted(t.label);
      for (RegId r = 0; r < s.num_registers(); ++r) {
        if (!(t.label.U & reg_bit(r))) continue;
        const Predicate grown = content[r] | g;
        if (!grown.equivalent(content[r])) {
          content[r] = grown;
          changed = true;
        }
      }
    }
  }
  return content;
}

// Sufficient condition: no two transitions leaving one state can fire on the
// same letter and lead to different configurations, for any valuation within
// the register contents.
bool pairwise_disjoint(const Sra& s) {
  const auto content = register_contents(s);
  const auto out = s.out_index();
  for (const auto& ts : out) {
    for (std::size_t i = 0; i < ts.size(); ++i) {
      for (std::size_t j = i + 1; j < ts.size(); ++j) {
        const auto& a = s.transitions[ts[i]];
        const auto& b = s.transitions[ts[j]];
        if (a.to == b.to && a.label.U == b.label.U) continue;
        const RegSet eq = a.label.E | b.label.E;
        if (eq & (a.label.I | b.label.I)) continue;
        Predicate g = a.label.guard & b.label.guard;
        for (RegId e = 0; e < s.num_registers(); ++e) {
          if (eq & reg_bit(e)) g = g & content[e];
        }
        if (g.is_sat()) return false;
      }
    }
  }
  return true;
}

}  // namespace

DeterminismResult check_determinism(const Sra& s) {
  if (pairwise_disjoint(s)) return {};
  const Sra sv = as_single_valued(s);
  Normalized n(sv, minterm_basis(sv));
  for (std::uint32_t x = 0; x < n.size(); ++x) {
    std::map<std::uint32_t, std::vector<NormEdge>> by_guard;
    for (const auto& e : n.edges(x)) by_guard[e.minterm].push_back(e);
    for (const auto& [m, es] : by_guard) {
      for (std::size_t i = 0; i < es.size(); ++i) {
        for (std::size_t j = i + 1; j < es.size(); ++j) {
          const auto& a = es[i];
          const auto& b = es[j];
          const bool same_label = a.kind == b.kind && a.reg == b.reg;
          const auto describe = [&](const NormEdge& e) -> std::string {
            if (e.kind == SvKind::Bullet) return "guarded";
            return std::string(e.kind == SvKind::Read ? "read(" : "fresh(") + sv.registers[e.reg] + ")";
          };
          std::string why;
          if (same_label && a.to != b.to) {
            why = "two " + describe(a) + " transitions";
          } else if (a.kind == SvKind::Fresh && b.kind == SvKind::Fresh && a.reg != b.reg) {
            why = describe(a) + " and " + describe(b);
          }
          if (!why.empty()) {
            return {false, why + " on guard " + n.basis()[m].conjunction.to_string() + " at state " +
                               sv.states[n.base(x)]};
          }
        }
      }
    }
  }
  return {};
}

}  // namespace sra
