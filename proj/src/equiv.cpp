#include "sra/equiv.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>

#include "sra/boolean_ops.hpp"

namespace sra {

Correspondence correspondence_of(const Valuation& v1, const Valuation& v2) {
  auto check = [](const Valuation& v) {
    std::vector<Value> vals;
    for (Value x : v) {
      if (x != kEmptyRegister) vals.push_back(x);
    }
    std::sort(vals.begin(), vals.end());
    if (std::adjacent_find(vals.begin(), vals.end()) != vals.end())
      throw std::invalid_argument("valuation is not injective");
  };
  check(v1);
  check(v2);
  Correspondence sigma(v1.size(), -1);
  for (std::size_t r = 0; r < v1.size(); ++r) {
    if (v1[r] == kEmptyRegister) continue;
    for (std::size_t s = 0; s < v2.size(); ++s) {
      if (v2[s] == v1[r]) sigma[r] = static_cast<std::int8_t>(s);
    }
  }
  return sigma;
}

namespace {

constexpr int kNone = -1;

bool fresh_like(const NormEdge& e) { return e.kind != SvKind::Read; }
int stored_reg(const NormEdge& e) { return e.kind == SvKind::Fresh ? static_cast<int>(e.reg) : kNone; }

/// sigma[r -> s]: s loses its previous preimage, r its previous image.
Correspondence assign(Correspondence sigma, int r, int s) {
  if (s != kNone) {
    for (auto& x : sigma) {
      if (x == s) x = -1;
    }
  }
  if (r != kNone) sigma[r] = static_cast<std::int8_t>(s);
  return sigma;
}

Correspondence inverse(const Correspondence& sigma, std::size_t right_regs) {
  Correspondence inv(right_regs, -1);
  for (std::size_t r = 0; r < sigma.size(); ++r) {
    if (sigma[r] >= 0) inv[sigma[r]] = static_cast<std::int8_t>(r);
  }
  return inv;
}

struct Match {
  NormEdge edge;
  Correspondence sigma;
};

/// Calls fn(drive, matches) for every obligation of Def-7 style matching
/// the moves of node `a` by moves of node `b`; sigma maps a's registers to b's.
template <class Fn>
void obligations(Normalized& A, std::uint32_t a, Normalized& B, std::uint32_t b, const Correspondence& sigma, Fn&& fn) {
  const std::vector<NormEdge> drives = A.edges(a);
  const std::vector<NormEdge> moves = B.edges(b);
  const Abstraction theta_a = A.abstraction(a);
  const Abstraction theta_b = B.abstraction(b);
  std::vector<bool> in_image(theta_b.size(), false);
  for (auto s : sigma) {
    if (s >= 0) in_image[s] = true;
  }
  auto reads_of = [&](std::uint32_t s, std::uint32_t m, const Correspondence& next) {
    std::vector<Match> out;
    for (const auto& e : moves) {
      if (e.kind == SvKind::Read && e.reg == s && e.minterm == m) out.push_back({e, next});
    }
    return out;
  };
  auto fresh_of = [&](int r, std::uint32_t m) {
    std::vector<Match> out;
    for (const auto& e : moves) {
      if (fresh_like(e) && e.minterm == m) out.push_back({e, assign(sigma, r, stored_reg(e))});
    }
    return out;
  };
  for (const auto& d : drives) {
    const std::uint32_t m = d.minterm;
    if (d.kind == SvKind::Read) {
      const int s = sigma[d.reg];
      if (s >= 0) {
        fn(d, reads_of(static_cast<std::uint32_t>(s), m, sigma));
      } else {
        fn(d, fresh_of(static_cast<int>(d.reg), m));
      }
      continue;
    }
    const int r = stored_reg(d);
    std::size_t unrelated = 0;
    for (std::uint32_t s = 0; s < theta_b.size(); ++s) {
      if (in_image[s] || theta_b[s] != m) continue;
      ++unrelated;
      fn(d, reads_of(s, m, assign(sigma, r, static_cast<int>(s))));
    }
    // Registers related by sigma hold one value on both sides, so they
    // occupy a single element of m.
    if (count_matching_registers(theta_a, m) + unrelated < A.basis()[m].size_capped) fn(d, fresh_of(r, m));
  }
}

class Simulation {
 public:
  Simulation(Normalized& left, Normalized& right, const SimOptions& opt) : L_(left), R_(right), opt_(opt) {
    if (left.basis_ptr() != right.basis_ptr()) throw std::invalid_argument("simulation needs one shared minterm basis");
  }

  SimResult run() {
    const Correspondence sigma0 =
        correspondence_of(L_.automaton().initial_valuation, R_.automaton().initial_valuation);
    intern(L_.initial(), R_.initial(), sigma0, -1, {}, true);
    while (!work_.empty()) {
      const std::uint32_t t = work_.front();
      work_.pop_front();
      if (auto fail = process(t)) return *fail;
    }
    SimResult res;
    res.triples = n1_.size();
    res.holds = !bad_[0];
    if (!res.holds) res.reason = "no simulation relates the initial states";
    return res;
  }

 private:
  std::uint32_t intern(std::uint32_t a, std::uint32_t b, const Correspondence& sigma, int parent, SimStep via,
                       bool forced) {
    std::string key(reinterpret_cast<const char*>(&a), sizeof a);
    key.append(reinterpret_cast<const char*>(&b), sizeof b);
    key.append(reinterpret_cast<const char*>(sigma.data()), sigma.size());
    auto [it, fresh] = ids_.emplace(std::move(key), static_cast<std::uint32_t>(n1_.size()));
    const std::uint32_t id = it->second;
    if (fresh) {
      if (n1_.size() >= opt_.max_triples) throw std::length_error("simulation triple limit reached");
      n1_.push_back(a);
      n2_.push_back(b);
      sigma_.push_back(sigma);
      parent_.push_back(parent);
      via_.push_back(std::move(via));
      forced_.push_back(forced);
      bad_.push_back(false);
      watchers_.emplace_back();
      work_.push_back(id);
    } else if (forced && !forced_[id]) {
      forced_[id] = true;
      parent_[id] = parent;
      via_[id] = std::move(via);
    }
    return id;
  }

  std::vector<SimStep> path_to(std::uint32_t t) const {
    std::vector<SimStep> path;
    for (int x = static_cast<int>(t); parent_[x] >= 0; x = parent_[x]) path.push_back(via_[x]);
    std::reverse(path.begin(), path.end());
    return path;
  }

  std::optional<SimResult> fail(std::uint32_t t, std::string why, std::optional<SimStep> last) {
    if (forced_[t]) {
      SimResult res;
      res.holds = false;
      res.reason = std::move(why);
      res.trace = path_to(t);
      if (last) res.trace->push_back(*last);
      res.triples = n1_.size();
      return res;
    }
    mark_bad(t);
    return std::nullopt;
  }

  void mark_bad(std::uint32_t t) {
    std::vector<std::uint32_t> stack{t};
    while (!stack.empty()) {
      const std::uint32_t x = stack.back();
      stack.pop_back();
      if (bad_[x]) continue;
      bad_[x] = true;
      for (std::uint32_t o : watchers_[x]) {
        if (--alive_[o] == 0) stack.push_back(owner_[o]);
      }
    }
  }

  std::optional<SimResult> process(std::uint32_t t) {
    if (bad_[t]) return std::nullopt;
    const std::uint32_t a = n1_[t], b = n2_[t];
    if (L_.is_final(a) && !R_.is_final(b)) {
      return fail(t, "left state " + L_.name(a) + " is final, right state " + R_.name(b) + " is not", std::nullopt);
    }
    if (opt_.both_ways && R_.is_final(b) && !L_.is_final(a)) {
      return fail(t, "right state " + R_.name(b) + " is final, left state " + L_.name(a) + " is not", std::nullopt);
    }
    const Correspondence sigma = sigma_[t];
    struct Pending {
      SimStep step;
      std::vector<Match> matches;
      bool reversed;
    };
    std::vector<Pending> pending;
    obligations(L_, a, R_, b, sigma, [&](const NormEdge& d, std::vector<Match> ms) {
      pending.push_back({SimStep{d, std::nullopt}, std::move(ms), false});
    });
    if (opt_.both_ways) {
      const std::size_t left_regs = sigma.size();
      obligations(R_, b, L_, a, inverse(sigma, R_.abstraction(b).size()), [&](const NormEdge& d, std::vector<Match> ms) {
        for (auto& m : ms) m.sigma = inverse(m.sigma, left_regs);
        pending.push_back({SimStep{std::nullopt, d}, std::move(ms), true});
      });
    }
    for (auto& p : pending) {
      if (p.matches.empty()) {
        const NormEdge& d = p.reversed ? *p.step.right : *p.step.left;
        auto r = fail(t, std::string(p.reversed ? "right" : "left") + " move from " +
                             (p.reversed ? R_.name(b) : L_.name(a)) + " on minterm " + std::to_string(d.minterm) +
                             " has no counterpart",
                      p.step);
        if (r) return r;
        return std::nullopt;
      }
      std::vector<std::uint32_t> cands;
      std::vector<SimStep> steps;
      for (const auto& m : p.matches) {
        SimStep s = p.step;
        (p.reversed ? s.left : s.right) = m.edge;
        const std::uint32_t ta = p.reversed ? m.edge.to : p.step.left->to;
        const std::uint32_t tb = p.reversed ? p.step.right->to : m.edge.to;
        const auto id = intern(ta, tb, m.sigma, static_cast<int>(t), s, false);
        if (std::find(cands.begin(), cands.end(), id) == cands.end()) {
          cands.push_back(id);
          steps.push_back(s);
        }
      }
      if (cands.size() == 1 && forced_[t]) intern(n1_[cands[0]], n2_[cands[0]], sigma_[cands[0]], static_cast<int>(t), steps[0], true);
      const auto o = static_cast<std::uint32_t>(owner_.size());
      owner_.push_back(t);
      std::uint32_t alive = 0;
      for (auto c : cands) {
        if (bad_[c]) continue;
        ++alive;
        watchers_[c].push_back(o);
      }
      alive_.push_back(alive);
      if (alive == 0) {
        mark_bad(t);
        return std::nullopt;
      }
    }
    return std::nullopt;
  }

  Normalized& L_;
  Normalized& R_;
  SimOptions opt_;
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<std::uint32_t> n1_, n2_;
  std::vector<Correspondence> sigma_;
  std::vector<int> parent_;
  std::vector<SimStep> via_;
  std::vector<bool> forced_, bad_;
  std::vector<std::vector<std::uint32_t>> watchers_;
  std::vector<std::uint32_t> owner_, alive_;
  std::deque<std::uint32_t> work_;
};

SimResult simulate(const Sra& a, const Sra& b, bool both_ways) {
  const Sra sa = as_single_valued(a), sb = as_single_valued(b);
  const Basis basis = minterm_basis(sa, &sb);
  Normalized left(sa, basis), right(sb, basis);
  return n_simulation(left, right, {both_ways});
}

void require_deterministic(const Sra& s, const char* side) {
  const auto d = check_determinism(s);
  if (!d.deterministic) throw std::invalid_argument(std::string(side) + " automaton is not deterministic: " + d.reason);
}

}  // namespace

SimResult n_simulation(Normalized& left, Normalized& right, const SimOptions& opt) {
  return Simulation(left, right, opt).run();
}

SimResult n_similar(const Sra& a, const Sra& b) { return simulate(a, b, false); }
SimResult n_bisimilar(const Sra& a, const Sra& b) { return simulate(a, b, true); }

Word materialize_trace(const Normalized& left, const Normalized& right, const std::vector<SimStep>& trace) {
  Valuation w1 = left.automaton().initial_valuation;
  Valuation w2 = right.automaton().initial_valuation;
  Word word;
  for (const auto& step : trace) {
    Value a;
    if (step.left && step.left->kind == SvKind::Read) {
      a = w1[step.left->reg];
    } else if (step.right && step.right->kind == SvKind::Read) {
      a = w2[step.right->reg];
    } else {
      std::vector<Value> held;
      for (Value x : w1) {
        if (x != kEmptyRegister) held.push_back(x);
      }
      for (Value x : w2) {
        if (x != kEmptyRegister) held.push_back(x);
      }
      const std::uint32_t m = step.left ? step.left->minterm : step.right->minterm;
      const auto pick = left.basis()[m].conjunction.witness(held);
      if (!pick) throw std::logic_error("no element fresh on both sides");
      a = *pick;
    }
    if (step.left && step.left->kind == SvKind::Fresh) w1[step.left->reg] = a;
    if (step.right && step.right->kind == SvKind::Fresh) w2[step.right->reg] = a;
    word.push_back(a);
  }
  return word;
}

namespace {

InclusionResult decide(const Sra& a, const Sra& b, bool both_ways) {
  require_deterministic(a, "left");
  require_deterministic(b, "right");
  const Sra sa = both_ways ? complete(as_single_valued(a), false) : as_single_valued(a);
  const Sra sb = complete(as_single_valued(b), false);
  const Basis basis = minterm_basis(sa, &sb);
  Normalized left(sa, basis), right(sb, basis);
  const SimResult sim = n_simulation(left, right, {both_ways});
  InclusionResult res;
  res.triples = sim.triples;
  res.holds = sim.holds;
  if (sim.holds) return res;
  if (!sim.trace) throw std::logic_error("deterministic check failed without a trace");
  Word w = materialize_trace(left, right, *sim.trace);
  const bool in_a = membership(a, w), in_b = membership(b, w);
  if (both_ways ? in_a == in_b : !(in_a && !in_b)) throw std::logic_error("separating word does not separate");
  res.counterexample = std::move(w);
  return res;
}

}  // namespace

InclusionResult includes(const Sra& a, const Sra& b) { return decide(a, b, false); }
InclusionResult equivalent(const Sra& a, const Sra& b) { return decide(a, b, true); }

}  // namespace sra
