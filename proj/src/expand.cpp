#include "sra/expand.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>
#include <unordered_set>

namespace sra {

namespace {

// Flat store of configurations [state, v0, v1, ...] with hashed lookup.
class ConfigTable {
 public:
  explicit ConfigTable(std::size_t registers) : stride_(registers + 1), index_(64, Hash{this}, Eq{this}) {}

  std::size_t size() const { return count_; }
  const Value* at(std::uint32_t id) const { return &arena_[std::size_t{id} * stride_]; }

  /// Id of the configuration, adding it when new.
  std::pair<std::uint32_t, bool> intern(StateId q, const Value* v) {
    arena_.push_back(q);
    arena_.insert(arena_.end(), v, v + stride_ - 1);
    const auto id = static_cast<std::uint32_t>(count_);
    auto [it, added] = index_.insert(id);
    if (added) {
      ++count_;
    } else {
      arena_.resize(arena_.size() - stride_);
    }
    return {*it, added};
  }

 private:
  struct Hash {
    const ConfigTable* t;
    std::size_t operator()(std::uint32_t id) const {
      const Value* p = t->at(id);
      std::uint64_t h = 1469598103934665603ull;
      for (std::size_t i = 0; i < t->stride_; ++i) {
        h ^= static_cast<std::uint64_t>(p[i]);
        h *= 1099511628211ull;
        h ^= h >> 29;
      }
      return h;
    }
  };
  struct Eq {
    const ConfigTable* t;
    bool operator()(std::uint32_t a, std::uint32_t b) const {
      return std::equal(t->at(a), t->at(a) + t->stride_, t->at(b));
    }
  };

  std::size_t stride_;
  std::vector<Value> arena_;
  std::size_t count_ = 0;
  std::unordered_set<std::uint32_t, Hash, Eq> index_;
};

// A letter set moving src to dst: either one letter, or a transition's
// restricted guard minus the values of the excluded registers of src.
struct Move {
  std::uint32_t src, dst;
  std::uint32_t bulk;  // transition index, or kSingle
  Value letter;
};
constexpr std::uint32_t kSingle = UINT32_MAX;

Predicate from_set(AlgebraKind kind, const ElemSet& set) {
  std::vector<Predicate> parts;
  for (const auto& [lo, hi] : set.runs()) parts.push_back(lo == hi ? Predicate::atom(kind, lo) : Predicate::interval(kind, lo, hi));
  if (parts.empty()) return Predicate::bottom(kind);
  if (parts.size() == 1) return parts[0];
  return Predicate::build(Connective::Or, parts);
}

std::string show(Value v, AlgebraKind kind) {
  if (v == kEmptyRegister) return "#";
  if (kind == AlgebraKind::Integer) return std::to_string(v);
  return printable(Word{v}, kind);
}

}  // namespace

Expansion expand_to_sfa(const Sra& s, const Predicate& domain, const ExpandLimits& limits) {
  if (domain.kind() != s.algebra) throw std::invalid_argument("domain and automaton use different algebras");
  const ElemSet& dom = domain.denotation();
  if (dom.count_capped(kMaxDomain + 1) > kMaxDomain) throw std::invalid_argument("domain is infinite or too large");

  const std::size_t R = s.num_registers();
  const auto out = s.out_index();
  // Restricted guards, and their members for transitions that store.
  std::vector<ElemSet> guard_dom;
  std::vector<std::vector<Value>> guard_members(s.transitions.size());
  for (std::size_t t = 0; t < s.transitions.size(); ++t) {
    guard_dom.push_back(s.transitions[t].label.guard.denotation() & dom);
    if (s.transitions[t].label.U && !s.transitions[t].label.E) {
      guard_dom.back().for_each([&](Value x) {
        guard_members[t].push_back(x);
        return true;
      });
    }
  }

  Expansion res;
  ConfigTable table(R);
  std::vector<Move> moves;
  table.intern(s.initial, s.initial_valuation.data());
  std::vector<Value> next(R);

  const auto excluded = [&](const Value* v, RegSet I, Value a) {
    for (RegId r = 0; r < R; ++r) {
      if ((I & reg_bit(r)) && v[r] == a) return true;
    }
    return false;
  };
  // Returns false once the state limit is passed.
  const auto reach = [&](std::uint32_t src, StateId to, const Value* v, RegSet U, Value a, std::uint32_t bulk) {
    std::copy(v, v + R, next.begin());
    for (RegId r = 0; r < R; ++r) {
      if (U & reg_bit(r)) next[r] = a;
    }
    const auto [dst, added] = table.intern(to, next.data());
    moves.push_back({src, dst, bulk, a});
    return !added || table.size() <= limits.max_states;
  };

  for (std::uint32_t id = 0; id < table.size() && !res.overflow; ++id) {
    const StateId q = static_cast<StateId>(table.at(id)[0]);
    std::vector<Value> v(table.at(id) + 1, table.at(id) + 1 + R);
    for (std::uint32_t ti : out[q]) {
      const Label& l = s.transitions[ti].label;
      const StateId to = s.transitions[ti].to;
      std::optional<Value> forced;
      bool dead = false;
      for (RegId r = 0; r < R; ++r) {
        if (!(l.E & reg_bit(r))) continue;
        if (v[r] == kEmptyRegister || (forced && *forced != v[r])) dead = true;
        forced = v[r];
      }
      if (dead) continue;
      bool ok = true;
      if (forced) {
        if (guard_dom[ti].contains(*forced) && !excluded(v.data(), l.I, *forced)) ok = reach(id, to, v.data(), l.U, *forced, kSingle);
      } else if (!l.U) {
        ok = reach(id, to, v.data(), 0, 0, ti);
      } else {
        for (Value a : guard_members[ti]) {
          if (excluded(v.data(), l.I, a)) continue;
          if (!(ok = reach(id, to, v.data(), l.U, a, kSingle))) break;
        }
      }
      if (!ok) {
        res.overflow = true;
        break;
      }
    }
  }

  res.states = table.size();
  std::unordered_set<Value> held;
  for (std::uint32_t id = 0; id < table.size(); ++id) {
    for (std::size_t r = 0; r < R; ++r) {
      if (table.at(id)[1 + r] != kEmptyRegister) held.insert(table.at(id)[1 + r]);
    }
  }
  res.register_values = held.size();
  if (res.overflow) return res;

  Sra sfa;
  sfa.algebra = s.algebra;
  sfa.initial = 0;
  for (std::uint32_t id = 0; id < table.size(); ++id) {
    const Value* c = table.at(id);
    std::string name = s.states[c[0]];
    if (R > 0) {
      name += "[";
      for (std::size_t r = 0; r < R; ++r) name += (r ? "," : "") + show(c[1 + r], s.algebra);
      name += "]";
    }
    sfa.states.push_back(std::move(name));
    sfa.finals.push_back(s.finals[c[0]]);
  }
  std::sort(moves.begin(), moves.end(), [](const Move& a, const Move& b) {
    return std::tie(a.src, a.dst, a.bulk, a.letter) < std::tie(b.src, b.dst, b.bulk, b.letter);
  });
  for (std::size_t i = 0; i < moves.size();) {
    std::size_t j = i;
    ElemSet letters = ElemSet::empty(s.algebra);
    std::vector<Value> singles;
    for (; j < moves.size() && moves[j].src == moves[i].src && moves[j].dst == moves[i].dst; ++j) {
      const Move& m = moves[j];
      if (m.bulk == kSingle) {
        singles.push_back(m.letter);
        continue;
      }
      ElemSet part = guard_dom[m.bulk];
      const Value* v = table.at(m.src) + 1;
      for (RegId r = 0; r < R; ++r) {
        if ((s.transitions[m.bulk].label.I & reg_bit(r)) && v[r] != kEmptyRegister)
          part = part.minus(ElemSet::single(s.algebra, v[r]));
      }
      letters = letters | part;
    }
    // Sorted singles fold into runs before touching the set.
    for (std::size_t a = 0; a < singles.size();) {
      std::size_t b = a;
      while (b + 1 < singles.size() && singles[b + 1] <= singles[b] + 1) ++b;
      letters = letters | ElemSet::interval(s.algebra, singles[a], singles[b]);
      a = b + 1;
    }
    if (!letters.is_empty()) sfa.add_transition(moves[i].src, {from_set(s.algebra, letters), 0, 0, 0}, moves[i].dst);
    i = j;
  }
  res.transitions = sfa.transitions.size();
  res.sfa = std::move(sfa);
  return res;
}

SizeRow size_report(const std::string& name, const Sra& s, const Expansion& e) {
  SizeRow row;
  row.name = name;
  row.sra_states = s.num_states();
  row.sra_transitions = s.transitions.size();
  row.registers = s.num_registers() + 1;
  row.register_domain = e.register_values;
  if (!e.overflow) {
    row.sfa_states = e.states;
    row.sfa_transitions = e.transitions;
  }
  return row;
}

std::string size_csv_header() { return "name,sra_states,sra_tr,registers,reg_domain,sfa_states,sfa_tr"; }

std::string to_csv(const SizeRow& row) {
  const auto opt = [](const std::optional<std::size_t>& x) { return x ? std::to_string(*x) : std::string("---"); };
  return row.name + "," + std::to_string(row.sra_states) + "," + std::to_string(row.sra_transitions) + "," +
         std::to_string(row.registers) + "," + std::to_string(row.register_domain) + "," + opt(row.sfa_states) + "," +
         opt(row.sfa_transitions);
}

}  // namespace sra
