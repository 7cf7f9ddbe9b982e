#include "sra/single_valued.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace sra {

Label encode_read(Predicate guard, RegId r) { return {std::move(guard), reg_bit(r), 0, 0}; }

Label encode_fresh(Predicate guard, RegId r, std::size_t num_registers) {
  return {std::move(guard), 0, all_regs(num_registers), reg_bit(r)};
}

std::optional<SvLabel> classify(const Label& l, std::size_t num_registers) {
  if (l.I == 0 && l.U == 0 && reg_count(l.E) == 1)
    return SvLabel{SvKind::Read, static_cast<RegId>(std::countr_zero(l.E)), l.guard};
  if (num_registers > 0 && l.E == 0 && l.I == all_regs(num_registers) && reg_count(l.U) == 1)
    return SvLabel{SvKind::Fresh, static_cast<RegId>(std::countr_zero(l.U)), l.guard};
  return std::nullopt;
}

bool is_single_valued(const Sra& s) {
  std::set<Value> seen;
  for (Value v : s.initial_valuation) {
    if (v != kEmptyRegister && !seen.insert(v).second) return false;
  }
  return std::all_of(s.transitions.begin(), s.transitions.end(), [&](const Transition& t) {
    return classify(t.label, s.num_registers()).has_value();
  });
}

namespace {

/// Worklist over states (q, f).  `spare` adds one target register so that
/// unstored fresh symbols go into an unused register instead of a bullet.
class Translator {
 public:
  Translator(const Sra& s, bool spare, const TranslateOptions& opt)
      : s_(s), R_(s.num_registers()), P_(s.num_registers() + (spare ? 1 : 0)), spare_(spare),
        opt_(opt), out_(s.out_index()) {
    if (P_ > kMaxRegisters) throw std::length_error("too many registers for translation");
  }

  BulletSra run() {
    BulletSra b;
    b.algebra = s_.algebra;
    b.registers = s_.registers;
    if (spare_) {
      std::string name = "spare";
      while (std::find(b.registers.begin(), b.registers.end(), name) != b.registers.end()) name += "_";
      b.registers.push_back(name);
    }
    // Distinct initial values go to the lowest registers in value order;
    // empty registers get the following ones.
    std::vector<Value> values;
    for (Value v : s_.initial_valuation) {
      if (v != kEmptyRegister) values.push_back(v);
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    b.initial_valuation.assign(P_, kEmptyRegister);
    std::copy(values.begin(), values.end(), b.initial_valuation.begin());
    std::vector<std::uint8_t> f0(R_);
    std::size_t next_empty = values.size();
    RegSet filled0 = 0;
    for (std::size_t r = 0; r < R_; ++r) {
      const Value v = s_.initial_valuation[r];
      if (v == kEmptyRegister) {
        f0[r] = static_cast<std::uint8_t>(next_empty++);
      } else {
        f0[r] = static_cast<std::uint8_t>(std::lower_bound(values.begin(), values.end(), v) - values.begin());
        filled0 |= reg_bit(f0[r]);
      }
    }
    b.initial = intern(s_.initial, f0, filled0);
    while (!work_.empty()) {
      const StateId x = work_.front();
      work_.pop_front();
      queued_[x] = false;
      process(x, b);
    }
    for (std::size_t i = 0; i < base_.size(); ++i) {
      std::string name = s_.states[base_[i]] + "[";
      for (std::size_t r = 0; r < R_; ++r) {
        if (r) name += ",";
        name += std::to_string(fs_[i][r]);
      }
      b.states.push_back(name + "]");
      b.finals.push_back(s_.finals[base_[i]]);
    }
    return b;
  }

 private:
  StateId intern(StateId q, const std::vector<std::uint8_t>& f, RegSet filled) {
    std::string key(reinterpret_cast<const char*>(&q), sizeof q);
    key.append(f.begin(), f.end());
    auto [it, fresh] = ids_.emplace(std::move(key), static_cast<StateId>(base_.size()));
    if (fresh) {
      if (base_.size() >= opt_.max_states) throw std::length_error("single-valued translation too large");
      base_.push_back(q);
      fs_.push_back(f);
      filled_.push_back(filled);
      queued_.push_back(true);
      work_.push_back(it->second);
    } else if ((filled_[it->second] | filled) != filled_[it->second]) {
      filled_[it->second] |= filled;
      if (!queued_[it->second]) {
        queued_[it->second] = true;
        work_.push_back(it->second);
      }
    }
    return it->second;
  }

  void emit(BulletSra& b, StateId from, SvKind kind, RegId reg, std::uint32_t tidx, StateId to) {
    // Identical guards from the same source transition never repeat.
    if (!emitted_.insert({from, static_cast<int>(kind), reg, tidx, to}).second) return;
    b.transitions.push_back({from, SvLabel{kind, reg, s_.transitions[tidx].label.guard}, to});
  }

  void process(StateId x, BulletSra& b) {
    const StateId p = base_[x];
    const std::vector<std::uint8_t> f = fs_[x];
    const RegSet filled = filled_[x];
    std::vector<RegSet> pre(P_, 0);
    for (std::size_t r = 0; r < R_; ++r) pre[f[r]] |= reg_bit(static_cast<RegId>(r));
    for (std::uint32_t ti : out_[p]) {
      const Transition& t = s_.transitions[ti];
      const Label& l = t.label;
      auto updated = [&](RegId target) {
        std::vector<std::uint8_t> g = f;
        for (RegId u : regs_of(l.U)) g[u] = static_cast<std::uint8_t>(target);
        return g;
      };
      // (reg): the input equals the content of register y, which the
      // original registers pre[y] share.
      for (RegId y = 0; y < P_; ++y) {
        if (!has_reg(filled, y)) continue;  // y is empty here on every run
        const RegSet S = pre[y];
        if ((l.E & ~S) != 0 || (l.I & S) != 0) continue;
        const StateId to = intern(t.to, updated(y), filled);
        emit(b, x, SvKind::Read, y, ti, to);
      }
      if (l.E != 0) continue;
      if (l.U == 0 && !spare_) {
        // (nop)
        const StateId to = intern(t.to, f, filled);
        emit(b, x, SvKind::Bullet, 0, ti, to);
        continue;
      }
      // (fresh): least y whose sharers are all overwritten.
      RegId y = 0;
      while (y < P_ && (pre[y] & ~l.U) != 0) ++y;
      if (y == P_) throw std::logic_error("no register available for a fresh symbol");
      const StateId to = intern(t.to, updated(y), filled | reg_bit(y));
      emit(b, x, SvKind::Fresh, y, ti, to);
    }
  }

  const Sra& s_;
  std::size_t R_, P_;
  bool spare_;
  TranslateOptions opt_;
  std::vector<std::vector<std::uint32_t>> out_;
  std::unordered_map<std::string, StateId> ids_;
  std::vector<StateId> base_;
  std::vector<std::vector<std::uint8_t>> fs_;
  std::vector<RegSet> filled_;
  std::vector<bool> queued_;
  std::deque<StateId> work_;
  std::set<std::tuple<StateId, int, RegId, std::uint32_t, StateId>> emitted_;
};

Sra to_sra(const BulletSra& b) {
  Sra s;
  s.algebra = b.algebra;
  s.registers = b.registers;
  s.states = b.states;
  s.initial = b.initial;
  s.initial_valuation = b.initial_valuation;
  s.finals = b.finals;
  const std::size_t n = b.registers.size();
  for (const auto& e : b.transitions) {
    switch (e.label.kind) {
      case SvKind::Read: s.add_transition(e.from, encode_read(e.label.guard, e.label.reg), e.to); break;
      case SvKind::Fresh: s.add_transition(e.from, encode_fresh(e.label.guard, e.label.reg, n), e.to); break;
      case SvKind::Bullet: s.add_transition(e.from, {e.label.guard, 0, all_regs(n), 0}, e.to); break;
    }
  }
  return s;
}

}  // namespace

BulletSra translate_with_bullets(const Sra& s, const TranslateOptions& opt) {
  return Translator(s, false, opt).run();
}

Sra bullets_as_sra(const BulletSra& t) { return to_sra(t); }

Sra eliminate_bullet(const BulletSra& t, const TranslateOptions& opt) {
  return to_sra(Translator(to_sra(t), true, opt).run());
}

Sra to_single_valued(const Sra& s, const TranslateOptions& opt) {
  return to_sra(Translator(s, true, opt).run());
}

}  // namespace sra
