#include "sra/regex.hpp"

#include <algorithm>
#include <optional>
#include <set>

namespace sra {

namespace {

constexpr auto kU = AlgebraKind::Unicode;

Predicate range(Value lo, Value hi) { return Predicate::interval(kU, lo, hi); }
Predicate any_of(const std::vector<Predicate>& ps) {
  if (ps.empty()) return Predicate::bottom(kU);
  if (ps.size() == 1) return ps[0];
  return Predicate::build(Connective::Or, ps);
}
Predicate digit() { return range('0', '9'); }
Predicate space() { return any_of({range('\t', '\r'), Predicate::atom(kU, ' ')}); }
Predicate word() { return any_of({range('0', '9'), range('A', 'Z'), range('a', 'z'), Predicate::atom(kU, '_')}); }

class Parser {
 public:
  explicit Parser(std::string_view pattern) : text_(utf8_decode(pattern)) {}

  RegexAst run() {
    RegexAst ast;
    ast.root = alternation();
    if (!done()) fail(peek() == ')' ? "unbalanced ')'" : "unexpected character");
    ast.groups = groups_;
    return ast;
  }

 private:
  bool done() const { return pos_ >= text_.size(); }
  Value peek() const { return text_[pos_]; }
  [[noreturn]] void fail(const std::string& what) const { throw RegexError(what, pos_); }

  RegexNode alternation() {
    std::vector<RegexNode> branches{concatenation()};
    while (!done() && peek() == '|') {
      ++pos_;
      branches.push_back(concatenation());
    }
    if (branches.size() == 1) return std::move(branches[0]);
    RegexNode n;
    n.kind = RegexNode::Kind::Alt;
    n.children = std::move(branches);
    return n;
  }

  RegexNode concatenation() {
    RegexNode n;
    n.kind = RegexNode::Kind::Concat;
    while (!done() && peek() != '|' && peek() != ')') n.children.push_back(quantified());
    if (n.children.empty()) return RegexNode{};
    if (n.children.size() == 1) return std::move(n.children[0]);
    return n;
  }

  std::optional<int> number() {
    const std::size_t start = pos_;
    int v = 0;
    while (!done() && peek() >= '0' && peek() <= '9') {
      v = v * 10 + static_cast<int>(peek() - '0');
      if (v > 10000) fail("repetition count too large");
      ++pos_;
    }
    if (pos_ == start) return std::nullopt;
    return v;
  }

  RegexNode quantified() {
    RegexNode n = atom();
    while (!done()) {
      const Value c = peek();
      RegexNode q;
      if (c == '*' || c == '+' || c == '?') {
        ++pos_;
        q.kind = c == '*' ? RegexNode::Kind::Star : c == '+' ? RegexNode::Kind::Plus : RegexNode::Kind::Optional;
      } else if (c == '{') {
        ++pos_;
        q.kind = RegexNode::Kind::Repeat;
        auto lo = number();
        if (!lo) fail("expected a repetition count");
        q.min = q.max = *lo;
        if (!done() && peek() == ',') {
          ++pos_;
          auto hi = number();
          q.max = hi ? *hi : -1;
          if (hi && *hi < *lo) fail("repetition bounds out of order");
        }
        if (done() || peek() != '}') fail("expected '}'");
        ++pos_;
      } else {
        break;
      }
      q.children.push_back(std::move(n));
      n = std::move(q);
    }
    return n;
  }

  RegexNode symbol(Predicate p) {
    RegexNode n;
    n.kind = RegexNode::Kind::Symbol;
    n.symbol = std::move(p);
    return n;
  }

  std::optional<Predicate> class_escape(Value c) {
    switch (c) {
      case 'd': return digit();
      case 'D': return !digit();
      case 's': return space();
      case 'S': return !space();
      case 'w': return word();
      case 'W': return !word();
      default: return std::nullopt;
    }
  }

  Value control_escape(Value c) {
    switch (c) {
      case 't': return '\t';
      case 'n': return '\n';
      case 'r': return '\r';
      case 'f': return '\f';
      case 'v': return '\v';
      case '0': return 0;
      default: break;
    }
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9')) fail("unknown escape");
    return c;
  }

  RegexNode atom() {
    const Value c = peek();
    switch (c) {
      case '(': {
        ++pos_;
        RegexNode g;
        g.kind = RegexNode::Kind::Group;
        if (pos_ + 1 < text_.size() && peek() == '?' && text_[pos_ + 1] == ':') {
          pos_ += 2;
          g.capturing = false;
        } else {
          g.group = ++groups_;
        }
        g.children.push_back(alternation());
        if (done() || peek() != ')') fail("missing ')'");
        ++pos_;
        if (g.capturing) closed_.insert(g.group);
        return g;
      }
      case '[': return char_class();
      case '.': ++pos_; return symbol(!Predicate::atom(kU, '\n'));
      case '*': case '+': case '?': case '{': fail("nothing to repeat");
      case '\\': {
        ++pos_;
        if (done()) fail("trailing backslash");
        const Value e = peek();
        if (e >= '1' && e <= '9') {
          const int g = static_cast<int>(e - '0');
          if (!closed_.count(g)) fail("back-reference to group " + std::to_string(g) + " before it closes");
          ++pos_;
          RegexNode b;
          b.kind = RegexNode::Kind::Backref;
          b.group = g;
          return b;
        }
        ++pos_;
        if (auto p = class_escape(e)) return symbol(*p);
        return symbol(Predicate::atom(kU, control_escape(e)));
      }
      default: ++pos_; return symbol(Predicate::atom(kU, c));
    }
  }

  Value class_char() {
    if (done()) fail("unterminated class");
    Value c = peek();
    ++pos_;
    if (c != '\\') return c;
    if (done()) fail("trailing backslash");
    c = peek();
    ++pos_;
    return control_escape(c);
  }

  RegexNode char_class() {
    ++pos_;  // '['
    bool negated = false;
    if (!done() && peek() == '^') {
      negated = true;
      ++pos_;
    }
    std::vector<Predicate> parts;
    bool first = true;
    while (true) {
      if (done()) fail("unterminated class");
      if (peek() == ']' && !first) break;
      first = false;
      if (peek() == '\\' && pos_ + 1 < text_.size()) {
        if (auto p = class_escape(text_[pos_ + 1])) {
          pos_ += 2;
          parts.push_back(*p);
          continue;
        }
      }
      const Value lo = class_char();
      if (!done() && peek() == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] != ']') {
        ++pos_;
        const Value hi = class_char();
        if (hi < lo) fail("class range out of order");
        parts.push_back(range(lo, hi));
      } else {
        parts.push_back(Predicate::atom(kU, lo));
      }
    }
    ++pos_;  // ']'
    Predicate p = any_of(parts);
    return symbol(negated ? !p : p);
  }

  std::vector<Value> text_;
  std::size_t pos_ = 0;
  int groups_ = 0;
  std::set<int> closed_;
};

// ---- compilation --------------------------------------------------------

void collect_refs(const RegexNode& n, std::set<int>& refs) {
  if (n.kind == RegexNode::Kind::Backref) refs.insert(n.group);
  for (const auto& c : n.children) collect_refs(c, refs);
}

class Compiler {
 public:
  explicit Compiler(const RegexAst& ast) : ast_(ast) {
    collect_refs(ast.root, refs_);
    find_groups(ast.root);
  }

  CompiledPattern run() {
    CompiledPattern out;
    Sra& s = out.sra;
    s.algebra = kU;
    for (int g : refs_) {
      const auto len = group_length_.at(g);
      std::vector<RegId> regs;
      for (int j = 0; j < len; ++j) {
        regs.push_back(static_cast<RegId>(s.registers.size()));
        s.registers.push_back("g" + std::to_string(g) + "_" + std::to_string(j));
      }
      group_base_[g] = regs.empty() ? 0 : regs[0];
      out.group_registers[g] = regs;
    }
    if (s.registers.size() > kMaxRegisters) throw std::invalid_argument("pattern needs more than 64 registers");
    s.initial_valuation.assign(s.registers.size(), kEmptyRegister);
    const Frag f = build(ast_.root, {});
    s.states.push_back("q0");
    s.finals.push_back(f.nullable);
    for (std::size_t p = 0; p < positions_.size(); ++p) {
      s.states.push_back("q" + std::to_string(p + 1));
      s.finals.push_back(false);
    }
    for (int p : f.last) s.finals[p + 1] = true;
    s.initial = 0;
    for (int p : f.first) s.add_transition(0, positions_[p], static_cast<StateId>(p + 1));
    for (const auto& [a, b] : follow_) s.add_transition(static_cast<StateId>(a + 1), positions_[b], static_cast<StateId>(b + 1));
    if (auto errors = validate(s); !errors.empty()) throw std::logic_error("compiled pattern is malformed: " + errors[0]);
    return out;
  }

 private:
  struct Frag {
    bool nullable = true;
    std::vector<int> first, last;
  };

  static std::optional<int> fixed_length(const RegexNode& n, const std::map<int, int>& groups) {
    using K = RegexNode::Kind;
    switch (n.kind) {
      case K::Empty: return 0;
      case K::Symbol: return 1;
      case K::Backref: {
        auto it = groups.find(n.group);
        if (it == groups.end() || it->second < 0) return std::nullopt;
        return it->second;
      }
      case K::Group: return fixed_length(n.children[0], groups);
      case K::Concat: {
        int total = 0;
        for (const auto& c : n.children) {
          auto l = fixed_length(c, groups);
          if (!l) return std::nullopt;
          total += *l;
        }
        return total;
      }
      case K::Alt: {
        std::optional<int> len;
        for (const auto& c : n.children) {
          auto l = fixed_length(c, groups);
          if (!l || (len && *len != *l)) return std::nullopt;
          len = l;
        }
        return len;
      }
      case K::Repeat: {
        auto l = fixed_length(n.children[0], groups);
        if (!l) return std::nullopt;
        if (*l == 0) return 0;
        if (n.min != n.max) return std::nullopt;
        return *l * n.min;
      }
      case K::Star:
      case K::Plus:
      case K::Optional: {
        auto l = fixed_length(n.children[0], groups);
        if (l && *l == 0) return 0;
        return std::nullopt;
      }
    }
    return std::nullopt;
  }

  void find_groups(const RegexNode& n) {
    for (const auto& c : n.children) find_groups(c);
    if (n.kind == RegexNode::Kind::Group && n.capturing) {
      auto l = fixed_length(n.children[0], group_length_);
      group_length_[n.group] = l ? *l : -1;
      if (refs_.count(n.group) && !l)
        throw std::invalid_argument("group " + std::to_string(n.group) +
                                    " is referenced but does not have a fixed length");
    }
  }

  int add_position(Label l) {
    positions_.push_back(std::move(l));
    return static_cast<int>(positions_.size()) - 1;
  }

  static RegSet stores_at(const std::vector<RegId>& active, int offset) {
    RegSet u = 0;
    for (RegId base : active) u |= reg_bit(base + static_cast<RegId>(offset));
    return u;
  }

  Frag single(int p) {
    Frag f;
    f.nullable = false;
    f.first = f.last = {p};
    return f;
  }

  Frag seq(Frag a, const Frag& b) {
    for (int x : a.last) {
      for (int y : b.first) follow_.insert({x, y});
    }
    Frag f;
    f.nullable = a.nullable && b.nullable;
    f.first = a.first;
    if (a.nullable) f.first.insert(f.first.end(), b.first.begin(), b.first.end());
    f.last = b.last;
    if (b.nullable) f.last.insert(f.last.end(), a.last.begin(), a.last.end());
    return f;
  }

  Frag loop(Frag f) {
    for (int x : f.last) {
      for (int y : f.first) follow_.insert({x, y});
    }
    return f;
  }

  std::vector<RegId> shifted(const std::vector<RegId>& active, int by) {
    std::vector<RegId> out;
    for (RegId r : active) out.push_back(r + static_cast<RegId>(by));
    return out;
  }

  /// `active`: for each enclosing referenced group, the register for the
  /// next position's offset.
  Frag build(const RegexNode& n, const std::vector<RegId>& active) {
    using K = RegexNode::Kind;
    switch (n.kind) {
      case K::Empty: return Frag{};
      case K::Symbol:
        return single(add_position({n.symbol, 0, 0, stores_at(active, 0)}));
      case K::Backref: {
        Frag f;
        const int len = group_length_.at(n.group);
        for (int j = 0; j < len; ++j) {
          const RegId r = group_base_.at(n.group) + static_cast<RegId>(j);
          f = seq(std::move(f), single(add_position({Predicate::top(kU), reg_bit(r), 0, stores_at(active, j)})));
        }
        return f;
      }
      case K::Group: {
        std::vector<RegId> inner = active;
        if (n.capturing && refs_.count(n.group)) inner.push_back(group_base_.at(n.group));
        return build(n.children[0], inner);
      }
      case K::Concat: {
        Frag f;
        int offset = 0;
        for (const auto& c : n.children) {
          f = seq(std::move(f), build(c, shifted(active, offset)));
          if (!active.empty()) offset += *fixed_length(c, group_length_);
        }
        return f;
      }
      case K::Alt: {
        Frag f;
        f.nullable = false;
        for (const auto& c : n.children) {
          Frag g = build(c, active);
          f.nullable = f.nullable || g.nullable;
          f.first.insert(f.first.end(), g.first.begin(), g.first.end());
          f.last.insert(f.last.end(), g.last.begin(), g.last.end());
        }
        return f;
      }
      case K::Star: {
        Frag f = loop(build(n.children[0], active));
        f.nullable = true;
        return f;
      }
      case K::Plus: return loop(build(n.children[0], active));
      case K::Optional: {
        Frag f = build(n.children[0], active);
        f.nullable = true;
        return f;
      }
      case K::Repeat: {
        const int step = active.empty() ? 0 : *fixed_length(n.children[0], group_length_);
        Frag f;
        int i = 0;
        for (; i < n.min; ++i) f = seq(std::move(f), build(n.children[0], shifted(active, i * step)));
        if (n.max < 0) {
          Frag tail = loop(build(n.children[0], active));
          tail.nullable = true;
          return seq(std::move(f), tail);
        }
        // x{n,m}: n copies then (m-n) nested optional copies.
        std::vector<Frag> optional;
        for (; i < n.max; ++i) optional.push_back(build(n.children[0], shifted(active, i * step)));
        Frag rest;
        for (auto it = optional.rbegin(); it != optional.rend(); ++it) {
          Frag g = seq(std::move(*it), rest);
          g.nullable = true;
          rest = std::move(g);
        }
        return seq(std::move(f), rest);
      }
    }
    return Frag{};
  }

  const RegexAst& ast_;
  std::set<int> refs_;
  std::map<int, int> group_length_;
  std::map<int, RegId> group_base_;
  std::vector<Label> positions_;
  std::set<std::pair<int, int>> follow_;
};

}  // namespace

RegexAst parse_regex(std::string_view pattern) { return Parser(pattern).run(); }

CompiledPattern compile_regex(const RegexAst& ast) { return Compiler(ast).run(); }
CompiledPattern compile_regex(std::string_view pattern) { return compile_regex(parse_regex(pattern)); }

namespace {

std::string product_pattern(int code, bool lot) {
  const std::string c = std::to_string(code);
  if (lot) return "C:(.{" + c + "}) L:(.) D:[^\\s]+( C:\\1 L:\\2 D:[^\\s]+)+";
  return "C:(.{" + c + "}) L:. D:[^\\s]+( C:\\1 L:. D:[^\\s]+)+";
}

std::string ip_pattern(int n) {
  std::string first, second;
  for (int i = 0; i < 12; ++i) {
    if (i > 0 && i % 3 == 0) {
      first += "\\.";
      second += "\\.";
    }
    first += i < n ? "(\\d)" : "\\d";
    second += i < n ? "\\" + std::to_string(i + 1) : "\\d";
  }
  return "src=" + first + " dst=" + second + " proto=[a-z]+";
}

}  // namespace

std::vector<BenchmarkPattern> benchmark_patterns() {
  std::vector<BenchmarkPattern> out;
  for (int n : {2, 3, 4, 6, 9}) out.push_back({"IP" + std::to_string(n), ip_pattern(n)});
  out.push_back({"Name-F", "([A-Z])[a-z]*[A-Z][a-z]*\\1[A-Z]"});
  out.push_back({"Name-L", "[A-Z][a-z]*([A-Z])[a-z]*[A-Z]\\1"});
  out.push_back({"Name", "([A-Z])[a-z]*([A-Z])[a-z]*\\1\\2"});
  out.push_back({"XML", "<([a-zA-Z]{3})>[a-zA-Z]*</\\1>"});
  for (int n : {2, 3, 4, 6, 9}) out.push_back({"Pr-C" + std::to_string(n), product_pattern(n, false)});
  for (int n : {2, 3, 4, 6, 9}) out.push_back({"Pr-CL" + std::to_string(n), product_pattern(n, true)});
  return out;
}

std::string benchmark_pattern(std::string_view name) {
  for (const auto& b : benchmark_patterns()) {
    if (b.name == name) return b.pattern;
  }
  throw std::invalid_argument("unknown benchmark " + std::string(name));
}

}  // namespace sra
