#include "sra/algebra.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace sra {

namespace {

constexpr std::uint32_t kMaxModulus = 1u << 20;

std::uint64_t residue(Value x, std::uint32_t m) {
  const __int128 r = static_cast<__int128>(x) % m;
  return static_cast<std::uint64_t>(r < 0 ? r + m : r);
}

std::uint64_t witness_rank(AlgebraKind kind, Value v) {
  if (kind == AlgebraKind::Unicode) return static_cast<std::uint64_t>(v);
  // 0, 1, -1, 2, -2, ...
  if (v > 0) return static_cast<std::uint64_t>(v) * 2 - 1;
  return static_cast<std::uint64_t>(-v) * 2;
}

}  // namespace

Value domain_min(AlgebraKind kind) { return kind == AlgebraKind::Unicode ? 0 : kIntegerMin; }
Value domain_max(AlgebraKind kind) {
  return kind == AlgebraKind::Unicode ? kUnicodeMax : kIntegerMax;
}

std::string algebra_name(AlgebraKind kind) {
  return kind == AlgebraKind::Unicode ? "unicode" : "integer";
}

AlgebraKind parse_algebra_name(std::string_view name) {
  if (name == "unicode") return AlgebraKind::Unicode;
  if (name == "integer") return AlgebraKind::Integer;
  throw std::invalid_argument("unknown algebra '" + std::string(name) + "'");
}

bool witness_less(AlgebraKind kind, Value a, Value b) {
  return witness_rank(kind, a) < witness_rank(kind, b);
}

// ---- Residues ---------------------------------------------------------------

Residues::Residues(std::uint32_t modulus, bool all) : bits_((modulus + 63) / 64, 0) {
  if (all) {
    for (std::uint32_t r = 0; r < modulus; ++r) set(r);
  }
}

bool Residues::none() const {
  return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w == 0; });
}

std::uint64_t Residues::count() const {
  std::uint64_t c = 0;
  for (auto w : bits_) c += static_cast<std::uint64_t>(std::popcount(w));
  return c;
}

Residues Residues::lift(std::uint32_t from, std::uint32_t to) const {
  if (from == to) return *this;
  Residues out(to, false);
  for (std::uint32_t r = 0; r < to; ++r) {
    if (test(r % from)) out.set(r);
  }
  return out;
}

Residues Residues::flipped(std::uint32_t modulus) const {
  Residues out(modulus, false);
  for (std::uint32_t r = 0; r < modulus; ++r) {
    if (!test(r)) out.set(r);
  }
  return out;
}

Residues operator&(const Residues& a, const Residues& b) {
  Residues out = a;
  for (std::size_t i = 0; i < out.bits_.size(); ++i) out.bits_[i] &= b.bits_[i];
  return out;
}

Residues operator|(const Residues& a, const Residues& b) {
  Residues out = a;
  for (std::size_t i = 0; i < out.bits_.size(); ++i) out.bits_[i] |= b.bits_[i];
  return out;
}

// ---- ElemSet ----------------------------------------------------------------

ElemSet ElemSet::empty(AlgebraKind kind) {
  return ElemSet(kind, 1, {Piece{domain_min(kind), Residues(1, false)}});
}

ElemSet ElemSet::full(AlgebraKind kind) {
  return ElemSet(kind, 1, {Piece{domain_min(kind), Residues(1, true)}});
}

ElemSet ElemSet::interval(AlgebraKind kind, Value lo, Value hi) {
  lo = std::max(lo, domain_min(kind));
  hi = std::min(hi, domain_max(kind));
  if (lo > hi) return empty(kind);
  std::vector<Piece> ps;
  if (lo > domain_min(kind)) ps.push_back({domain_min(kind), Residues(1, false)});
  ps.push_back({lo, Residues(1, true)});
  if (hi < domain_max(kind)) ps.push_back({hi + 1, Residues(1, false)});
  return ElemSet(kind, 1, std::move(ps));
}

ElemSet ElemSet::multiples(AlgebraKind kind, std::int64_t k) {
  if (kind != AlgebraKind::Integer) throw std::invalid_argument("div is an integer predicate");
  if (k < 1 || static_cast<std::uint64_t>(k) > kMaxModulus)
    throw std::invalid_argument("div modulus out of range");
  const auto m = static_cast<std::uint32_t>(k);
  Residues res(m, false);
  res.set(0);
  return ElemSet(kind, m, {Piece{domain_min(kind), std::move(res)}});
}

ElemSet ElemSet::single(AlgebraKind kind, Value a) { return interval(kind, a, a); }

Value ElemSet::piece_hi(std::size_t i) const {
  return i + 1 < pieces_.size() ? pieces_[i + 1].lo - 1 : domain_max(kind_);
}

void ElemSet::normalize() {
  std::vector<Piece> out;
  out.reserve(pieces_.size());
  for (auto& p : pieces_) {
    if (!out.empty() && out.back().res == p.res) continue;
    out.push_back(std::move(p));
  }
  pieces_ = std::move(out);
}

template <class Op>
ElemSet ElemSet::combine(const ElemSet& a, const ElemSet& b, Op op) {
  if (a.kind_ != b.kind_) throw std::invalid_argument("algebra mismatch");
  const std::uint64_t m64 = std::lcm<std::uint64_t>(a.modulus_, b.modulus_);
  if (m64 > kMaxModulus) throw std::length_error("combined divisibility modulus too large");
  const auto m = static_cast<std::uint32_t>(m64);
  std::vector<Piece> out;
  out.reserve(a.pieces_.size() + b.pieces_.size());
  std::size_t i = 0, j = 0;
  while (i < a.pieces_.size() && j < b.pieces_.size()) {
    const Value lo = std::max(a.pieces_[i].lo, b.pieces_[j].lo);
    out.push_back({lo, op(a.pieces_[i].res.lift(a.modulus_, m), b.pieces_[j].res.lift(b.modulus_, m))});
    const Value ha = a.piece_hi(i), hb = b.piece_hi(j);
    if (ha == hb) {
      ++i;
      ++j;
    } else if (ha < hb) {
      ++i;
    } else {
      ++j;
    }
  }
  ElemSet r(a.kind_, m, std::move(out));
  r.normalize();
  return r;
}

ElemSet ElemSet::operator&(const ElemSet& o) const {
  return combine(*this, o, [](const Residues& x, const Residues& y) { return x & y; });
}

ElemSet ElemSet::operator|(const ElemSet& o) const {
  return combine(*this, o, [](const Residues& x, const Residues& y) { return x | y; });
}

ElemSet ElemSet::complement() const {
  ElemSet r = *this;
  for (auto& p : r.pieces_) p.res = p.res.flipped(modulus_);
  return r;
}

bool ElemSet::operator==(const ElemSet& o) const {
  if (kind_ != o.kind_) return false;
  // Equal denotations iff the symmetric difference is empty.
  return (minus(o) | o.minus(*this)).is_empty();
}

bool ElemSet::contains(Value x) const {
  if (x < domain_min(kind_) || x > domain_max(kind_)) return false;
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](Value v, const Piece& p) { return v < p.lo; });
  --it;
  return it->res.test(residue(x, modulus_));
}

bool ElemSet::is_empty() const { return count_capped(1) == 0; }

std::uint64_t ElemSet::count_capped(std::uint64_t cap) const {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < pieces_.size() && total < cap; ++i) {
    const auto& p = pieces_[i];
    if (p.res.none()) continue;
    const __int128 len = static_cast<__int128>(piece_hi(i)) - p.lo + 1;
    __int128 c;
    if (modulus_ == 1) {
      c = len;
    } else {
      c = (len / modulus_) * static_cast<__int128>(p.res.count());
      const auto rem = static_cast<std::uint64_t>(len % modulus_);
      const std::uint64_t start = residue(p.lo, modulus_);
      for (std::uint64_t t = 0; t < rem; ++t) {
        if (p.res.test((start + t) % modulus_)) ++c;
      }
    }
    const __int128 room = static_cast<__int128>(cap - total);
    total += static_cast<std::uint64_t>(c < room ? c : room);
  }
  return total;
}

std::optional<Value> ElemSet::least() const {
  std::optional<Value> best;
  auto offer = [&](Value v) {
    if (!best || witness_less(kind_, v, *best)) best = v;
  };
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& p = pieces_[i];
    if (p.res.none()) continue;
    const Value lo = p.lo, hi = piece_hi(i);
    // Scan upwards from `from` for at most one period.
    auto scan_up = [&](Value from) -> std::optional<Value> {
      for (std::uint64_t t = 0; t < modulus_; ++t) {
        const __int128 x = static_cast<__int128>(from) + t;
        if (x > hi) break;
        if (p.res.test(residue(static_cast<Value>(x), modulus_))) return static_cast<Value>(x);
      }
      return std::nullopt;
    };
    auto scan_down = [&](Value from) -> std::optional<Value> {
      for (std::uint64_t t = 0; t < modulus_; ++t) {
        const __int128 x = static_cast<__int128>(from) - t;
        if (x < lo) break;
        if (p.res.test(residue(static_cast<Value>(x), modulus_))) return static_cast<Value>(x);
      }
      return std::nullopt;
    };
    if (kind_ == AlgebraKind::Unicode || lo > 0) {
      if (auto v = scan_up(lo)) offer(*v);
    } else if (hi < 0) {
      if (auto v = scan_down(hi)) offer(*v);
    } else {
      if (auto v = scan_up(0)) offer(*v);
      if (lo <= -1) {
        if (auto v = scan_down(-1)) offer(*v);
      }
    }
    if (kind_ == AlgebraKind::Unicode && best) break;
  }
  return best;
}

std::vector<std::pair<Value, Value>> ElemSet::runs() const {
  std::vector<std::pair<Value, Value>> out;
  auto add = [&](Value lo, Value hi) {
    if (!out.empty() && out.back().second != domain_max(kind_) && out.back().second + 1 == lo)
      out.back().second = hi;
    else
      out.emplace_back(lo, hi);
  };
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& p = pieces_[i];
    if (p.res.none()) continue;
    if (modulus_ == 1) {
      add(p.lo, piece_hi(i));
      continue;
    }
    const Value hi = piece_hi(i);
    for (Value x = p.lo;; ++x) {
      if (p.res.test(residue(x, modulus_))) add(x, x);
      if (x == hi) break;
    }
  }
  return out;
}

// ---- Values -----------------------------------------------------------------

std::string format_value(AlgebraKind kind, Value v) {
  if (kind == AlgebraKind::Integer) return std::to_string(v);
  if (v >= 0x21 && v <= 0x7E && v != '\'' && v != '\\') return std::string("'") + static_cast<char>(v) + "'";
  char buf[16];
  std::snprintf(buf, sizeof buf, "U+%04llX", static_cast<unsigned long long>(v));
  return buf;
}

namespace {

/// Decodes one UTF-8 sequence starting at s[pos]; advances pos.
Value decode_utf8(std::string_view s, std::size_t& pos) {
  const auto c0 = static_cast<unsigned char>(s[pos]);
  int len = c0 < 0x80 ? 1 : (c0 >> 5) == 6 ? 2 : (c0 >> 4) == 14 ? 3 : (c0 >> 3) == 30 ? 4 : 0;
  if (len == 0 || pos + len > s.size()) throw std::invalid_argument("invalid UTF-8");
  Value cp = len == 1 ? c0 : len == 2 ? (c0 & 0x1F) : len == 3 ? (c0 & 0x0F) : (c0 & 0x07);
  for (int i = 1; i < len; ++i) {
    const auto c = static_cast<unsigned char>(s[pos + i]);
    if ((c >> 6) != 2) throw std::invalid_argument("invalid UTF-8");
    cp = (cp << 6) | (c & 0x3F);
  }
  pos += len;
  return cp;
}

void check_range(AlgebraKind kind, Value v) {
  if (v < domain_min(kind) || v > domain_max(kind))
    throw std::invalid_argument("value out of domain: " + std::to_string(v));
}

}  // namespace

Value parse_value(AlgebraKind kind, std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty value");
  Value v = 0;
  if (text.front() == '\'') {
    std::size_t pos = 1;
    if (pos >= text.size()) throw std::invalid_argument("bad character literal");
    v = decode_utf8(text, pos);
    if (pos + 1 != text.size() || text[pos] != '\'') throw std::invalid_argument("bad character literal");
  } else if (text.size() > 2 && (text[0] == 'U' || text[0] == 'u') && text[1] == '+') {
    auto [p, ec] = std::from_chars(text.data() + 2, text.data() + text.size(), v, 16);
    if (ec != std::errc() || p != text.data() + text.size()) throw std::invalid_argument("bad U+ literal");
  } else {
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || p != text.data() + text.size())
      throw std::invalid_argument("bad value '" + std::string(text) + "'");
  }
  check_range(kind, v);
  return v;
}

// ---- Predicate --------------------------------------------------------------

struct Predicate::Node {
  Op op = Op::True;
  AlgebraKind kind = AlgebraKind::Unicode;
  Value lo = 0, hi = 0;
  bool lo_inf = false, hi_inf = false;
  std::int64_t k = 0;
  std::vector<Predicate> kids;
  ElemSet set = ElemSet::empty(AlgebraKind::Unicode);
  std::string text;
};

AlgebraKind Predicate::kind() const { return node_->kind; }
Predicate::Op Predicate::op() const { return node_->op; }
const std::vector<Predicate>& Predicate::operands() const { return node_->kids; }
const ElemSet& Predicate::denotation() const { return node_->set; }
bool Predicate::denotes(Value a) const { return node_->set.contains(a); }
std::string Predicate::to_string() const { return node_->text; }

Predicate Predicate::top(AlgebraKind kind) {
  auto n = std::make_shared<Node>();
  n->op = Op::True;
  n->kind = kind;
  n->set = ElemSet::full(kind);
  n->text = "true";
  return Predicate(std::move(n));
}

Predicate Predicate::bottom(AlgebraKind kind) {
  auto n = std::make_shared<Node>();
  n->op = Op::False;
  n->kind = kind;
  n->set = ElemSet::empty(kind);
  n->text = "false";
  return Predicate(std::move(n));
}

Predicate Predicate::interval(AlgebraKind kind, Value lo, Value hi, bool lo_inf, bool hi_inf) {
  auto n = std::make_shared<Node>();
  n->op = Op::Interval;
  n->kind = kind;
  n->lo_inf = lo_inf;
  n->hi_inf = hi_inf;
  n->lo = lo_inf ? domain_min(kind) : lo;
  n->hi = hi_inf ? domain_max(kind) : hi;
  if (!lo_inf) check_range(kind, lo);
  if (!hi_inf) check_range(kind, hi);
  n->set = ElemSet::interval(kind, n->lo, n->hi);
  n->text = "[" + (lo_inf ? std::string("-inf") : format_value(kind, lo)) + "-" +
            (hi_inf ? std::string("inf") : format_value(kind, hi)) + "]";
  return Predicate(std::move(n));
}

Predicate Predicate::at_least(AlgebraKind kind, Value lo) { return interval(kind, lo, 0, false, true); }
Predicate Predicate::at_most(AlgebraKind kind, Value hi) { return interval(kind, 0, hi, true, false); }

Predicate Predicate::div(std::int64_t k) {
  auto n = std::make_shared<Node>();
  n->op = Op::Div;
  n->kind = AlgebraKind::Integer;
  n->k = k;
  n->set = ElemSet::multiples(AlgebraKind::Integer, k);
  n->text = "div " + std::to_string(k);
  return Predicate(std::move(n));
}

Predicate Predicate::atom(AlgebraKind kind, Value a) {
  check_range(kind, a);
  auto n = std::make_shared<Node>();
  n->op = Op::Atom;
  n->kind = kind;
  n->lo = n->hi = a;
  n->set = ElemSet::single(kind, a);
  n->text = "atom " + format_value(kind, a);
  return Predicate(std::move(n));
}

namespace {

std::string join_text(const std::vector<Predicate>& kids, const char* sep) {
  std::string s = "(";
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (i) s += sep;
    s += kids[i].to_string();
  }
  return s + ")";
}

}  // namespace

Predicate Predicate::build(Connective c, const std::vector<Predicate>& operands) {
  for (const auto& p : operands) {
    if (!p.valid()) throw std::invalid_argument("empty predicate operand");
    if (p.kind() != operands.front().kind()) throw std::invalid_argument("algebra mismatch");
  }
  auto n = std::make_shared<Node>();
  if (c == Connective::Not) {
    if (operands.size() != 1) throw std::invalid_argument("not takes one operand");
    const auto& p = operands.front();
    n->op = Op::Not;
    n->kind = p.kind();
    n->kids = operands;
    n->set = p.denotation().complement();
    const bool grouped = p.op() == Op::And || p.op() == Op::Or;
    n->text = grouped ? "!" + p.to_string() : "!(" + p.to_string() + ")";
    return Predicate(std::move(n));
  }
  if (operands.size() < 2) throw std::invalid_argument("and/or take at least two operands");
  n->op = c == Connective::And ? Op::And : Op::Or;
  n->kind = operands.front().kind();
  n->kids = operands;
  n->set = operands.front().denotation();
  for (std::size_t i = 1; i < operands.size(); ++i) {
    n->set = c == Connective::And ? n->set & operands[i].denotation() : n->set | operands[i].denotation();
  }
  n->text = join_text(operands, c == Connective::And ? " & " : " | ");
  return Predicate(std::move(n));
}

Predicate Predicate::conjunction(const std::vector<Predicate>& operands, ElemSet set) {
  if (operands.empty()) return top(set.kind());
  if (operands.size() == 1) return operands.front();
  auto n = std::make_shared<Node>();
  n->op = Op::And;
  n->kind = set.kind();
  n->kids = operands;
  n->set = std::move(set);
  n->text = join_text(operands, " & ");
  return Predicate(std::move(n));
}

std::optional<Value> Predicate::witness(const std::vector<Value>& excluded) const {
  ElemSet s = denotation();
  for (Value x : excluded) {
    if (x == kEmptyRegister || !s.contains(x)) continue;
    s = s.minus(ElemSet::single(kind(), x));
  }
  return s.least();
}

// ---- Parser -----------------------------------------------------------------

namespace {

class PredicateParser {
 public:
  PredicateParser(AlgebraKind kind, std::string_view text) : kind_(kind), s_(text) {}

  Predicate run() {
    Predicate p = pred();
    ws();
    if (pos_ != s_.size()) fail("trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("predicate syntax error at " + std::to_string(pos_) + ": " + what +
                                " in '" + std::string(s_) + "'");
  }
  void ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n')) ++pos_;
  }
  bool keyword(std::string_view kw) {
    if (s_.substr(pos_, kw.size()) != kw) return false;
    const std::size_t end = pos_ + kw.size();
    if (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) return false;
    pos_ = end;
    return true;
  }
  void expect(char c) {
    ws();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  // A literal value; stops before a '-' separator or a closing ']'.
  Value value() {
    ws();
    const std::size_t start = pos_;
    if (pos_ < s_.size() && s_[pos_] == '\'') {
      ++pos_;
      if (pos_ >= s_.size()) fail("unterminated character literal");
      decode_utf8(s_, pos_);
      if (pos_ >= s_.size() || s_[pos_] != '\'') fail("unterminated character literal");
      ++pos_;
    } else if (pos_ + 1 < s_.size() && (s_[pos_] == 'U' || s_[pos_] == 'u') && s_[pos_ + 1] == '+') {
      pos_ += 2;
      while (pos_ < s_.size() && std::isxdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    } else {
      if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    try {
      return parse_value(kind_, s_.substr(start, pos_ - start));
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }

  Predicate interval() {
    ws();
    bool lo_inf = false, hi_inf = false;
    Value lo = 0, hi = 0;
    if (keyword("-inf")) {
      lo_inf = true;
    } else {
      lo = value();
    }
    expect('-');
    ws();
    if (keyword("inf")) {
      hi_inf = true;
    } else {
      hi = value();
    }
    expect(']');
    return Predicate::interval(kind_, lo, hi, lo_inf, hi_inf);
  }

  Predicate pred() {
    ws();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (keyword("true")) return Predicate::top(kind_);
    if (keyword("false")) return Predicate::bottom(kind_);
    if (keyword("div")) {
      if (kind_ != AlgebraKind::Integer) fail("div is an integer predicate");
      ws();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::int64_t k = 0;
      auto [p, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, k);
      if (ec != std::errc() || start == pos_ || k < 1) fail("bad modulus");
      return Predicate::div(k);
    }
    if (keyword("atom")) return Predicate::atom(kind_, value());
    const char c = s_[pos_];
    if (c == '[') {
      ++pos_;
      return interval();
    }
    if (c == '!') {
      ++pos_;
      return !pred();
    }
    if (c == '(') {
      ++pos_;
      std::vector<Predicate> items{pred()};
      ws();
      char op = 0;
      while (pos_ < s_.size() && (s_[pos_] == '&' || s_[pos_] == '|')) {
        if (op && s_[pos_] != op) fail("mixed '&' and '|' need parentheses");
        op = s_[pos_++];
        items.push_back(pred());
        ws();
      }
      expect(')');
      if (!op) return items.front();
      return Predicate::build(op == '&' ? Connective::And : Connective::Or, items);
    }
    fail("unexpected character");
  }

  AlgebraKind kind_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Predicate Predicate::parse(AlgebraKind kind, std::string_view text) {
  return PredicateParser(kind, text).run();
}

// ---- Minterms ---------------------------------------------------------------

MintermSet::MintermSet(AlgebraKind kind, const std::vector<Predicate>& sources, std::uint64_t size_cap)
    : kind_(kind) {
  static std::atomic<std::uint64_t> next_id{1};
  id_ = next_id++;
  std::unordered_map<std::string, std::size_t> seen;
  for (const auto& p : sources) {
    if (p.kind() != kind) throw std::invalid_argument("algebra mismatch");
    if (seen.emplace(p.to_string(), sources_.size()).second) sources_.push_back(p);
  }
  struct Partial {
    ElemSet set;
    std::vector<Predicate> literals;
    std::vector<bool> pos;
  };
  std::vector<Partial> cur{{ElemSet::full(kind), {}, {}}};
  for (const auto& phi : sources_) {
    const ElemSet yes = phi.denotation();
    const ElemSet no = yes.complement();
    std::vector<Partial> next;
    next.reserve(cur.size() * 2);
    for (auto& part : cur) {
      ElemSet a = part.set & yes;
      ElemSet b = part.set & no;
      if (!a.is_empty()) {
        Partial q{std::move(a), part.literals, part.pos};
        q.literals.push_back(phi);
        q.pos.push_back(true);
        next.push_back(std::move(q));
      }
      if (!b.is_empty()) {
        Partial q{std::move(b), std::move(part.literals), std::move(part.pos)};
        q.literals.push_back(!phi);
        q.pos.push_back(false);
        next.push_back(std::move(q));
      }
    }
    cur = std::move(next);
  }
  under_.assign(sources_.size(), {});
  for (auto& part : cur) {
    Minterm m;
    m.size_capped = part.set.count_capped(size_cap);
    m.conjunction = Predicate::conjunction(part.literals, std::move(part.set));
    m.positives = std::move(part.pos);
    m.source_set_id = id_;
    const auto idx = static_cast<std::uint32_t>(terms_.size());
    for (std::size_t i = 0; i < sources_.size(); ++i) {
      if (m.positives[i]) under_[i].push_back(idx);
    }
    terms_.push_back(std::move(m));
  }
}

std::optional<std::size_t> MintermSet::source_index(const Predicate& p) const {
  const std::string key = p.to_string();
  for (std::size_t i = 0; i < sources_.size(); ++i) {
    if (sources_[i].to_string() == key) return i;
  }
  return std::nullopt;
}

std::uint32_t MintermSet::term_of(Value a) const {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].conjunction.denotes(a)) return static_cast<std::uint32_t>(i);
  }
  throw std::logic_error("minterms do not cover the domain");
}

std::vector<Minterm> minterms(AlgebraKind kind, const std::vector<Predicate>& phis) {
  return MintermSet(kind, phis).terms();
}

}  // namespace sra
