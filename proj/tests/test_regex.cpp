#include <functional>
#include <map>
#include <random>

#include "doctest.h"
#include "sra/normal.hpp"
#include "sra/regex.hpp"

using namespace sra;

namespace {

// Naive backtracking evaluation over the AST, continuation style.  Captures
// keep the last value they took; a back-reference to an unset group fails.
class Backtracker {
 public:
  Backtracker(const RegexAst& ast, const Word& w) : ast_(ast), w_(w) {}

  bool full_match() {
    return match(ast_.root, 0, [&](std::size_t i) { return i == w_.size(); });
  }

 private:
  using Cont = std::function<bool(std::size_t)>;

  bool match(const RegexNode& n, std::size_t i, const Cont& k) {
    using K = RegexNode::Kind;
    switch (n.kind) {
      case K::Empty: return k(i);
      case K::Symbol: return i < w_.size() && n.symbol.denotes(w_[i]) && k(i + 1);
      case K::Backref: {
        auto it = caps_.find(n.group);
        if (it == caps_.end()) return false;
        const auto [from, to] = it->second;
        const std::size_t len = to - from;
        if (i + len > w_.size()) return false;
        for (std::size_t j = 0; j < len; ++j) {
          if (w_[from + j] != w_[i + j]) return false;
        }
        return k(i + len);
      }
      case K::Group:
        if (!n.capturing) return match(n.children[0], i, k);
        return match(n.children[0], i, [&, i](std::size_t j) {
          auto saved = caps_;
          caps_[n.group] = {i, j};
          if (k(j)) return true;
          caps_ = std::move(saved);
          return false;
        });
      case K::Concat: return seq(n.children, 0, i, k);
      case K::Alt:
        for (const auto& c : n.children) {
          if (match(c, i, k)) return true;
        }
        return false;
      case K::Star: return repeat(n.children[0], 0, -1, 0, i, k);
      case K::Plus: return repeat(n.children[0], 1, -1, 0, i, k);
      case K::Optional: return repeat(n.children[0], 0, 1, 0, i, k);
      case K::Repeat: return repeat(n.children[0], n.min, n.max, 0, i, k);
    }
    return false;
  }

  bool seq(const std::vector<RegexNode>& xs, std::size_t at, std::size_t i, const Cont& k) {
    if (at == xs.size()) return k(i);
    return match(xs[at], i, [&, at](std::size_t j) { return seq(xs, at + 1, j, k); });
  }

  bool repeat(const RegexNode& n, int lo, int hi, int done, std::size_t i, const Cont& k) {
    if (hi < 0 || done < hi) {
      // Another iteration, but never an empty one past the minimum.
      const bool more = match(n, i, [&, done, i](std::size_t j) {
        if (j == i && done >= lo) return false;
        return repeat(n, lo, hi, done + 1, j, k);
      });
      if (more) return true;
    }
    return done >= lo && k(i);
  }

  const RegexAst& ast_;
  const Word& w_;
  std::map<int, std::pair<std::size_t, std::size_t>> caps_;
};

bool oracle(const std::string& pattern, const Word& w) {
  const auto ast = parse_regex(pattern);
  return Backtracker(ast, w).full_match();
}

Word text(std::string_view s) { return utf8_decode(s); }

std::vector<Word> words_upto(const std::string& alphabet, std::size_t len) {
  std::vector<Word> out{{}};
  std::size_t from = 0;
  for (std::size_t l = 0; l < len; ++l) {
    const std::size_t to = out.size();
    for (std::size_t i = from; i < to; ++i) {
      for (char c : alphabet) {
        Word w = out[i];
        w.push_back(static_cast<unsigned char>(c));
        out.push_back(std::move(w));
      }
    }
    from = to;
  }
  return out;
}

}  // namespace

TEST_CASE("parser structure") {
  using K = RegexNode::Kind;
  const auto ast = parse_regex("(\\d)[a-z]*\\1");
  CHECK(ast.groups == 1);
  REQUIRE(ast.root.kind == K::Concat);
  REQUIRE(ast.root.children.size() == 3);
  CHECK(ast.root.children[0].kind == K::Group);
  CHECK(ast.root.children[0].group == 1);
  CHECK(ast.root.children[0].children[0].symbol.equivalent(Predicate::interval(AlgebraKind::Unicode, '0', '9')));
  CHECK(ast.root.children[1].kind == K::Star);
  CHECK(ast.root.children[2].kind == K::Backref);

  const auto fig = parse_regex("C:(.{3}) L:(.)");
  CHECK(fig.groups == 2);
  const auto c = compile_regex(fig);
  CHECK(c.sra.num_registers() == 0);  // nothing references the groups

  CHECK_THROWS_AS(parse_regex("a\\2"), RegexError);
  CHECK_THROWS_AS(parse_regex("(a\\1)"), RegexError);
  CHECK_THROWS_AS(parse_regex("(ab"), RegexError);
  CHECK_THROWS_AS(parse_regex("ab)"), RegexError);
  CHECK_THROWS_AS(parse_regex("*a"), RegexError);
  CHECK_THROWS_AS(parse_regex("[z-a]"), RegexError);
  CHECK_THROWS_AS(parse_regex("a{3,2}"), RegexError);
  try {
    parse_regex("ab[c");
    FAIL("expected an error");
  } catch (const RegexError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("referenced groups need a fixed length") {
  CHECK_THROWS_AS(compile_regex("(a*)\\1"), std::invalid_argument);
  CHECK_THROWS_AS(compile_regex("(a|bc)\\1"), std::invalid_argument);
  CHECK_THROWS_AS(compile_regex("(a{1,2})\\1"), std::invalid_argument);
  CHECK_NOTHROW(compile_regex("(a*)b"));
  CHECK_NOTHROW(compile_regex("(ab|cd)\\1"));
}

TEST_CASE("register count is the total referenced group length") {
  CHECK(compile_regex("(\\d)[a-z]*\\1").sra.num_registers() == 1);
  CHECK(compile_regex("(..)(.)(x)\\1\\3").sra.num_registers() == 3);
  CHECK(compile_regex("C:(.{3}) L:(.) D:[^\\s]+( C:\\1 L:\\2 D:[^\\s]+)+").sra.num_registers() == 4);
  const auto c = compile_regex("((a)b)\\1\\2");
  CHECK(c.sra.num_registers() == 3);
  CHECK(c.group_registers.at(1).size() == 2);
  CHECK(c.group_registers.at(2).size() == 1);
}

TEST_CASE("digit repeat example") {
  const auto c = compile_regex("(\\d)[a-z]*\\1");
  CHECK(membership(c.sra, text("5ab5")));
  CHECK_FALSE(membership(c.sra, text("5ab6")));
  CHECK_FALSE(membership(c.sra, text("5ab")));
  CHECK(membership(c.sra, text("77")));
  // Every two-character word over digits and letters.
  const std::string chars = "0123456789abz";
  for (char x : chars) {
    for (char y : chars) {
      const Word w{static_cast<Value>(x), static_cast<Value>(y)};
      CHECK(membership(c.sra, w) == (x == y && x >= '0' && x <= '9'));
    }
  }
}

TEST_CASE("repeated symbol") {
  const auto c = compile_regex("(.)\\1");
  for (const auto& w : words_upto("abc", 3)) CHECK(membership(c.sra, w) == (w.size() == 2 && w[0] == w[1]));
}

TEST_CASE("patterns without back-references agree with backtracking") {
  const std::vector<std::string> patterns = {
      "a*b", "(a|b)*abb", "a?b+c{2}", "[a-c]{1,3}d?", "(?:ab|ba)+", "[^ab]*a.", "\\d+\\.\\d*",
      "(a|)b", "x{2,}y", "\\w\\s\\W", "a(b(c|d)*)?e", "[\\d\\s]+", "", "(ab|a)(bc|c)",
  };
  const std::string alphabet = "abcdexy01. \n_";
  std::mt19937 rng(7);
  for (const auto& p : patterns) {
    const auto c = compile_regex(p);
    const Matcher m(c.sra);
    for (int t = 0; t < 200; ++t) {
      Word w;
      const std::size_t len = rng() % 7;
      for (std::size_t i = 0; i < len; ++i) w.push_back(static_cast<unsigned char>(alphabet[rng() % alphabet.size()]));
      const bool expect = oracle(p, w);
      INFO(p, " on ", printable(w, AlgebraKind::Unicode));
      CHECK(m.accepts(w) == expect);
    }
  }
  // Random words rarely match, so a few members by hand.
  CHECK(membership(compile_regex("(a|b)*abb").sra, text("babb")));
  CHECK(membership(compile_regex("\\d+\\.\\d*").sra, text("10.")));
  CHECK(membership(compile_regex("").sra, Word{}));
}

TEST_CASE("patterns with back-references agree with backtracking") {
  const std::vector<std::string> patterns = {
      "(a)\\1",     "(.)(.)\\2\\1",   "(a|b)c*\\1",  "(ab)\\1?",    "((a|b)c)\\1\\2", "(.)(?:\\1|c)*",
      "(.)x*(.)\\2\\1", "(..)\\1",   "(.).*\\1",    "(a|b|c)+\\1", "(?:(a)|b)\\1",   "(.)\\1{2}",
  };
  const auto words = words_upto("abcx", 4);
  for (const auto& p : patterns) {
    const auto c = compile_regex(p);
    const Matcher m(c.sra);
    for (const auto& w : words) {
      INFO(p, " on ", printable(w, AlgebraKind::Unicode));
      CHECK(m.accepts(w) == oracle(p, w));
    }
  }
}

TEST_CASE("product pattern on sample texts") {
  const std::string rp = "C:(.{3}) L:(.) D:[^\\s]+( C:\\1 L:\\2 D:[^\\s]+)+";
  const auto c = compile_regex(rp);
  const Word matched = text("C:X4a L:4 D:bottle C:X4a L:4 D:jar");
  const Word unmatched = text("C:X4a L:4 D:bottle C:X5a L:4 D:jar");
  CHECK(membership(c.sra, matched));
  CHECK_FALSE(membership(c.sra, unmatched));
  CHECK(oracle(rp, matched));
  CHECK_FALSE(oracle(rp, unmatched));
  // The same text with a different lot also fails.
  CHECK_FALSE(membership(c.sra, text("C:X4a L:4 D:bottle C:X4a L:5 D:jar")));
}

TEST_CASE("benchmark family") {
  const auto all = benchmark_patterns();
  CHECK(all.size() == 19);
  std::map<std::string, Sra> by_name;
  for (const auto& b : all) {
    INFO(b.name);
    const auto c = compile_regex(b.pattern);
    CHECK(validate(c.sra).empty());
    CHECK(is_deterministic(c.sra));
    by_name.emplace(b.name, c.sra);
  }
  const auto within = [](std::size_t got, double want, double tol) {
    return got >= want * (1 - tol) && got <= want * (1 + tol);
  };
  const Sra& pr = by_name.at("Pr-C2");
  CHECK(within(pr.num_states(), 26, 0.2));
  CHECK(within(pr.transitions.size(), 28, 0.2));
  CHECK(pr.num_registers() + 1 == 3);
  const Sra& ip = by_name.at("IP2");
  CHECK(within(ip.num_states(), 44, 0.2));
  CHECK(within(ip.transitions.size(), 46, 0.2));
  CHECK(ip.num_registers() + 1 == 3);
  CHECK(by_name.at("Name-F").num_states() == 7);

  CHECK(membership(by_name.at("Name"), text("JohnSmithJS")));
  CHECK_FALSE(membership(by_name.at("Name"), text("JohnSmithSJ")));
  CHECK(membership(by_name.at("Name-F"), text("JohnSmithJQ")));
  CHECK(membership(by_name.at("Name-L"), text("JohnSmithQS")));
  CHECK(membership(by_name.at("XML"), text("<abc>text</abc>")));
  CHECK_FALSE(membership(by_name.at("XML"), text("<abc>text</abd>")));
  CHECK(membership(by_name.at("IP2"), text("src=192.168.001.001 dst=192.168.001.002 proto=tcp")));
  CHECK_FALSE(membership(by_name.at("IP2"), text("src=192.168.001.001 dst=292.168.001.002 proto=tcp")));
}
