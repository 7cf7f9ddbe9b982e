#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "sra/json_io.hpp"

using namespace sra;
using namespace fx;

namespace {

// Follows the unique enabled transition; only valid on deterministic automata.
bool single_scan(const Sra& s, const Word& w) {
  Configuration c{s.initial, s.initial_valuation};
  for (Value a : w) {
    auto next = step(s, c, a);
    REQUIRE(next.size() <= 1);
    if (next.empty()) return false;
    c = next.front();
  }
  return s.finals[c.state];
}

}  // namespace

TEST_CASE("validate") {
  CHECK(validate(even_bookends()).empty());
  CHECK(validate(empty_by_guards()).empty());
  Sra bad = even_bookends();
  bad.transitions[1].label.E = reg_bit(0);
  bad.transitions[1].label.I = reg_bit(0);
  auto v = validate(bad);
  REQUIRE(v.size() == 1);
  CHECK(v[0].find("E and I") != std::string::npos);
  Sra stray = even_bookends();
  stray.transitions[0].label.U = reg_bit(3);
  v = validate(stray);
  REQUIRE(v.size() == 1);
  CHECK(v[0].find("register not in R") != std::string::npos);
  Sra dangling = even_bookends();
  dangling.transitions[0].to = 9;
  CHECK(validate(dangling).size() == 1);
}

TEST_CASE("step") {
  Sra s = make_sra(Z, 2, 1);
  s.add_transition(0, read(top(), 0), 1);
  const Configuration c{0, {5}};
  const auto hit = step(s, c, 5);
  REQUIRE(hit.size() == 1);
  CHECK(hit[0] == Configuration{1, {5}});
  CHECK(step(s, c, 6).empty());
  const auto e3 = step(empty_by_guards(), Configuration{0, {kEmptyRegister}}, 6);
  REQUIRE(e3.size() == 1);
  CHECK(e3[0] == Configuration{1, {6}});
  CHECK(step(empty_by_guards(), Configuration{0, {kEmptyRegister}}, 0).empty());
}

TEST_CASE("step only touches updated registers") {
  std::mt19937 rng(21);
  for (int round = 0; round < 100; ++round) {
    const Sra s = random_sra(rng, 3, 3, 8);
    Valuation v(3);
    for (auto& x : v) x = rng() % 5 == 0 ? kEmptyRegister : static_cast<Value>(rng() % 4);
    const Configuration c{static_cast<StateId>(rng() % 3), v};
    const Value a = static_cast<Value>(rng() % 4);
    for (const auto& n : step(s, c, a)) {
      REQUIRE(n.valuation.size() == 3);
      bool explained = false;
      for (const auto& t : s.transitions) {
        if (t.from != c.state || t.to != n.state || !fires(t.label, v, a)) continue;
        bool same = true;
        for (RegId r = 0; r < 3; ++r)
          same = same && n.valuation[r] == (has_reg(t.label.U, r) ? a : v[r]);
        explained = explained || same;
      }
      CHECK(explained);
    }
  }
}

TEST_CASE("membership on the even first-equals-last automaton") {
  const Sra s = even_bookends();
  CHECK(membership(s, Word{2, 4, 2}));
  CHECK_FALSE(membership(s, Word{2, 4, 6}));
  CHECK_FALSE(membership(s, Word{3}));
  CHECK_FALSE(membership(s, Word{}));
  std::size_t accepted = 0;
  for (const auto& w : all_words({0, 1, 2, 3, 4, 5, 6}, 4)) {
    CHECK(membership(s, w) == even_bookends_oracle(w));
    accepted += even_bookends_oracle(w) ? 1 : 0;
  }
  CHECK(accepted > 0);
}

TEST_CASE("empty word acceptance follows the initial state") {
  Sra s = make_sra(Z, 1, 0);
  CHECK_FALSE(membership(s, Word{}));
  s.finals[0] = true;
  CHECK(membership(s, Word{}));
}

TEST_CASE("configuration search agrees with run enumeration") {
  std::mt19937 rng(99);
  const auto words = all_words({0, 1, 2, 3}, 3);
  for (int round = 0; round < 100; ++round) {
    const Sra s = random_sra(rng, 3, 2, 7);
    const Matcher m(s);
    for (const auto& w : words) CHECK(m.accepts(w) == accepts_by_runs(s, w));
  }
}

TEST_CASE("configuration search equals single scan on deterministic automata") {
  std::mt19937 rng(4);
  const std::vector<Sra> det = {even_bookends(), bookends(), first_repeats(), two_copies(), empty_by_guards()};
  int checked = 0;
  for (int round = 0; round < 100; ++round) {
    const Sra& s = det[round % det.size()];
    Word w;
    const std::size_t len = rng() % 7;
    for (std::size_t i = 0; i < len; ++i) w.push_back(static_cast<Value>(rng() % 4) * 2);
    CHECK(membership(s, w) == single_scan(s, w));
    ++checked;
  }
  CHECK(checked == 100);
}

TEST_CASE("from_ra") {
  const Sra ra = from_ra(Z, 2, 0, {1}, {7}, {{0, reg_bit(0), 0, 0, 1}});
  REQUIRE(ra.transitions.size() == 1);
  CHECK(ra.transitions[0].label.guard.op() == Predicate::Op::True);
  CHECK(ra.transitions[0].label.E == reg_bit(0));
  CHECK(ra.transitions[0].label.I == 0);
  CHECK(ra.transitions[0].label.U == 0);
  CHECK(from_ra(Z, 1, 0, {}, {}, {}).transitions.empty());
  std::mt19937 rng(8);
  const Sra fr = first_repeats();
  for (int i = 0; i < 20; ++i) {
    Word w;
    const std::size_t len = rng() % 6;
    for (std::size_t k = 0; k < len; ++k) w.push_back(static_cast<Value>(rng() % 3));
    CHECK(membership(fr, w) == first_repeats_oracle(w));
  }
  CHECK_THROWS_AS(from_ra(Z, 1, 3, {}, {}, {}), std::invalid_argument);
}

TEST_CASE("from_sfa") {
  const Sra d = digits_plus();
  CHECK(d.num_registers() == 0);
  std::mt19937 rng(1);
  const std::string alphabet = "0123456789ab";
  for (int i = 0; i < 20; ++i) {
    std::string text;
    const std::size_t len = rng() % 5;
    for (std::size_t k = 0; k < len; ++k) text += alphabet[rng() % alphabet.size()];
    const bool expect = !text.empty() && text.find_first_not_of("0123456789") == std::string::npos;
    CHECK(membership(d, utf8_decode(text)) == expect);
  }
  const Sra dead = from_sfa(Z, 2, 0, {1}, {{0, Predicate::bottom(Z), 1}});
  for (const auto& w : all_words({0, 1, 2}, 3)) CHECK_FALSE(membership(dead, w));
  // Reachable configurations of a register-free automaton are just states.
  std::set<Configuration> seen{{d.initial, {}}};
  std::vector<Configuration> todo{{d.initial, {}}};
  while (!todo.empty()) {
    auto c = todo.back();
    todo.pop_back();
    for (Value a : {Value{'0'}, Value{'5'}, Value{'x'}}) {
      for (auto& n : step(d, c, a)) {
        if (seen.insert(n).second) todo.push_back(n);
      }
    }
  }
  CHECK(seen.size() <= d.num_states());
}

TEST_CASE("JSON round trip") {
  for (const auto& s : all_fixtures()) {
    const std::string text = to_json(s);
    const Sra back = from_json(text);
    CHECK(to_json(back) == text);
    for (const auto& w : all_words({0, 2, 3, 5}, 3)) CHECK(membership(back, w) == membership(s, w));
  }
  for (const char* name : {"empty_by_guards.json", "even_bookends.json"}) {
    const std::string text = read_file(std::string(FIXTURE_DIR) + "/" + name);
    CHECK(to_json(from_json(text)) == text);
  }
  CHECK(to_json(empty_by_guards()) == read_file(std::string(FIXTURE_DIR) + "/empty_by_guards.json"));
  CHECK_THROWS_AS(from_json("{"), std::invalid_argument);
  CHECK_THROWS_AS(from_json(R"({"algebra":"integer","registers":[],"states":["a"],"initial":"b",
                                 "finals":[],"transitions":[]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(from_json(R"({"algebra":"integer","registers":["r"],"states":["a"],"initial":"a",
                                 "finals":[],"transitions":[{"from":"a","guard":"true","E":["s"],
                                 "I":[],"U":[],"to":"a"}]})"),
                  std::invalid_argument);
}

TEST_CASE("utf8 helpers") {
  CHECK(utf8_decode("aé€😀") == Word{'a', 0xE9, 0x20AC, 0x1F600});
  CHECK(printable(Word{'a', '\n', 0xE9}, U) == "a\\u{A}\\u{E9}");
  CHECK(printable(Word{1, -2}, Z) == "1 -2");
}
