#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "sra/expand.hpp"
#include "sra/regex.hpp"

using namespace sra;
using namespace fx;

namespace {

Predicate values(const std::vector<Value>& xs) {
  std::vector<Predicate> parts;
  for (Value x : xs) parts.push_back(Predicate::atom(Z, x));
  return Predicate::build(Connective::Or, parts);
}

Predicate letters() { return Predicate::interval(U, 'A', 'Z') | Predicate::interval(U, 'a', 'z'); }

}  // namespace

TEST_CASE("register-free input expands to a copy") {
  const Sra s = digits_plus();
  const auto e = expand_to_sfa(s, Predicate::interval(U, 0, 127));
  REQUIRE(e.sfa);
  CHECK(e.states == s.num_states());
  CHECK(e.transitions == s.transitions.size());
  CHECK(e.sfa->num_registers() == 0);
  for (const auto& w : std::vector<Word>{{}, {'1'}, {'1', '2'}, {'a'}, {'1', 'a'}}) CHECK(membership(*e.sfa, w) == membership(s, w));
}

TEST_CASE("language is preserved on the domain") {
  const std::vector<Value> dom = {0, 2, 3, 5};
  for (const auto& s : all_fixtures()) {
    const auto e = expand_to_sfa(s, values(dom));
    REQUIRE(e.sfa);
    CHECK(validate(*e.sfa).empty());
    const Matcher m(s), n(*e.sfa);
    for (const auto& w : all_words(dom, 3)) CHECK(m.accepts(w) == n.accepts(w));
  }
}

TEST_CASE("state bound and monotonicity") {
  for (const auto& s : all_fixtures()) {
    std::size_t previous = 0;
    for (Value hi : {5, 7, 10, 15}) {
      const auto e = expand_to_sfa(s, Predicate::interval(Z, 0, hi));
      REQUIRE_FALSE(e.overflow);
      const double bound = s.num_states() * std::pow(hi + 2.0, s.num_registers());
      CHECK(e.states <= bound);
      CHECK(e.states >= previous);
      previous = e.states;
    }
  }
}

TEST_CASE("one register over ten digits multiplies the states") {
  // The initial state only ever holds the empty register; each later state
  // pairs with each of the ten stored digits.
  const Sra s = first_repeats();
  const auto e = expand_to_sfa(s, Predicate::interval(Z, 0, 9));
  REQUIRE(e.sfa);
  CHECK(e.states == 1 + 10 * (s.num_states() - 1));
  CHECK(e.register_values == 10);
}

TEST_CASE("name patterns over letters") {
  const Sra f = compile_regex(benchmark_pattern("Name-F")).sra;
  const auto ef = expand_to_sfa(f, letters());
  REQUIRE(ef.sfa);
  CHECK(ef.register_values == 26);
  CHECK(ef.states >= 100);
  CHECK(ef.states <= 302);
  CHECK(membership(*ef.sfa, utf8_decode("JohnSmithJQ")));
  CHECK_FALSE(membership(*ef.sfa, utf8_decode("JohnSmithKQ")));

  const Sra n = compile_regex(benchmark_pattern("Name")).sra;
  REQUIRE(n.num_registers() == 2);
  const auto en = expand_to_sfa(n, letters());
  REQUIRE(en.sfa);
  CHECK(en.states >= 10 * n.num_states());
}

TEST_CASE("large domain overflows") {
  const Sra s = compile_regex(benchmark_pattern("Pr-C2")).sra;
  const auto e = expand_to_sfa(s, Predicate::interval(U, 0, 65535));
  CHECK(e.overflow);
  CHECK_FALSE(e.sfa);
  CHECK(e.states == ExpandLimits{}.max_states + 1);
  const auto row = size_report("Pr-C2", s, e);
  CHECK(row.registers == s.num_registers() + 1);
  CHECK(to_csv(row).ends_with(",---,---"));

  const auto small = expand_to_sfa(first_repeats(), Predicate::interval(Z, 0, 99), {.max_states = 50});
  CHECK(small.overflow);
  CHECK(small.states == 51);
}

TEST_CASE("size report rows") {
  CHECK(size_csv_header() == "name,sra_states,sra_tr,registers,reg_domain,sfa_states,sfa_tr");
  const Sra s = empty_by_guards();
  const auto e = expand_to_sfa(s, Predicate::interval(Z, 0, 10));
  const auto row = size_report("empty_by_guards", s, e);
  CHECK(row.sra_states == 3);
  CHECK(row.sra_transitions == s.transitions.size());
  REQUIRE(row.sfa_states);
  CHECK(to_csv(row) == "empty_by_guards,3," + std::to_string(s.transitions.size()) + ",2," +
                           std::to_string(e.register_values) + "," + std::to_string(e.states) + "," +
                           std::to_string(e.transitions));
  CHECK_THROWS_AS(expand_to_sfa(s, Predicate::div(2)), std::invalid_argument);
  CHECK_THROWS_AS(expand_to_sfa(s, Predicate::interval(U, 0, 3)), std::invalid_argument);
}
