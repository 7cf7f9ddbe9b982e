// Command-line front end: sra <verb> [options].
// Exit status: 0 = true / done, 1 = false, 2 = usage or input error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sra/bench.hpp"
#include "sra/boolean_ops.hpp"
#include "sra/equiv.hpp"
#include "sra/expand.hpp"
#include "sra/json_io.hpp"
#include "sra/normal.hpp"
#include "sra/regex.hpp"

using namespace sra;

namespace {

struct Options {
  std::string verb;
  std::string sra, lhs, rhs, pattern;
  std::string input, input_file;
  std::string domain;
  std::size_t max_states = ExpandLimits{}.max_states;
  std::string out;
  bool emit_normalized = false;
  bool complete = false;
  int max_exp = 7;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string first_line(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) return line;
  }
  throw std::invalid_argument("pattern file is empty");
}

/// A .regex file holds one pattern on its first non-empty line; anything
/// else is a JSON automaton.
Sra load(const std::string& path) {
  if (path.ends_with(".regex")) return compile_regex(first_line(read_file(path))).sra;
  return load_sra(path);
}

Sra subject(const Options& o) {
  if (!o.sra.empty() && !o.pattern.empty()) throw UsageError("give either --sra or --pattern, not both");
  if (!o.sra.empty()) return load(o.sra);
  if (!o.pattern.empty()) return compile_regex(o.pattern).sra;
  throw UsageError(o.verb + " needs --sra or --pattern");
}

std::pair<Sra, Sra> operands(const Options& o) {
  if (o.lhs.empty() || o.rhs.empty()) throw UsageError(o.verb + " needs --lhs and --rhs");
  return {load(o.lhs), load(o.rhs)};
}

Word input_word(const Options& o, AlgebraKind kind) {
  if (!o.input.empty() && !o.input_file.empty()) throw UsageError("give either --input or --input-file, not both");
  std::string text = o.input_file.empty() ? o.input : read_file(o.input_file);
  if (kind == AlgebraKind::Unicode) {
    // A file's trailing newline is not part of the word.
    if (!o.input_file.empty() && !text.empty() && text.back() == '\n') text.pop_back();
    return utf8_decode(text);
  }
  const auto j = nlohmann::json::parse(text);
  if (!j.is_array()) throw std::invalid_argument("integer input must be a JSON array");
  Word w;
  for (const auto& x : j) w.push_back(x.get<Value>());
  return w;
}

void emit(const Options& o, const std::string& content) {
  if (o.out.empty()) {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
  } else {
    write_file(o.out, content.back() == '\n' ? content : content + "\n");
  }
}

void print_word(const std::string& label, const Word& w, AlgebraKind kind) {
  std::cout << label << ": " << nlohmann::json(w).dump() << '\n';
  std::cout << "text: " << printable(w, kind) << '\n';
}

int verdict(bool holds) {
  std::cout << (holds ? "true" : "false") << '\n';
  return holds ? 0 : 1;
}

int run(const Options& o) {
  const std::string& v = o.verb;
  if (v == "compile") {
    if (o.pattern.empty()) throw UsageError("compile needs --pattern");
    const Sra s = compile_regex(o.pattern).sra;
    emit(o, o.emit_normalized ? normalized_json(as_single_valued(s)) : to_json(s));
    return 0;
  }
  if (v == "member") {
    const Sra s = subject(o);
    return verdict(membership(s, input_word(o, s.algebra)));
  }
  if (v == "empty") {
    const Sra s = subject(o);
    const auto r = check_emptiness(s);
    const int code = verdict(r.empty);
    if (r.witness) print_word("witness", *r.witness, s.algebra);
    return code;
  }
  if (v == "deterministic") {
    const auto r = check_determinism(subject(o));
    const int code = verdict(r.deterministic);
    if (!r.deterministic) std::cout << "reason: " << r.reason << '\n';
    return code;
  }
  if (v == "subset" || v == "equiv") {
    const auto [a, b] = operands(o);
    const auto r = v == "subset" ? includes(a, b) : equivalent(a, b);
    const int code = verdict(r.holds);
    if (r.counterexample) print_word("counterexample", *r.counterexample, a.algebra);
    return code;
  }
  if (v == "complement") {
    const Sra s = subject(o);
    emit(o, to_json(complement(o.complete ? complete(as_single_valued(s)) : s)));
    return 0;
  }
  if (v == "intersect" || v == "union") {
    const auto [a, b] = operands(o);
    emit(o, to_json(v == "intersect" ? intersect(a, b) : unite(a, b)));
    return 0;
  }
  if (v == "expand") {
    const Sra s = subject(o);
    if (o.domain.empty()) throw UsageError("expand needs --domain");
    const auto e = expand_to_sfa(s, Predicate::parse(s.algebra, o.domain), {o.max_states});
    const std::string name = !o.sra.empty() ? o.sra : o.pattern;
    std::cout << size_csv_header() << '\n' << to_csv(size_report(name, s, e)) << '\n';
    if (!o.out.empty() && e.sfa) write_file(o.out, to_json(*e.sfa));
    return 0;
  }
  if (v == "bench") {
    // Defaults: the product/lot pattern on its matching sample line.
    const std::string pattern = o.pattern.empty() ? "C:(.{3}) L:(.) D:[^\\s]+( C:\\1 L:\\2 D:[^\\s]+)+" : o.pattern;
    const Sra s = o.sra.empty() ? compile_regex(pattern).sra : load(o.sra);
    const Word prefix = o.sra.empty() && o.pattern.empty() ? utf8_decode("C:X4a L:4 D:bottle") : Word{};
    const Word tail = o.input.empty() ? utf8_decode(" C:X4a L:4 D:jar") : utf8_decode(o.input);
    std::vector<std::size_t> sizes;
    for (std::size_t n = 100, e = 2; e <= static_cast<std::size_t>(o.max_exp); n *= 10, ++e) sizes.push_back(n);
    std::string csv = "chars,seconds,accepted\n";
    for (const auto& p : membership_scaling(s, prefix, tail, sizes)) {
      std::ostringstream line;
      line << p.chars << ',' << p.seconds << ',' << (p.accepted ? "true" : "false") << '\n';
      csv += line.str();
    }
    emit(o, csv);
    return 0;
  }
  throw UsageError("unknown verb " + v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic register automata: compile, decide, expand, benchmark"};
  Options o;
  app.add_option("verb", o.verb, "compile | member | empty | deterministic | subset | equiv | complement | "
                                 "intersect | union | expand | bench")
      ->required()
      ->check(CLI::IsMember({"compile", "member", "empty", "deterministic", "subset", "equiv", "complement",
                             "intersect", "union", "expand", "bench"}));
  app.add_option("--sra", o.sra, "automaton file (.json, or .regex with one pattern)");
  app.add_option("--lhs", o.lhs, "left operand file");
  app.add_option("--rhs", o.rhs, "right operand file");
  app.add_option("--pattern", o.pattern, "inline regular expression");
  app.add_option("--input", o.input, "word: text for Unicode automata, a JSON array for integer ones");
  app.add_option("--input-file", o.input_file, "file holding the word");
  app.add_option("--domain", o.domain, "finite domain as a predicate, e.g. \"['a'-'z']\"");
  app.add_option("--max-states", o.max_states, "expansion state limit");
  app.add_option("--out", o.out, "write JSON or CSV output here");
  app.add_flag("--emit-normalized", o.emit_normalized, "emit the normalized automaton with register abstractions");
  app.add_flag("--complete", o.complete, "complete before complementing");
  app.add_option("--max-exp", o.max_exp, "bench: largest input is 10^max-exp characters")->check(CLI::Range(3, 8));
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    return run(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return 2;
}
