#include "sra/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"

namespace sra {

using ojson = nlohmann::ordered_json;

namespace {

ojson reg_names(const Sra& s, RegSet set) {
  ojson a = ojson::array();
  for (RegId r : regs_of(set)) a.push_back(s.registers[r]);
  return a;
}

}  // namespace

std::string to_json(const Sra& s) {
  ojson j;
  j["algebra"] = algebra_name(s.algebra);
  j["registers"] = s.registers;
  j["states"] = s.states;
  j["initial"] = s.states.at(s.initial);
  ojson v0 = ojson::object();
  for (std::size_t r = 0; r < s.registers.size(); ++r) {
    const Value x = s.initial_valuation[r];
    v0[s.registers[r]] = x == kEmptyRegister ? ojson(nullptr) : ojson(x);
  }
  j["initial_valuation"] = v0;
  ojson fin = ojson::array();
  for (std::size_t q = 0; q < s.states.size(); ++q) {
    if (s.finals[q]) fin.push_back(s.states[q]);
  }
  j["finals"] = fin;
  ojson ts = ojson::array();
  for (const auto& t : s.transitions) {
    ojson o;
    o["from"] = s.states.at(t.from);
    o["guard"] = t.label.guard.to_string();
    o["E"] = reg_names(s, t.label.E);
    o["I"] = reg_names(s, t.label.I);
    o["U"] = reg_names(s, t.label.U);
    o["to"] = s.states.at(t.to);
    ts.push_back(std::move(o));
  }
  j["transitions"] = ts;
  return j.dump(2) + "\n";
}

Sra from_json(std::string_view text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("JSON parse error: ") + e.what());
  }
  try {
    Sra s;
    s.algebra = parse_algebra_name(j.at("algebra").get<std::string>());
    std::unordered_map<std::string, RegId> regs;
    for (const auto& r : j.at("registers")) {
      auto name = r.get<std::string>();
      if (!regs.emplace(name, static_cast<RegId>(s.registers.size())).second)
        throw std::invalid_argument("duplicate register '" + name + "'");
      s.add_register(name);
    }
    std::unordered_map<std::string, StateId> states;
    for (const auto& q : j.at("states")) {
      auto name = q.get<std::string>();
      if (!states.emplace(name, static_cast<StateId>(s.states.size())).second)
        throw std::invalid_argument("duplicate state '" + name + "'");
      s.add_state(name);
    }
    auto state = [&](const ojson& x) {
      auto it = states.find(x.get<std::string>());
      if (it == states.end()) throw std::invalid_argument("unknown state '" + x.get<std::string>() + "'");
      return it->second;
    };
    auto reg_set = [&](const ojson& arr) {
      RegSet set = 0;
      for (const auto& x : arr) {
        auto it = regs.find(x.get<std::string>());
        if (it == regs.end()) throw std::invalid_argument("unknown register '" + x.get<std::string>() + "'");
        set |= reg_bit(it->second);
      }
      return set;
    };
    s.initial = state(j.at("initial"));
    if (j.contains("initial_valuation")) {
      for (const auto& [name, val] : j.at("initial_valuation").items()) {
        auto it = regs.find(name);
        if (it == regs.end()) throw std::invalid_argument("unknown register '" + name + "'");
        if (val.is_null()) continue;
        if (val.is_string()) {
          s.initial_valuation[it->second] = parse_value(s.algebra, val.get<std::string>());
        } else {
          s.initial_valuation[it->second] = val.get<Value>();
        }
      }
    }
    for (const auto& f : j.at("finals")) s.finals[state(f)] = true;
    for (const auto& t : j.at("transitions")) {
      Label l;
      l.guard = Predicate::parse(s.algebra, t.at("guard").get<std::string>());
      l.E = t.contains("E") ? reg_set(t.at("E")) : 0;
      l.I = t.contains("I") ? reg_set(t.at("I")) : 0;
      l.U = t.contains("U") ? reg_set(t.at("U")) : 0;
      s.add_transition(state(t.at("from")), std::move(l), state(t.at("to")));
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed automaton: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  out << content;
}

Sra load_sra(const std::string& path) { return from_json(read_file(path)); }
void save_sra(const std::string& path, const Sra& s) { write_file(path, to_json(s)); }

}  // namespace sra
