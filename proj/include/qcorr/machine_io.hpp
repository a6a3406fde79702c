// Copyright 2026 The qcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON machine files:
//
//   {
//     "alphabet": ["0", "1"],
//     "states": ["A", "B"],
//     "transitions": [{"from": "A", "symbol": "0", "to": "B", "p": 0.5}, ...]
//   }
//
// Unknown keys are rejected at both levels.

#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qcorr/process.hpp"

namespace qcorr {

/// Malformed or unreadable machine file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& obj, const std::set<std::string>& allowed, const char* where) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) throw ParseError(std::string("machine file: unknown field '") + key + "' in " + where);
  }
}

inline std::vector<std::string> string_list(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(std::string("machine file: missing field '") + key + "'");
  const auto& arr = doc.at(key);
  if (!arr.is_array()) throw ParseError(std::string("machine file: '") + key + "' must be an array");
  std::vector<std::string> out;
  for (const auto& v : arr) {
    if (!v.is_string()) throw ParseError(std::string("machine file: '") + key + "' entries must be strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace detail

inline EpsilonMachine machine_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("machine file: top level must be an object");
  detail::reject_unknown_keys(doc, {"alphabet", "states", "transitions"}, "machine");

  auto symbols = detail::string_list(doc, "alphabet");
  auto states = detail::string_list(doc, "states");
  if (!doc.contains("transitions") || !doc.at("transitions").is_array()) {
    throw ParseError("machine file: 'transitions' must be an array");
  }

  Alphabet alphabet;
  try {
    alphabet = Alphabet(std::move(symbols));
  } catch (const ContractViolation& e) {
    throw ParseError(std::string("machine file: ") + e.what());
  }

  auto lookup = [&](const std::vector<std::string>& labels, const nlohmann::json& v, const char* what) {
    if (!v.is_string()) throw ParseError(std::string("machine file: transition '") + what + "' must be a string");
    const auto label = v.get<std::string>();
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw ParseError(std::string("machine file: unknown ") + what + " '" + label + "'");
    return static_cast<std::size_t>(it - labels.begin());
  };

  std::vector<Transition> transitions;
  for (const auto& t : doc.at("transitions")) {
    if (!t.is_object()) throw ParseError("machine file: transitions must be objects");
    detail::reject_unknown_keys(t, {"from", "symbol", "to", "p"}, "transition");
    for (const char* key : {"from", "symbol", "to", "p"})
      if (!t.contains(key)) throw ParseError(std::string("machine file: transition missing '") + key + "'");
    if (!t.at("p").is_number()) throw ParseError("machine file: transition 'p' must be a number");
    transitions.push_back({lookup(states, t.at("from"), "from"), lookup(alphabet.symbols(), t.at("symbol"), "symbol"),
                           lookup(states, t.at("to"), "to"), t.at("p").get<double>()});
  }

  try {
    return EpsilonMachine(std::move(states), std::move(alphabet), transitions);
  } catch (const ContractViolation& e) {
    throw ParseError(std::string("machine file: ") + e.what());
  }
}

inline nlohmann::json machine_to_json(const EpsilonMachine& m) {
  nlohmann::json doc;
  doc["alphabet"] = m.alphabet().symbols();
  doc["states"] = m.states();
  auto& arr = doc["transitions"] = nlohmann::json::array();
  for (const auto& t : m.transitions()) {
    arr.push_back({{"from", m.states()[t.from]},
                   {"symbol", m.alphabet()[t.symbol]},
                   {"to", m.states()[t.to]},
                   {"p", t.probability}});
  }
  return doc;
}

inline EpsilonMachine parse_machine(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("machine file: ") + e.what());
  }
  return machine_from_json(doc);
}

inline EpsilonMachine load_machine(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open machine file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_machine(buf.str());
}

inline std::string format_machine(const EpsilonMachine& m) { return machine_to_json(m).dump(2) + "\n"; }

}  // namespace qcorr
