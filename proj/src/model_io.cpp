#include "nbmu/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nbmu/errors.hpp"
#include "nbmu/parser.hpp"

namespace nbmu {

namespace {

using Json = nlohmann::ordered_json;

std::vector<std::string> sorted_names(const NeighborhoodModel& m, const StateSet& z) {
  std::vector<std::string> out;
  for (auto i : members(z)) out.push_back(m.states[i]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::string write_model(const NeighborhoodModel& m) {
  Json doc;
  auto names = m.states;
  std::sort(names.begin(), names.end());
  doc["states"] = names;
  Json nbhd = Json::object();
  for (const auto& name : names) {
    auto s = m.state_id(name);
    std::vector<std::vector<std::string>> gs;
    for (const auto& g : m.gens[s]) gs.push_back(sorted_names(m, g));
    std::sort(gs.begin(), gs.end());
    nbhd[name] = gs;
  }
  doc["neighborhoods"] = std::move(nbhd);
  Json val = Json::object();
  for (const auto& [v, z] : m.valuation) val[v] = sorted_names(m, z);
  doc["valuation"] = std::move(val);
  if (m.point) doc["point"] = m.states[*m.point];
  return doc.dump();
}

NeighborhoodModel read_model(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(e.what(), 1, e.byte);
  }
  std::vector<std::string> problems;
  auto fail = [&](std::string msg) { throw ValidationError({std::move(msg)}); };

  if (!doc.is_object()) fail("model document must be an object");
  if (!doc.contains("states") || !doc["states"].is_array()) fail("\"states\" must be an array");
  if (!doc.contains("neighborhoods") || !doc["neighborhoods"].is_object())
    fail("\"neighborhoods\" must be an object");

  NeighborhoodModel m;
  for (const auto& s : doc["states"]) {
    if (!s.is_string()) fail("state names must be strings");
    m.states.push_back(s.get<std::string>());
  }
  const auto n = m.size();

  auto read_set = [&](const Json& arr, const std::string& where) -> std::optional<StateSet> {
    if (!arr.is_array()) {
      problems.push_back(where + " must be an array of state names");
      return std::nullopt;
    }
    StateSet z(n);
    bool ok = true;
    for (const auto& e : arr) {
      auto id = e.is_string() ? m.find_state(e.get<std::string>()) : std::nullopt;
      if (!id) {
        problems.push_back(where + " mentions " + e.dump() + ", which is not a state");
        ok = false;
        continue;
      }
      z.set(*id);
    }
    return ok ? std::optional<StateSet>(z) : std::nullopt;
  };

  const auto& nbhd = doc["neighborhoods"];
  m.gens.assign(n, {});
  for (auto it = nbhd.begin(); it != nbhd.end(); ++it) {
    if (!m.find_state(it.key())) problems.push_back("neighborhoods given for unknown state '" + it.key() + "'");
  }
  for (StateId s = 0; s < n; ++s) {
    const auto& name = m.states[s];
    if (!nbhd.contains(name)) {
      problems.push_back("no neighborhood entry for state '" + name + "'");
      continue;
    }
    const auto& fam = nbhd[name];
    if (!fam.is_array()) {
      problems.push_back("neighborhoods of '" + name + "' must be an array");
      continue;
    }
    for (const auto& g : fam)
      if (auto z = read_set(g, "a generator of '" + name + "'")) m.gens[s].push_back(*z);
  }

  if (doc.contains("valuation")) {
    const auto& val = doc["valuation"];
    if (!val.is_object()) fail("\"valuation\" must be an object");
    for (auto it = val.begin(); it != val.end(); ++it) {
      if (!is_valid_identifier(it.key())) problems.push_back("'" + it.key() + "' is not a valid variable name");
      if (auto z = read_set(it.value(), "valuation of '" + it.key() + "'")) m.valuation[it.key()] = *z;
    }
  }
  if (doc.contains("point")) {
    const auto& p = doc["point"];
    auto id = p.is_string() ? m.find_state(p.get<std::string>()) : std::nullopt;
    if (!id)
      problems.push_back("point " + p.dump() + " is not a state");
    else
      m.point = *id;
  }
  if (!problems.empty()) throw ValidationError(std::move(problems));
  require_valid(m);
  return m;
}

NeighborhoodModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return read_model(buf.str());
}

void save_model(const std::string& path, const NeighborhoodModel& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << write_model(m) << '\n';
}

}  // namespace nbmu
