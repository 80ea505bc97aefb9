#include "qpal/model_json.hpp"

#include <fstream>

#include "qpal/errors.hpp"

namespace qpal {

using nlohmann::json;

namespace {

std::vector<std::string> string_list(const json& j, const std::string& what) {
  if (!j.is_array()) throw ModelError(what + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw ModelError(what + " must be an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

PointedModel pointed_model_from_json(const json& j) {
  if (!j.is_object()) throw ModelError("model must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (key != "agents" && key != "states" && key != "relations" && key != "valuation" &&
        key != "vocabulary" && key != "point")
      throw ModelError("unknown model field '" + key + "'");
  if (!j.contains("states")) throw ModelError("model is missing \"states\"");

  Model::Spec spec;
  spec.states = string_list(j.at("states"), "\"states\"");
  if (j.contains("agents")) spec.agents = string_list(j.at("agents"), "\"agents\"");

  if (j.contains("relations")) {
    const json& rels = j.at("relations");
    if (!rels.is_object()) throw ModelError("\"relations\" must be an object");
    for (const auto& [agent, blocks] : rels.items()) {
      if (!blocks.is_array()) throw ModelError("relation of '" + agent + "' must be a list of blocks");
      Model::BlockList list;
      for (const auto& b : blocks) list.push_back(string_list(b, "block of '" + agent + "'"));
      spec.relations[agent] = list;
    }
  }

  if (j.contains("valuation")) {
    const json& val = j.at("valuation");
    if (!val.is_object()) throw ModelError("\"valuation\" must be an object");
    for (const auto& [p, states] : val.items())
      spec.valuation[p] = string_list(states, "valuation of '" + p + "'");
  }
  if (j.contains("vocabulary"))
    spec.extra_vocabulary = string_list(j.at("vocabulary"), "\"vocabulary\"");

  Model m = Model::build(spec);
  std::size_t point = 0;
  if (j.contains("point")) {
    if (!j.at("point").is_string()) throw ModelError("\"point\" must be a state label");
    point = m.state(j.at("point").get<std::string>());
  }
  return PointedModel(std::move(m), point);
}

PointedModel load_pointed_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ModelError("'" + path + "' is not valid JSON: " + e.what());
  }
  return pointed_model_from_json(j);
}

json to_json(const PointedModel& pm) {
  const Model& m = pm.model;
  auto labels_of = [&](const StateSet& s) {
    json arr = json::array();
    s.for_each([&](std::size_t i) { arr.push_back(m.label(i)); });
    return arr;
  };

  json j;
  j["agents"] = json::array();
  for (const auto& a : m.agents()) j["agents"].push_back(a.name());
  j["states"] = m.labels();
  j["relations"] = json::object();
  for (std::size_t i = 0; i < m.agents().size(); ++i) {
    json blocks = json::array();
    for (const auto& b : m.relation(i).blocks) blocks.push_back(labels_of(b));
    j["relations"][m.agents()[i].name()] = blocks;
  }
  j["valuation"] = json::object();
  for (const auto& [p, ext] : m.valuations()) j["valuation"][p.name()] = labels_of(ext);
  j["vocabulary"] = json::array();
  for (const auto& p : m.vocabulary()) j["vocabulary"].push_back(p.name());
  j["point"] = pm.point_label();
  return j;
}

}  // namespace qpal
