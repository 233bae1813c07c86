#pragma once

#include <map>
#include <sstream>
#include <string>

#include <json.hpp>

#include "unav/population.hpp"

namespace unav {

// Canonical JSON form: vertices ordered by birthdate, edges by (src, dst).
// Optional per-vertex fields are omitted when absent. A population with an
// empty boundary is complete.
inline nlohmann::ordered_json population_to_json(const Population& p) {
  nlohmann::ordered_json j;
  j["n"] = p.gender_count();
  j["vertices"] = nlohmann::ordered_json::array();
  for (const Vertex& v : p.vertices()) {
    nlohmann::ordered_json jv;
    jv["id"] = v.id;
    jv["birthdate"] = v.birthdate;
    if (v.gender) jv["gender"] = v.gender->value;
    if (v.generation) jv["generation"] = *v.generation;
    j["vertices"].push_back(std::move(jv));
  }
  j["edges"] = nlohmann::ordered_json::array();
  for (const Edge& e : p.edges()) {
    j["edges"].push_back(nlohmann::ordered_json{
        {"src", e.src}, {"dst", e.dst}, {"gender", e.gender.value}});
  }
  j["boundary"] = nlohmann::ordered_json::array();
  for (const VertexId& id : p.boundary()) j["boundary"].push_back(id);
  return j;
}

inline Population population_from_json(const nlohmann::json& j) {
  try {
    PopulationBuilder b(j.at("n").get<int>());
    for (const auto& jv : j.at("vertices")) {
      std::optional<Gender> g;
      if (jv.contains("gender") && !jv["gender"].is_null())
        g = Gender{jv["gender"].get<int>()};
      std::optional<int> gen;
      if (jv.contains("generation") && !jv["generation"].is_null())
        gen = jv["generation"].get<int>();
      b.add_vertex(jv.at("id").get<std::string>(), jv.at("birthdate").get<std::int64_t>(), g, gen);
    }
    for (const auto& je : j.at("edges"))
      b.add_edge(je.at("src").get<std::string>(), je.at("dst").get<std::string>(),
                 Gender{je.at("gender").get<int>()});
    if (j.contains("boundary"))
      for (const auto& jid : j["boundary"]) b.mark_boundary(jid.get<std::string>());
    return b.build();
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("population JSON: ") + e.what());
  }
}

inline Population population_from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw parse_error("population JSON: malformed document");
  return population_from_json(j);
}

// DOT export: box = gender 1 (M), ellipse = gender 2 (F), other/unknown
// genders get an octagon; edges colored by gender; one rank per generation.
inline std::string population_to_dot(const Population& p, const std::string& name = "population") {
  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};
  auto color = [](int gender_value) {
    return kPalette[(gender_value - 1) % 8];
  };
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n";
  os << "  rankdir=TB;\n";
  for (const Vertex& v : p.vertices()) {
    const char* shape = "octagon";
    if (v.gender && v.gender->value == 1) shape = "box";
    if (v.gender && v.gender->value == 2) shape = "ellipse";
    os << "  \"" << v.id << "\" [shape=" << shape << "];\n";
  }
  std::map<int, std::vector<VertexId>> ranks;
  for (const Vertex& v : p.vertices())
    if (v.generation) ranks[*v.generation].push_back(v.id);
  for (const auto& [gen, ids] : ranks) {
    os << "  { rank=same;";
    for (const VertexId& id : ids) os << " \"" << id << "\";";
    os << " }\n";
  }
  for (const Edge& e : p.edges()) {
    os << "  \"" << e.src << "\" -> \"" << e.dst << "\" [color=\"" << color(e.gender.value)
       << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace unav
