// SPDX-License-Identifier: Apache-2.0
#include "rackray/scene_config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rackray/errors.hpp"

namespace rackray {

namespace {

using nlohmann::json;

constexpr std::string_view kPresetPrefix = "preset:";
constexpr std::string_view kPaperDefault = "paper-default";

double number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError("scene config: '" + key + "' must be a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& key) {
  if (!j.is_number_integer()) throw ConfigError("scene config: '" + key + "' must be an integer");
  return j.get<int>();
}

Material parse_material(const json& j, const std::string& key) {
  if (!j.is_object()) throw ConfigError("scene config: '" + key + "' must be an object");
  Material m;
  for (const auto& [k, v] : j.items()) {
    const std::string path = key + "." + k;
    if (k == "kind") {
      if (!v.is_string()) throw ConfigError("scene config: '" + path + "' must be a string");
      const auto kind = v.get<std::string>();
      if (kind == "pec") {
        m.kind = MaterialKind::Pec;
      } else if (kind == "dielectric") {
        m.kind = MaterialKind::Dielectric;
      } else {
        throw ConfigError("scene config: '" + path + "' must be \"pec\" or \"dielectric\"");
      }
    } else if (k == "eps_r") {
      m.eps_r = number(v, path);
    } else if (k == "sigma") {
      m.sigma = number(v, path);
    } else if (k == "roughness_dh") {
      m.roughness_dh = number(v, path);
    } else {
      throw ConfigError("scene config: unknown key '" + path + "'");
    }
  }
  return m;
}

json material_json(const Material& m) {
  return {{"kind", m.kind == MaterialKind::Pec ? "pec" : "dielectric"},
          {"eps_r", m.eps_r},
          {"sigma", m.sigma},
          {"roughness_dh", m.roughness_dh}};
}

}  // namespace

WarehouseParams parse_warehouse_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scene config: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("scene config: top level must be an object");

  WarehouseParams p;
  if (auto it = doc.find("preset"); it != doc.end()) {
    if (!it->is_string() || it->get<std::string>() != kPaperDefault) {
      throw ConfigError("scene config: unknown preset (only \"paper-default\" is defined)");
    }
  }
  for (const auto& [key, v] : doc.items()) {
    if (key == "preset") continue;
    if (key == "rack_w") p.rack_w = number(v, key);
    else if (key == "rack_d") p.rack_d = number(v, key);
    else if (key == "rack_h") p.rack_h = number(v, key);
    else if (key == "ground_clearance") p.ground_clearance = number(v, key);
    else if (key == "intra_gap") p.intra_gap = number(v, key);
    else if (key == "cluster_rows") p.cluster_rows = integer(v, key);
    else if (key == "cluster_cols") p.cluster_cols = integer(v, key);
    else if (key == "corridor_w") p.corridor_w = number(v, key);
    else if (key == "cluster_grid") {
      if (!v.is_array() || v.size() != 2) throw ConfigError("scene config: 'cluster_grid' must be [nx, ny]");
      p.cluster_grid = {integer(v[0], key), integer(v[1], key)};
    } else if (key == "rack_material") p.rack_material = parse_material(v, key);
    else if (key == "floor") p.floor = parse_material(v, key);
    else if (key == "floor_thickness") p.floor_thickness = number(v, key);
    else if (key == "margin_x") p.margin_x = number(v, key);
    else if (key == "margin_y") p.margin_y = number(v, key);
    else throw ConfigError("scene config: unknown key '" + key + "'");
  }
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("scene config: ") + e.what());
  }
  return p;
}

WarehouseParams load_warehouse(const std::string& spec) {
  if (spec.rfind(kPresetPrefix, 0) == 0) {
    if (spec.substr(kPresetPrefix.size()) != kPaperDefault) {
      throw ConfigError("unknown scene preset '" + spec + "'");
    }
    return WarehouseParams{};
  }
  std::ifstream in(spec);
  if (!in) throw IoError("cannot read scene file " + spec);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_warehouse_json(buf.str());
}

std::string warehouse_to_json(const WarehouseParams& p) {
  const json doc = {{"rack_w", p.rack_w},
                    {"rack_d", p.rack_d},
                    {"rack_h", p.rack_h},
                    {"ground_clearance", p.ground_clearance},
                    {"intra_gap", p.intra_gap},
                    {"cluster_rows", p.cluster_rows},
                    {"cluster_cols", p.cluster_cols},
                    {"corridor_w", p.corridor_w},
                    {"cluster_grid", {p.cluster_grid.first, p.cluster_grid.second}},
                    {"rack_material", material_json(p.rack_material)},
                    {"floor", material_json(p.floor)},
                    {"floor_thickness", p.floor_thickness},
                    {"margin_x", p.margin_x},
                    {"margin_y", p.margin_y}};
  return doc.dump(2);
}

}  // namespace rackray
