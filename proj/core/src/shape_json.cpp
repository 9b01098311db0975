#include "riesz/shape_json.hpp"

#include <Eigen/Geometry>
#include <fstream>

#include "riesz/errors.hpp"

namespace riesz {

using nlohmann::json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

double number(const json& obj, const char* key) {
  if (!obj.contains(key)) throw ValidationError(std::string("missing parameter '") + key + "'");
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ValidationError(std::string("parameter '") + key + "' must be a number");
  return v.get<double>();
}

Vec3 vector3(const json& v, const char* what) {
  if (!v.is_array() || v.size() < 2 || v.size() > 3) {
    throw ValidationError(std::string(what) + " must be an array of 2 or 3 numbers");
  }
  Vec3 out = Vec3::Zero();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ValidationError(std::string(what) + " must hold numbers");
    out[static_cast<Eigen::Index>(i)] = v[i].get<double>();
  }
  return out;
}

Placement placement_of(const json& params) {
  Placement p;
  if (params.contains("rotation")) {
    const auto& r = params.at("rotation");
    if (!r.is_object()) throw ValidationError("rotation must be {axis, angle}");
    const Vec3 axis = r.contains("axis") ? vector3(r.at("axis"), "rotation axis") : Vec3::UnitZ();
    p = Placement::rotation_about(axis, number(r, "angle"));
  }
  if (params.contains("center")) p.offset = vector3(params.at("center"), "center");
  return p;
}

json placement_json(const Placement& p) {
  json out = json::object();
  if (!p.offset.isZero(0.0)) out["center"] = {p.offset.x(), p.offset.y(), p.offset.z()};
  if (!p.rotation.isIdentity(0.0)) {
    const Eigen::AngleAxisd aa(p.rotation);
    out["rotation"] = {{"axis", {aa.axis().x(), aa.axis().y(), aa.axis().z()}},
                       {"angle", aa.angle()}};
  }
  return out;
}

Vec2 vector2(const json& v, const char* what) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ValidationError(std::string(what) + " must be [x, y]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

PlanarPiece piece_from_json(const json& p) {
  const std::string type = p.value("type", "");
  if (type == "polygon") {
    ConvexPolygon poly;
    if (!p.contains("vertices") || !p.at("vertices").is_array()) {
      throw ValidationError("polygon needs a vertices array");
    }
    for (const auto& v : p.at("vertices")) poly.vertices.push_back(vector2(v, "vertex"));
    return poly;
  }
  if (type == "sector") {
    AnnularSector s;
    if (p.contains("center")) s.center = vector2(p.at("center"), "sector center");
    s.r_inner = p.contains("r_inner") ? number(p, "r_inner") : 0.0;
    s.r_outer = number(p, "r_outer");
    s.theta0 = number(p, "theta0");
    s.theta1 = number(p, "theta1");
    return s;
  }
  throw ValidationError("unknown planar piece type '" + type + "'");
}

std::vector<Component> components_of(const json& doc, const Placement& outer, int& ambient) {
  if (!doc.is_object()) throw ValidationError("shape descriptor must be a JSON object");
  if (!doc.contains("kind") || !doc.at("kind").is_string()) {
    throw ValidationError("shape descriptor needs a string 'kind'");
  }
  const std::string kind = doc.at("kind").get<std::string>();
  const json params = doc.value("params", json::object());
  if (!params.is_object()) throw ValidationError("params must be an object");
  const Placement place = placement_of(params).then(outer);
  auto amb = [&](int def) { return doc.value("ambient_dim", def); };

  if (kind == "union") {
    if (!params.contains("components") || !params.at("components").is_array()) {
      throw ValidationError("union needs params.components");
    }
    std::vector<Component> out;
    for (const auto& c : params.at("components")) {
      int a = 0;
      auto part = components_of(c, place, a);
      if (ambient != 0 && a != ambient) {
        throw ValidationError("union components must share the ambient dimension");
      }
      ambient = a;
      out.insert(out.end(), part.begin(), part.end());
    }
    if (doc.contains("ambient_dim")) ambient = amb(ambient);
    return out;
  }
  Primitive prim;
  if (kind == "circle") {
    prim = Circle{number(params, "radius")};
    ambient = amb(2);
  } else if (kind == "ellipse") {
    prim = Ellipse{number(params, "a"), number(params, "b")};
    ambient = amb(2);
  } else if (kind == "sphere") {
    prim = Sphere{number(params, "radius")};
    ambient = amb(3);
  } else if (kind == "torus") {
    prim = Torus{number(params, "major"), number(params, "minor")};
    ambient = amb(3);
  } else if (kind == "ball") {
    const int d = params.value("dim", 3);
    prim = Ball{d, number(params, "radius")};
    ambient = amb(d);
  } else if (kind == "disk") {
    prim = Ball{2, number(params, "radius")};
    ambient = amb(2);
  } else {
    throw ValidationError("unknown shape kind '" + kind + "'");
  }
  return {Component{prim, place}};
}

}  // namespace

Shape shape_from_json(const json& doc) {
  try {
    if (!doc.is_object()) throw ValidationError("shape descriptor must be a JSON object");
    const std::string label = doc.value("label", "");
    Shape s = [&] {
      if (doc.value("kind", "") == "planar_composite") {
        const json params = doc.value("params", json::object());
        if (!params.contains("pieces") || !params.at("pieces").is_array()) {
          throw ValidationError("planar_composite needs params.pieces");
        }
        PlanarRegion region;
        for (const auto& p : params.at("pieces")) region.push_back(piece_from_json(p));
        return Shape::from_region(std::move(region));
      }
      int ambient = 0;
      auto comps = components_of(doc, Placement{}, ambient);
      return Shape::from_components(std::move(comps), ambient);
    }();
    s = s.with_label(label.empty() ? doc.value("kind", "") : label);
    if (doc.contains("smoothness")) s = s.with_smoothness(doc.at("smoothness").get<int>());
    return s;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed shape descriptor: ") + e.what());
  }
}

PlanarRegion region_from_json(const json& pieces) {
  if (!pieces.is_array()) throw ValidationError("pieces must be an array");
  PlanarRegion region;
  for (const auto& p : pieces) region.push_back(piece_from_json(p));
  return region;
}

json region_to_json(const PlanarRegion& region) {
  json pieces = json::array();
  for (const auto& piece : region) {
    std::visit(Overloaded{[&](const ConvexPolygon& p) {
                            json v = json::array();
                            for (const auto& q : p.vertices) v.push_back({q.x(), q.y()});
                            pieces.push_back({{"type", "polygon"}, {"vertices", v}});
                          },
                          [&](const AnnularSector& s) {
                            pieces.push_back({{"type", "sector"},
                                              {"center", {s.center.x(), s.center.y()}},
                                              {"r_inner", s.r_inner},
                                              {"r_outer", s.r_outer},
                                              {"theta0", s.theta0},
                                              {"theta1", s.theta1}});
                          }},
               piece);
  }
  return pieces;
}

json to_json(const Shape& shape) {
  json doc;
  if (shape.kind() == ShapeKind::kPlanarComposite) {
    const json pieces = region_to_json(shape.region());
    doc = {{"kind", "planar_composite"}, {"params", {{"pieces", pieces}}}};
  } else {
    auto one = [&](const Component& c) {
      json params = placement_json(c.placement);
      std::string kind;
      std::visit(Overloaded{[&](const Circle& p) {
                              kind = "circle";
                              params["radius"] = p.radius;
                            },
                            [&](const Ellipse& p) {
                              kind = "ellipse";
                              params["a"] = p.a;
                              params["b"] = p.b;
                            },
                            [&](const Sphere& p) {
                              kind = "sphere";
                              params["radius"] = p.radius;
                            },
                            [&](const Torus& p) {
                              kind = "torus";
                              params["major"] = p.major;
                              params["minor"] = p.minor;
                            },
                            [&](const Ball& p) {
                              kind = "ball";
                              params["dim"] = p.dim;
                              params["radius"] = p.radius;
                            }},
                 c.primitive);
      return json{{"kind", kind}, {"params", params}, {"ambient_dim", shape.ambient_dim()}};
    };
    if (shape.components().size() == 1) {
      doc = one(shape.components().front());
    } else {
      json comps = json::array();
      for (const auto& c : shape.components()) comps.push_back(one(c));
      doc = {{"kind", "union"}, {"params", {{"components", comps}}}};
    }
  }
  doc["ambient_dim"] = shape.ambient_dim();
  doc["smoothness"] = shape.smoothness();
  if (!shape.label().empty()) doc["label"] = shape.label();
  return doc;
}

Shape load_shape(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open shape file " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ValidationError("cannot parse " + path.string() + ": " + e.what());
  }
  return shape_from_json(doc);
}

}  // namespace riesz
