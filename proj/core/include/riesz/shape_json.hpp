#pragma once

#include <filesystem>
#include <json.hpp>

#include "riesz/shapes.hpp"

namespace riesz {

// Shape descriptor documents:
//
//   {"kind": "sphere", "params": {"radius": 1.0,
//                                 "center": [0, 0, 0],
//                                 "rotation": {"axis": [0, 0, 1], "angle": 0.0}},
//    "ambient_dim": 3, "smoothness": 64, "label": "unit sphere"}
//
// kinds and their params:
//   circle {radius}            ellipse {a, b}        (ambient_dim 2 or 3)
//   sphere {radius}            torus {major, minor}
//   ball {dim, radius}         disk {radius}
//   union {components: [descriptor, ...]}  (component placements compose
//                                           with the union's own placement)
//   planar_composite {pieces: [{"type": "polygon", "vertices": [[x, y], ...]},
//                              {"type": "sector", "center": [x, y],
//                               "r_inner", "r_outer", "theta0", "theta1"}]}
// Angles are in radians. center, rotation, ambient_dim, smoothness and label
// are optional.

Shape shape_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const Shape& shape);

/// The pieces array of a planar_composite descriptor.
PlanarRegion region_from_json(const nlohmann::json& pieces);
nlohmann::json region_to_json(const PlanarRegion& region);

Shape load_shape(const std::filesystem::path& path);

}  // namespace riesz
