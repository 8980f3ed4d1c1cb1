#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "roughkit/field.hpp"
#include "roughkit/path.hpp"
#include "roughkit/roughpath.hpp"

// File formats:
//   paths        CSV with header t,x1,...,xd
//   fields       JSON {grid, kind, rows, cols, entries}  (flattened upper triangle)
//   rough paths  JSON {grid, X, XX}
// Floats are serialized with 17 significant digits so a round trip is exact on
// one platform; bit-exactness across platforms is not promised.

namespace roughkit::io {

using json = nlohmann::json;

std::string format_double(double v);

void write_path_csv(const GridPath& path, const std::string& filename);
GridPath read_path_csv(const std::string& filename);

json scalar_field_to_json(const ScalarField2& f);
ScalarField2 scalar_field_from_json(const json& j);

json tensor_field_to_json(const TensorField2& f);
TensorField2 tensor_field_from_json(const json& j);

json roughpath_to_json(const rough::RoughPath& p);
rough::RoughPath roughpath_from_json(const json& j);

void write_json(const json& j, const std::string& filename);
json read_json(const std::string& filename);

/// FNV-1a of the file bytes, hex-encoded; used by run manifests.
std::string file_hash(const std::string& filename);

} // namespace roughkit::io
