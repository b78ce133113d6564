#pragma once

// JSON forms of field, material and patch specifications.

#include <nlohmann/json.hpp>

#include "costress/constitutive.hpp"
#include "costress/field.hpp"
#include "costress/surface.hpp"

namespace costress {

using json = nlohmann::json;

// Raised for malformed or inconsistent configuration documents.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Vec3 vec3_from_json(const json& j, const char* what);
Mat3 mat3_from_json(const json& j, const char* what);
json to_json(const Vec3& v);
json to_json(const Mat3& m);

Box box_from_json(const json& j);
json to_json(const Box& b);

// {"family": "zero" | "constant" | "affine" | "rigid" | "polynomial" | "conformal"
//  | "torsion_free_example", ...parameters, "domain": {"lo": [...], "hi": [...]}}
FieldPtr field_from_json(const json& j);
// Parameters of built-in families; throws InvalidArgument for other fields.
json field_to_json(const DisplacementField& f);

// {"mu", "lambda", "L_c", "alpha1", "alpha2" (alias "alpha3"), "mu_c", "regime"}
MaterialParams material_from_json(const json& j);
json to_json(const MaterialParams& p);

ConformalParams conformal_from_json(const json& j);
json to_json(const ConformalParams& p);

// {"kind": "box_face", "axis": 0..2, "side": "lower" | "upper", "domain": {...}}
// {"kind": "spherical_cap", "center": [...], "radius": r, "theta_max": t}
PatchPtr patch_from_json(const json& j);
json patch_to_json(const SurfacePatch& p);

// Throws ConfigError naming the first key of `j` outside `allowed`.
void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                         const char* where);

}  // namespace costress
