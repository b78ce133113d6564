#include "costress/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "costress/errors.hpp"

namespace costress {

namespace {

double number(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(std::string("'") + key + "' must be finite");
  return d;
}

void require_object(const json& j, const char* what) {
  if (!j.is_object()) throw ConfigError(std::string(what) + " must be a JSON object");
}

}  // namespace

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                         const char* where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return it.key() == k; });
    if (!known) throw ConfigError(std::string("unknown key '") + it.key() + "' in " + where);
  }
}

Vec3 vec3_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3)
    throw ConfigError(std::string(what) + " must be an array of three numbers");
  Vec3 v;
  for (int i = 0; i < 3; ++i) {
    if (!j[i].is_number()) throw ConfigError(std::string(what) + " must contain numbers");
    v[i] = j[i].get<double>();
    if (!std::isfinite(v[i])) throw ConfigError(std::string(what) + " must be finite");
  }
  return v;
}

Mat3 mat3_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3)
    throw ConfigError(std::string(what) + " must be a 3x3 array of rows");
  Mat3 m;
  for (int i = 0; i < 3; ++i) {
    const Vec3 r = vec3_from_json(j[i], what);
    for (int k = 0; k < 3; ++k) m(i, k) = r[k];
  }
  return m;
}

json to_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

json to_json(const Mat3& m) {
  return json::array({to_json(m.row(0)), to_json(m.row(1)), to_json(m.row(2))});
}

Box box_from_json(const json& j) {
  require_object(j, "domain");
  reject_unknown_keys(j, {"lo", "hi"}, "domain");
  Box b;
  if (j.contains("lo")) b.lo = vec3_from_json(j.at("lo"), "domain.lo");
  if (j.contains("hi")) b.hi = vec3_from_json(j.at("hi"), "domain.hi");
  for (int a = 0; a < 3; ++a)
    if (!(b.hi[a] > b.lo[a])) throw ConfigError("domain: hi must exceed lo in every direction");
  return b;
}

json to_json(const Box& b) { return {{"lo", to_json(b.lo)}, {"hi", to_json(b.hi)}}; }

ConformalParams conformal_from_json(const json& j) {
  ConformalParams p;
  if (j.contains("W_hat")) p.W_axl = vec3_from_json(j.at("W_hat"), "W_hat");
  if (j.contains("A_hat")) p.A_axl = vec3_from_json(j.at("A_hat"), "A_hat");
  if (j.contains("b_hat")) p.b = vec3_from_json(j.at("b_hat"), "b_hat");
  p.p = number(j, "p_hat", 0.0);
  return p;
}

json to_json(const ConformalParams& p) {
  return {{"W_hat", to_json(p.W_axl)},
          {"A_hat", to_json(p.A_axl)},
          {"b_hat", to_json(p.b)},
          {"p_hat", p.p}};
}

FieldPtr field_from_json(const json& j) {
  require_object(j, "field");
  if (!j.contains("family") || !j.at("family").is_string())
    throw ConfigError("field: 'family' (string) is required");
  const std::string family = j.at("family").get<std::string>();
  const Box domain = j.contains("domain") ? box_from_json(j.at("domain")) : Box{};

  FieldPtr f;
  if (family == "zero") {
    reject_unknown_keys(j, {"family", "domain"}, "zero field");
    f = make_zero();
  } else if (family == "constant") {
    reject_unknown_keys(j, {"family", "domain", "value"}, "constant field");
    f = make_constant(j.contains("value") ? vec3_from_json(j.at("value"), "value") : Vec3{});
  } else if (family == "affine") {
    reject_unknown_keys(j, {"family", "domain", "matrix", "offset"}, "affine field");
    f = make_affine(j.contains("matrix") ? mat3_from_json(j.at("matrix"), "matrix") : Mat3{},
                    j.contains("offset") ? vec3_from_json(j.at("offset"), "offset") : Vec3{});
  } else if (family == "rigid") {
    reject_unknown_keys(j, {"family", "domain", "omega", "offset"}, "rigid field");
    f = make_rigid(j.contains("omega") ? vec3_from_json(j.at("omega"), "omega") : Vec3{},
                   j.contains("offset") ? vec3_from_json(j.at("offset"), "offset") : Vec3{});
  } else if (family == "polynomial") {
    reject_unknown_keys(j, {"family", "domain", "seed", "degree"}, "polynomial field");
    if (!j.contains("seed") || !j.at("seed").is_number_unsigned())
      throw ConfigError("polynomial field: 'seed' (unsigned integer) is required");
    const int degree = j.contains("degree") ? j.at("degree").get<int>() : 4;
    if (degree < 0 || degree > 6) throw ConfigError("polynomial field: degree must be in 0..6");
    f = make_polynomial(j.at("seed").get<std::uint64_t>(), degree);
  } else if (family == "conformal") {
    reject_unknown_keys(j, {"family", "domain", "W_hat", "A_hat", "b_hat", "p_hat"},
                        "conformal field");
    f = make_conformal(conformal_from_json(j));
  } else if (family == "torsion_free_example") {
    reject_unknown_keys(j, {"family", "domain"}, "torsion_free_example field");
    f = make_torsion_free_example();
  } else if (family == "callable") {
    throw ConfigError("field: callables cannot be described in a configuration file");
  } else {
    throw ConfigError("field: unknown family '" + family + "'");
  }
  std::const_pointer_cast<DisplacementField>(f)->set_domain(domain);
  return f;
}

json field_to_json(const DisplacementField& f) {
  json j{{"family", f.family()}};
  if (const auto* p = dynamic_cast<const PolynomialField*>(&f)) {
    const auto& o = p->origin();
    if (f.family() == "polynomial") {
      j["seed"] = o.seed;
      j["degree"] = p->degree();
    } else if (f.family() == "constant") {
      j["value"] = to_json(o.offset);
    } else if (f.family() == "affine") {
      j["matrix"] = to_json(o.matrix);
      j["offset"] = to_json(o.offset);
    } else if (f.family() == "rigid") {
      j["omega"] = to_json(axl(o.matrix));
      j["offset"] = to_json(o.offset);
    }
  } else if (const auto* c = dynamic_cast<const ConformalField*>(&f)) {
    const json params = to_json(c->params());
    for (auto& [k, v] : params.items()) j[k] = v;
  } else {
    throw InvalidArgument("field family '" + f.family() + "' is not serializable");
  }
  j["domain"] = to_json(f.domain());
  return j;
}

MaterialParams material_from_json(const json& j) {
  require_object(j, "material");
  reject_unknown_keys(j, {"mu", "lambda", "L_c", "alpha1", "alpha2", "alpha3", "mu_c", "regime"},
                      "material");
  MaterialParams p;
  std::string regime;
  if (j.contains("regime")) {
    if (!j.at("regime").is_string()) throw ConfigError("material: 'regime' must be a string");
    regime = j.at("regime").get<std::string>();
    try {
      p = MaterialParams::for_regime(regime, p.mu, p.lambda, p.L_c);
    } catch (const InvalidArgument& e) {
      throw ConfigError(std::string("material: ") + e.what());
    }
  }
  p.mu = number(j, "mu", p.mu);
  p.lambda = number(j, "lambda", p.lambda);
  p.L_c = number(j, "L_c", p.L_c);
  p.alpha1 = number(j, "alpha1", p.alpha1);
  p.mu_c = number(j, "mu_c", p.mu_c);
  if (j.contains("alpha2") && j.contains("alpha3") &&
      number(j, "alpha2", 0.0) != number(j, "alpha3", 0.0))
    throw ConfigError("material: 'alpha2' and its alias 'alpha3' disagree");
  p.alpha2 = number(j, "alpha2", number(j, "alpha3", p.alpha2));
  try {
    p.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("material: ") + e.what());
  }
  if (!regime.empty() && p.regime() != regime && !(regime != "classical" && p.L_c == 0.0))
    throw ConfigError("material: parameters describe the '" + p.regime() +
                      "' regime, not '" + regime + "'");
  return p;
}

json to_json(const MaterialParams& p) {
  return {{"mu", p.mu},         {"lambda", p.lambda}, {"L_c", p.L_c},
          {"alpha1", p.alpha1}, {"alpha2", p.alpha2}, {"mu_c", p.mu_c},
          {"regime", p.regime()}};
}

PatchPtr patch_from_json(const json& j) {
  require_object(j, "patch");
  const std::string kind = j.value("kind", std::string());
  try {
    if (kind == "box_face") {
      reject_unknown_keys(j, {"kind", "axis", "side", "domain"}, "box_face patch");
      const int axis = j.value("axis", 2);
      const std::string side = j.value("side", std::string("upper"));
      if (side != "upper" && side != "lower")
        throw ConfigError("box_face: 'side' must be 'upper' or 'lower'");
      const Box b = j.contains("domain") ? box_from_json(j.at("domain")) : Box{};
      return std::make_shared<BoxFace>(b, axis, side == "upper");
    }
    if (kind == "spherical_cap") {
      reject_unknown_keys(j, {"kind", "center", "radius", "theta_max"}, "spherical_cap patch");
      const Vec3 c = j.contains("center") ? vec3_from_json(j.at("center"), "center")
                                          : Vec3{0.5, 0.5, 0.5};
      return std::make_shared<SphericalCap>(c, number(j, "radius", 0.4),
                                            number(j, "theta_max", 0.5 * std::numbers::pi));
    }
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("patch: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("patch: ") + e.what());
  }
  throw ConfigError("patch: 'kind' must be 'box_face' or 'spherical_cap'");
}

json patch_to_json(const SurfacePatch& p) {
  if (const auto* f = dynamic_cast<const BoxFace*>(&p))
    return {{"kind", "box_face"},
            {"axis", f->axis()},
            {"side", f->upper() ? "upper" : "lower"},
            {"domain", to_json(f->box())}};
  if (const auto* c = dynamic_cast<const SphericalCap*>(&p))
    return {{"kind", "spherical_cap"},
            {"center", to_json(c->center())},
            {"radius", c->radius()},
            {"theta_max", c->theta_max()}};
  throw InvalidArgument("unknown patch type");
}

}  // namespace costress
