#include "octic/serialize.hpp"

#include <iomanip>
#include <sstream>

namespace octic {

namespace {

template <class Fn>
auto guard(const char* what, Fn fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const SerializationError&) {
    throw;
  } catch (const std::exception& e) {
    throw SerializationError(std::string("malformed ") + what + ": " + e.what());
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SerializationError(std::string("missing field '") + key + "'");
  return j.at(key);
}

Json strings(const std::vector<std::string>& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(s);
  return a;
}

std::string kind_name(SpecialPoint::Kind k) { return k == SpecialPoint::Kind::node ? "node" : "contact"; }

}  // namespace

Json to_json(const Rat& r) { return format_rat(r); }

Json to_json(const QSqrt2& x) { return Json{{"a", to_json(x.a())}, {"b", to_json(x.b())}}; }

Json to_json(const TowerElem& x) {
  Json tower = Json::array();
  std::vector<const Tower*> levels;
  for (const Tower* t = x.tower().get(); t; t = t->parent().get()) levels.push_back(t);
  for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
    Json rad = Json::array();
    for (const auto& c : (*it)->radicand_coeffs()) rad.push_back(to_json(c));
    tower.push_back(rad);
  }
  Json coeffs = Json::array();
  for (const auto& c : x.coeffs()) coeffs.push_back(to_json(c));
  return Json{{"tower", tower}, {"coeffs", coeffs}};
}

Json to_json(const Poly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json ex = Json::array();
    for (int i = 0; i < p.arity(); ++i) ex.push_back(e[i]);
    terms.push_back(Json::array({ex, to_json(c)}));
  }
  return Json{{"arity", p.arity()}, {"terms", terms}};
}

Json to_json(const OcticParams& p) {
  return Json{{"a", to_json(p.a)}, {"b", to_json(p.b)}, {"c", to_json(p.c)}, {"d", to_json(p.d)}, {"e", to_json(p.e)},
              {"f", to_json(p.f)}, {"g", to_json(p.g)}, {"h", to_json(p.h)}, {"i", to_json(p.i)}};
}

Json to_json(const Point& p) {
  Json a = Json::array();
  for (const auto& c : p) a.push_back(to_json(c));
  return a;
}

Json to_json(const PlanePoint& p) { return to_json(Point(p.begin(), p.end())); }

Rat rat_from_json(const Json& j) {
  return guard("rational", [&] {
    if (j.is_number_integer()) return Rat(j.get<long>());
    return parse_rat(j.get<std::string>());
  });
}

QSqrt2 qsqrt2_from_json(const Json& j) {
  if (j.is_string() || j.is_number_integer()) return QSqrt2(rat_from_json(j));
  return QSqrt2(rat_from_json(field(j, "a")), rat_from_json(field(j, "b")));
}

TowerElem tower_elem_from_json(const Json& j) {
  if (j.is_string() || j.is_number_integer() || (j.is_object() && j.contains("a"))) return TowerElem(qsqrt2_from_json(j));
  return guard("tower element", [&] {
    TowerPtr t;
    for (const auto& level : field(j, "tower")) {
      std::vector<QSqrt2> rad;
      for (const auto& c : level) rad.push_back(qsqrt2_from_json(c));
      t = Tower::extend(t, TowerElem::from_coeffs(t, std::move(rad)));
    }
    std::vector<QSqrt2> coeffs;
    for (const auto& c : field(j, "coeffs")) coeffs.push_back(qsqrt2_from_json(c));
    if (coeffs.size() != (std::size_t{1} << tower_depth(t))) throw SerializationError("coefficient count does not match the tower");
    return TowerElem::from_coeffs(t, std::move(coeffs));
  });
}

Poly poly_from_json(const Json& j) {
  return guard("polynomial", [&] {
    const int arity = field(j, "arity").get<int>();
    if (arity < 1 || arity > kMaxArity) throw SerializationError("arity out of range");
    Poly p(arity);
    for (const auto& term : field(j, "terms")) {
      if (!term.is_array() || term.size() != 2 || term[0].size() != static_cast<std::size_t>(arity))
        throw SerializationError("term must be [exponents, coefficient]");
      Exponents e{};
      for (int i = 0; i < arity; ++i) {
        e[i] = term[0][i].get<int>();
        if (e[i] < 0) throw SerializationError("negative exponent");
      }
      p.add_term(e, qsqrt2_from_json(term[1]));
    }
    return p;
  });
}

OcticParams params_from_json(const Json& j) {
  if (!j.is_object()) throw SerializationError("parameter block must be an object");
  const Json& block = j.contains("params") ? j.at("params") : j;
  OcticParams p;
  QSqrt2* slots[] = {&p.a, &p.b, &p.c, &p.d, &p.e, &p.f, &p.g, &p.h, &p.i};
  const char* names[] = {"a", "b", "c", "d", "e", "f", "g", "h", "i"};
  for (const auto& [key, value] : block.items()) {
    int k = 0;
    while (k < 9 && key != names[k]) ++k;
    if (k == 9) throw SerializationError("unknown parameter '" + key + "'");
    *slots[k] = qsqrt2_from_json(value);
  }
  return p;
}

Point point_from_json(const Json& j) {
  if (!j.is_array()) throw SerializationError("point must be an array");
  Point p;
  for (const auto& c : j) p.push_back(tower_elem_from_json(c));
  return p;
}

Json to_json(const NodeCertificate& n) {
  const auto& src = n.candidate.source;
  Json j{{"label", src.label},
         {"plane", plane_name(src.plane)},
         {"kind", kind_name(src.kind)},
         {"plane_point", to_json(src.coords)},
         {"chart", n.candidate.chart == kW ? "w" : "z"},
         {"representative", to_json(n.candidate.point)}};
  if (src.axis) j["axis"] = *src.axis == Axis::W ? "W" : "Z";
  Json partials = Json::array();
  for (const auto& v : n.partials) partials.push_back(to_json(v));
  j["partials"] = partials;
  j["det3"] = to_json(n.hessian.det3);
  j["rank3"] = n.hessian.rank3;
  j["kernel_ok"] = n.hessian.kernel_ok;
  j["orbit_size"] = n.orbit_size;
  j["expected_orbit_size"] = n.expected_orbit_size;
  j["orbit_certified"] = n.orbit_certified;
  j["base"] = n.base;
  if (n.published) j["published_det3"] = to_json(*n.published);
  if (n.ratio) j["ratio_to_published"] = to_json(*n.ratio);
  j["diagnostics"] = strings(n.diagnostics);
  return j;
}

Json to_json(const SurfaceCertificate& c) {
  Json j;
  j["schema"] = c.schema;
  j["pass"] = c.pass;
  j["params"] = to_json(c.params);
  j["F"] = to_json(c.F);
  Json orbits = Json::array();
  for (const auto& n : c.orbits) orbits.push_back(to_json(n));
  j["orbits"] = orbits;
  j["counts"] = Json{{"base", c.base_count}, {"additional", c.additional_count}, {"total", c.total}};
  Json plane_counts = Json::object();
  for (std::size_t k = 0; k < c.octic_singular_counts.size(); ++k)
    plane_counts[plane_name(k == 0 ? PlaneId::E0 : PlaneId::E1)] = c.octic_singular_counts[k];
  j["octic_singular_counts"] = plane_counts;
  if (c.conic) j["conic"] = to_json(*c.conic);
  if (c.conic_det) j["conic_determinant"] = to_json(*c.conic_det);
  if (c.irreducibility) {
    const auto& v = *c.irreducibility;
    j["irreducibility"] = Json{{"linear_factor_through_node", v.linear_factor_through_node},
                               {"branch_polynomial", Json::array()},
                               {"branch_polynomial_square", v.branch_polynomial_square},
                               {"irreducible", v.irreducible},
                               {"oracle_prime", v.oracle_prime},
                               {"oracle_no_factor", v.oracle_no_factor},
                               {"oracle_note", v.oracle_note}};
    for (const auto& coef : v.branch_polynomial.coeffs()) j["irreducibility"]["branch_polynomial"].push_back(to_json(coef));
  }
  Json checks = Json::array();
  for (const auto& f : c.checks) checks.push_back(Json{{"name", f.name}, {"pass", f.pass}, {"detail", f.detail}});
  j["checks"] = checks;
  j["hessian_table"] = Json{{"exact_matches", c.hessian_matches},
                            {"consistent_E0", c.hessian_consistent_e0},
                            {"consistent_E1", c.hessian_consistent_e1}};
  j["documented_only"] = Json{{"note", c.off_plane_note}, {"items", strings(c.documented_only)}};
  j["diagnostics"] = strings(c.diagnostics);
  return j;
}

Json to_json(const FamilySample& s) {
  return Json{{"seed", s.seed},
              {"params", to_json(s.params)},
              {"attempts", s.attempts},
              {"rejections", strings(s.rejections)},
              {"singular_points", Json{{"E0", s.singular_e0}, {"E1", s.singular_e1}}},
              {"nodes", s.nodes},
              {"orbits16", s.orbits16},
              {"orbits8", s.orbits8},
              {"ok", s.ok},
              {"diagnostics", strings(s.diagnostics)}};
}

FamilySample family_sample_from_json(const Json& j) {
  return guard("family sample", [&] {
    FamilySample s;
    s.seed = field(j, "seed").get<std::uint64_t>();
    s.params = params_from_json(field(j, "params"));
    s.attempts = field(j, "attempts").get<int>();
    s.rejections = field(j, "rejections").get<std::vector<std::string>>();
    s.singular_e0 = field(field(j, "singular_points"), "E0").get<int>();
    s.singular_e1 = field(field(j, "singular_points"), "E1").get<int>();
    s.nodes = field(j, "nodes").get<int>();
    s.orbits16 = field(j, "orbits16").get<int>();
    s.orbits8 = field(j, "orbits8").get<int>();
    s.ok = field(j, "ok").get<bool>();
    s.diagnostics = field(j, "diagnostics").get<std::vector<std::string>>();
    return s;
  });
}

namespace {

void flatten(const Json& j, const std::string& path, std::ostringstream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array()) {
    if (j.empty()) out << path << " = []\n";
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out << path << " = " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

std::string flatten_json(const Json& j) {
  std::ostringstream out;
  flatten(j, "", out);
  return out.str();
}

std::string certificate_to_text(const SurfaceCertificate& c) {
  std::ostringstream out;
  out << "certificate " << c.schema << ": " << (c.pass ? "PASS" : "FAIL") << "\n\n";
  out << std::left << std::setw(6) << "label" << std::setw(6) << "plane" << std::setw(6) << "size" << std::setw(6)
      << "base" << std::setw(34) << "det3" << "published\n";
  for (const auto& n : c.orbits) {
    out << std::setw(6) << n.candidate.source.label << std::setw(6) << plane_name(n.candidate.source.plane)
        << std::setw(6) << n.orbit_size << std::setw(6) << (n.base ? "yes" : "no") << std::setw(34)
        << n.hessian.det3.to_string() << (n.published ? n.published->to_string() : "-") << "\n";
  }
  out << "\nnodes: " << c.base_count << " base + " << c.additional_count << " additional = " << c.total << "\n\n";
  for (const auto& f : c.checks)
    out << (f.pass ? "[pass] " : "[FAIL] ") << f.name << (f.detail.empty() ? "" : ": " + f.detail) << "\n";
  out << "\n" << c.off_plane_note << "\n\n";
  out << flatten_json(to_json(c));
  return out.str();
}

}  // namespace octic
