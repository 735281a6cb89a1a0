#pragma once

#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>

#include "octic/certify.hpp"

namespace octic {

using Json = nlohmann::ordered_json;

/// Malformed structured input (wrong shape, unparsable numbers).
class SerializationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rationals are written as "p/q"; Q(sqrt 2) elements as {"a": .., "b": ..};
/// tower elements as the radicands level by level plus the coefficient vector;
/// polynomials as their arity and the term list in canonical order.
Json to_json(const Rat& r);
Json to_json(const QSqrt2& x);
Json to_json(const TowerElem& x);
Json to_json(const Poly& p);
Json to_json(const OcticParams& p);
Json to_json(const Point& p);
Json to_json(const PlanePoint& p);

Rat rat_from_json(const Json& j);
QSqrt2 qsqrt2_from_json(const Json& j);
TowerElem tower_elem_from_json(const Json& j);
Poly poly_from_json(const Json& j);
/// Accepts the certificate's parameter block. Missing coefficients default to 0.
OcticParams params_from_json(const Json& j);
Point point_from_json(const Json& j);

Json to_json(const NodeCertificate& n);
Json to_json(const SurfaceCertificate& c);
Json to_json(const FamilySample& s);
FamilySample family_sample_from_json(const Json& j);

/// Orbit table and check summary, followed by every field of the structured
/// certificate as "path = value" lines, so both formats carry the same data.
std::string certificate_to_text(const SurfaceCertificate& c);
/// Flattens a document into sorted "path = value" lines.
std::string flatten_json(const Json& j);

}  // namespace octic
