#pragma once

#include <json.hpp>

#include "hvlab/audit.hpp"
#include "hvlab/constructions.hpp"

namespace hvlab {

/// Insertion-ordered JSON so serialized reports are byte-stable.
using Json = nlohmann::ordered_json;

// All *_from_json functions throw Error(ParseError) on malformed input.

Json to_json(const Field& f);
FieldPtr field_from_json(const Json& j);

Json to_json(const ProjPoint& p);
ProjPoint point_from_json(const Json& j, const Field& f);

Json to_json(const Flat& x);
Flat flat_from_json(const Json& j, const Field& f);

/// {"field", "nvars", "degree", "terms": [{"exps", "coeff"}]} in graded-lex descending order.
Json to_json(const HomogeneousPoly& f);
HomogeneousPoly poly_from_json(const Json& j);

Json to_json(const HermitianForm& h);
HermitianForm form_from_json(const Json& j);

Json to_json(const ExtremalCertificate& c);
Json to_json(const Construction& c);

Json to_json(const LineClass& c);
Json to_json(const PlaneSectionClass& c);
Json to_json(const HyperplaneSectionClass& c);
Json to_json(const QuadricType& c);
Json to_json(const PlaneCubicClass& c);

Json to_json(const StructuralPredicates& p);
Json to_json(const AuditReport& r);
Json to_json(const IdentityReport& r);
Json to_json(const SampleReport& r);

}  // namespace hvlab
