#pragma once

// JSON forms of the core types. Objects use sorted keys (nlohmann::json's
// default map), so dumps are byte-stable.

#include <json.hpp>

#include "magball/codec.hpp"
#include "magball/constructions.hpp"
#include "magball/lattice.hpp"
#include "magball/linear_code.hpp"
#include "magball/splitting.hpp"

namespace magball::io {

using Json = nlohmann::json;

Json to_json(const BigInt& v);  // number if it fits in int64, else decimal string
BigInt big_from_json(const Json& j);

Json to_json(const GroupSpec& g);
GroupSpec group_from_json(const Json& j);

Json to_json(const GroupElement& e);
Json to_json(const FieldSpec& f);
FieldSpec field_from_json(const Json& j);

Json to_json(const BallSpec& b);
BallSpec ball_from_json(const Json& j);

Json to_json(const SplitterSet& s);
SplitterSet splitter_from_json(const Json& j);

Json to_json(const SplitReport& r);
Json to_json(const GeometricReport& r);

Json to_json(const LatticeBasis& l);
LatticeBasis lattice_from_json(const Json& j);

Json to_json(const LinearCode& c);
LinearCode code_from_json(const Json& j);

/// {"ball", "group_order", "density_num", "density_den", "density",
/// "density_decimal"}; num/den are |B| and the order unreduced, "density"
/// is the reduced fraction and the decimal has 6 places.
Json density_record(const BallSpec& ball, const BigInt& order);

std::string decimal6(const Rational& r);

/// Throws DomainError naming the key when it is missing or has the wrong type.
const Json& require(const Json& j, const char* key);

}  // namespace magball::io
