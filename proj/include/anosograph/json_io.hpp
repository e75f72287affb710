#pragma once

// JSON encoding for exact numbers. Integers that fit in int64 are emitted as
// JSON numbers, larger ones as decimal strings; rationals are always "p/q" or
// "p" strings. Both readers accept either form.

#include <json.hpp>

#include "anosograph/exact.hpp"

namespace anosograph {

using Json = nlohmann::ordered_json;

Json encode_integer(const Integer& z);
Integer decode_integer(const Json& j);

Json encode_rational(const Rational& q);
Rational decode_rational(const Json& j);

Json encode_matrix(const IntMatrix& m);
IntMatrix decode_matrix(const Json& j);

}  // namespace anosograph
