#include "anosograph/json_io.hpp"

#include <limits>

namespace anosograph {

Json encode_integer(const Integer& z) {
  if (mpz_fits_slong_p(z.get_mpz_t()) && sizeof(long) == 8) return Json(z.get_si());
  return Json(z.get_str());
}

Integer decode_integer(const Json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    Integer z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw ParseError(0, "malformed integer string");
    return z;
  }
  throw ParseError(0, "expected an integer");
}

Json encode_rational(const Rational& q) { return Json(q.get_str()); }

Rational decode_rational(const Json& j) {
  if (j.is_number_integer()) return Rational(decode_integer(j));
  if (!j.is_string()) throw ParseError(0, "expected a rational");
  Rational q;
  if (q.set_str(j.get<std::string>(), 10) != 0 || q.get_den() == 0)
    throw ParseError(0, "malformed rational '" + j.get<std::string>() + "'");
  q.canonicalize();
  return q;
}

Json encode_matrix(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(encode_integer(m(i, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMatrix decode_matrix(const Json& j) {
  if (!j.is_array()) throw ParseError(0, "expected a matrix (array of rows)");
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? j[0].size() : 0;
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw ParseError(0, "ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = decode_integer(j[i][c]);
  }
  return m;
}

}  // namespace anosograph
