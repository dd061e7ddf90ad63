#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace lyhall {

// Exact rational coefficients. Everything downstream (linear combinations,
// elimination, model evaluation) assumes characteristic zero and no rounding,
// so the alias must stay an arbitrary-precision rational type. Callers of the
// two-argument constructor must canonicalize(): mpq_class(2, 4) compares
// unequal to 1/2 until reduced.
using Rational = mpq_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

// Accepts "p" or "p/q" with optional sign; rejects q == 0 and garbage.
inline Rational rational_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+'))
      throw std::invalid_argument("bad rational literal: " + s);
  }
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

}  // namespace lyhall
