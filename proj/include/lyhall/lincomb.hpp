#pragma once

#include <map>
#include <string>

#include "lyhall/rational.hpp"
#include "lyhall/term.hpp"

namespace lyhall {

// Formal rational linear combination of terms. Zero coefficients are never
// stored, so is_zero() == empty(); equality is exact.
class LinComb {
 public:
  LinComb() = default;
  LinComb(const Rational& c, TermId t) { add(c, t); }

  void add(const Rational& c, TermId t);
  LinComb& operator+=(const LinComb& o);
  LinComb& operator-=(const LinComb& o);
  LinComb& operator*=(const Rational& c);

  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
  friend LinComb operator*(const Rational& c, LinComb a) { return a *= c; }

  bool operator==(const LinComb& o) const { return coeffs_ == o.coeffs_; }

  bool is_zero() const { return coeffs_.empty(); }
  size_t term_count() const { return coeffs_.size(); }
  const std::map<TermId, Rational>& coeffs() const { return coeffs_; }
  Rational coeff(TermId t) const;

 private:
  std::map<TermId, Rational> coeffs_;
};

// "<coeff> <term>" joined by " + ", terms in descending order (leading term
// first); the zero combination prints as "0".
std::string print_lincomb(const TermBank& bank, const LinComb& x);

}  // namespace lyhall
