#include "lyhall/lincomb.hpp"

#include <algorithm>

#include "lyhall/term_io.hpp"

namespace lyhall {

void LinComb::add(const Rational& c, TermId t) {
  if (c == 0) return;
  auto [it, fresh] = coeffs_.try_emplace(t, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
  }
}

LinComb& LinComb::operator+=(const LinComb& o) {
  for (const auto& [t, c] : o.coeffs_) add(c, t);
  return *this;
}

LinComb& LinComb::operator-=(const LinComb& o) {
  for (const auto& [t, c] : o.coeffs_) add(-c, t);
  return *this;
}

LinComb& LinComb::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [t, v] : coeffs_) v *= c;
  return *this;
}

Rational LinComb::coeff(TermId t) const {
  auto it = coeffs_.find(t);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

std::string print_lincomb(const TermBank& bank, const LinComb& x) {
  if (x.is_zero()) return "0";
  std::vector<std::pair<TermId, Rational>> parts(x.coeffs().begin(), x.coeffs().end());
  std::sort(parts.begin(), parts.end(), [&](const auto& a, const auto& b) {
    return compare_terms(bank, a.first, b.first) == std::strong_ordering::greater;
  });
  std::string out;
  for (const auto& [t, c] : parts) {
    if (!out.empty()) out += " + ";
    out += to_string(c) + " " + print_term(bank, t);
  }
  return out;
}

}  // namespace lyhall
