#pragma once
// Exact sparse row echelon over the rationals. Columns index a fixed ordered
// term slice; the pivot of a row is its largest column, so reduction never
// touches columns above the lead.

#include <cstdint>
#include <map>
#include <vector>

#include "lyhall/rational.hpp"

namespace lyhall {

struct Entry {
  uint32_t col;
  Rational coeff;
  friend bool operator==(const Entry& a, const Entry& b) {
    return a.col == b.col && a.coeff == b.coeff;
  }
};

// strictly ascending by column, no zero coefficients
using SparseRow = std::vector<Entry>;

// a - c*b, exact
SparseRow axpy(const SparseRow& a, const Rational& c, const SparseRow& b);

// lexicographic over the (col, coeff) sequence, for deduplication
bool row_lex_less(const SparseRow& a, const SparseRow& b);

class Echelon {
 public:
  // Cancels stored pivots until no entry sits at any pivot column. The
  // result is the canonical representative of the row modulo the rowspan:
  // zero iff the row is in the span, and linear in the input.
  SparseRow reduce(SparseRow row) const;

  // Reduces the row and stores the survivor as a monic pivot row.
  // Returns false when the row was already in the span.
  bool insert(SparseRow row);

  size_t rank() const { return rows_.size(); }

 private:
  std::map<uint32_t, SparseRow, std::greater<uint32_t>> rows_;
};

}  // namespace lyhall
