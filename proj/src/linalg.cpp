#include "lyhall/linalg.hpp"

namespace lyhall {

SparseRow axpy(const SparseRow& a, const Rational& c, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].col < b[j].col) {
      out.push_back(a[i++]);
    } else if (a[i].col > b[j].col) {
      out.push_back({b[j].col, -c * b[j].coeff});
      ++j;
    } else {
      Rational v = a[i].coeff - c * b[j].coeff;
      if (v != 0) out.push_back({a[i].col, std::move(v)});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back({b[j].col, -c * b[j].coeff});
  return out;
}

bool row_lex_less(const SparseRow& a, const SparseRow& b) {
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    if (a[i].col != b[i].col) return a[i].col < b[i].col;
    int c = cmp(a[i].coeff, b[i].coeff);
    if (c != 0) return c < 0;
  }
  return a.size() < b.size();
}

SparseRow Echelon::reduce(SparseRow row) const {
  // Cancel the largest entry sitting at a pivot column until none is left;
  // a cancellation only disturbs columns below the one it clears, so entries
  // already scanned stay pivot-free.
  size_t clean = 0;  // this many trailing entries are pivot-free
  while (row.size() > clean) {
    size_t i = row.size() - 1 - clean;
    auto it = rows_.find(row[i].col);
    if (it == rows_.end()) {
      ++clean;
      continue;
    }
    SparseRow next = axpy(row, row[i].coeff, it->second);
    // entries strictly above the cancelled column are unchanged
    clean = 0;
    for (size_t k = next.size(); k-- > 0 && next[k].col > it->first;) ++clean;
    row = std::move(next);
  }
  return row;
}

bool Echelon::insert(SparseRow row) {
  row = reduce(std::move(row));
  if (row.empty()) return false;
  const Rational lead = row.back().coeff;
  if (lead != 1)
    for (Entry& e : row) e.coeff /= lead;
  uint32_t col = row.back().col;
  rows_.emplace(col, std::move(row));
  return true;
}

}  // namespace lyhall
