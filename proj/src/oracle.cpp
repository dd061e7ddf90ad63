#include "lyhall/oracle.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace lyhall {

namespace {

// A one-hole context, stored as the chain of wraps from the hole outward.
// pos is the slot the hole occupies; s0, s1 fill the remaining slots in
// left-to-right order (s1 is unused for star wraps).
struct CtxStep {
  bool is_star;
  int pos;
  TermId s0;
  TermId s1;
};
using Context = std::vector<CtxStep>;

TermId plug(TermBank& bank, const Context& ctx, TermId filling) {
  TermId t = filling;
  for (const CtxStep& st : ctx) {
    if (st.is_star)
      t = st.pos == 0 ? bank.star(t, st.s0) : bank.star(st.s0, t);
    else if (st.pos == 0)
      t = bank.bracket(t, st.s0, st.s1);
    else if (st.pos == 1)
      t = bank.bracket(st.s0, t, st.s1);
    else
      t = bank.bracket(st.s0, st.s1, t);
  }
  return t;
}

// All one-hole contexts of each size up to max_size, the hole counting as
// size one. ctx[m] lists the size-m contexts.
std::vector<std::vector<Context>> build_contexts(Enumerator& en, Signature sig,
                                                 uint32_t max_size) {
  std::vector<std::vector<Context>> ctx(max_size + 1);
  if (max_size >= 1) ctx[1].push_back({});
  for (uint32_t m = 2; m <= max_size; ++m) {
    auto extend = [&](const Context& inner, CtxStep step) {
      Context c = inner;
      c.push_back(step);
      ctx[m].push_back(std::move(c));
    };
    if (sig == Signature::BinaryTernary)
      for (uint32_t i = 1; i + 1 <= m; ++i) {
        uint32_t j = m - i;
        for (const Context& c : ctx[i])
          for (TermId t : en.magma(sig, j)) {
            extend(c, {true, 0, t, 0});
            extend(c, {true, 1, t, 0});
          }
      }
    for (uint32_t i = 1; i + 2 <= m; ++i)
      for (uint32_t j = 1; i + j + 1 <= m; ++j) {
        uint32_t k = m - i - j;
        for (const Context& c : ctx[i])
          for (TermId u : en.magma(sig, j))
            for (TermId v : en.magma(sig, k)) {
              extend(c, {false, 0, u, v});
              extend(c, {false, 1, u, v});
              extend(c, {false, 2, u, v});
            }
      }
  }
  return ctx;
}

// Invokes fn for every arity-tuple of magma terms with the given total size.
void for_tuples(Enumerator& en, Signature sig, uint32_t total, int arity,
                const std::function<void(const std::vector<TermId>&)>& fn) {
  if (total < static_cast<uint32_t>(arity)) return;
  std::vector<TermId> tuple(arity);
  std::function<void(int, uint32_t)> rec = [&](int i, uint32_t left) {
    if (i == arity - 1) {
      for (TermId t : en.magma(sig, left)) {
        tuple[i] = t;
        fn(tuple);
      }
      return;
    }
    for (uint32_t s = 1; s + (arity - 1 - i) <= left; ++s)
      for (TermId t : en.magma(sig, s)) {
        tuple[i] = t;
        rec(i + 1, left - s);
      }
  };
  rec(0, total);
}

}  // namespace

void collect_relation_instances(TermBank& bank, Enumerator& en, Signature sig,
                                uint32_t d, std::vector<LinComb>& out) {
  auto push = [&](LinComb lc) {
    if (!lc.is_zero()) out.push_back(std::move(lc));
  };

  if (sig == Signature::BinaryTernary) {
    // the binary product alternates: x*x and its polarization x*y + y*x
    if (d % 2 == 0)
      for (TermId x : en.magma(sig, d / 2)) {
        LinComb lc;
        lc.add(1, bank.star(x, x));
        push(std::move(lc));
      }
    for_tuples(en, sig, d, 2, [&](const std::vector<TermId>& a) {
      LinComb lc;
      lc.add(1, bank.star(a[0], a[1]));
      lc.add(1, bank.star(a[1], a[0]));
      push(std::move(lc));
    });
  }

  // the bracket alternates in its first two slots
  for (uint32_t sx = 1; 2 * sx + 1 <= d; ++sx)
    for (TermId x : en.magma(sig, sx))
      for (TermId y : en.magma(sig, d - 2 * sx)) {
        LinComb lc;
        lc.add(1, bank.bracket(x, x, y));
        push(std::move(lc));
      }
  for_tuples(en, sig, d, 3, [&](const std::vector<TermId>& a) {
    LinComb pol;
    pol.add(1, bank.bracket(a[0], a[1], a[2]));
    pol.add(1, bank.bracket(a[1], a[0], a[2]));
    push(std::move(pol));
    // cyclic sum; carries the binary defect terms when the star is present
    LinComb cyc;
    for (int r = 0; r < 3; ++r) {
      TermId x = a[r], y = a[(r + 1) % 3], z = a[(r + 2) % 3];
      cyc.add(1, bank.bracket(x, y, z));
      if (sig == Signature::BinaryTernary)
        cyc.add(1, bank.star(bank.star(x, y), z));
    }
    push(std::move(cyc));
  });

  if (sig == Signature::BinaryTernary)
    for_tuples(en, sig, d, 4, [&](const std::vector<TermId>& a) {
      TermId x = a[0], y = a[1], z = a[2], w = a[3];
      // cyclic sum over star-led first slots
      LinComb star_cyc;
      for (int r = 0; r < 3; ++r)
        star_cyc.add(1, bank.bracket(bank.star(a[r], a[(r + 1) % 3]), a[(r + 2) % 3], w));
      push(std::move(star_cyc));
      // the bracket acts by derivations on the star
      LinComb der;
      der.add(1, bank.bracket(x, y, bank.star(z, w)));
      der.add(-1, bank.star(z, bank.bracket(x, y, w)));
      der.add(-1, bank.star(bank.bracket(x, y, z), w));
      push(std::move(der));
    });

  // the bracket acts by derivations on itself
  for_tuples(en, sig, d, 5, [&](const std::vector<TermId>& a) {
    TermId x = a[0], y = a[1], u = a[2], v = a[3], w = a[4];
    LinComb lc;
    lc.add(1, bank.bracket(x, y, bank.bracket(u, v, w)));
    lc.add(-1, bank.bracket(bank.bracket(x, y, u), v, w));
    lc.add(-1, bank.bracket(u, bank.bracket(x, y, v), w));
    lc.add(-1, bank.bracket(u, v, bank.bracket(x, y, w)));
    push(std::move(lc));
  });
}

RelationSpan::RelationSpan(TermBank& bank, Signature sig, uint32_t degree,
                           size_t max_ambient)
    : bank_(bank), sig_(sig), degree_(degree) {
  if (degree == 0) throw std::invalid_argument("degree must be positive");
  Enumerator en(bank, max_ambient);
  const auto& ambient = en.magma(sig, degree);
  ambient_ = ambient.size();
  for (TermId t : ambient) {
    Block& b = blocks_[bank.multidegree(t)];
    b.col_of.emplace(t, static_cast<uint32_t>(b.cols.size()));
    b.cols.push_back(t);
  }

  std::map<std::vector<uint32_t>, std::vector<SparseRow>> pending;
  auto stash = [&](const LinComb& lc) {
    if (lc.is_zero()) return;
    auto key = bank.multidegree(lc.coeffs().begin()->first);
    Block& b = blocks_.at(key);
    SparseRow row;
    row.reserve(lc.term_count());
    for (const auto& [t, c] : lc.coeffs()) row.push_back({b.col_of.at(t), c});
    // LinComb iterates in TermId order; columns follow the slice order
    std::sort(row.begin(), row.end(),
              [](const Entry& x, const Entry& y) { return x.col < y.col; });
    pending[key].push_back(std::move(row));
  };

  if (degree >= 2) {
    auto ctx = build_contexts(en, sig, degree - 1);
    for (uint32_t d = 2; d <= degree; ++d) {
      std::vector<LinComb> instances;
      collect_relation_instances(bank, en, sig, d, instances);
      uint32_t m = degree - d + 1;
      const auto& wraps = m < ctx.size() ? ctx[m] : ctx[1];
      for (const LinComb& rel : instances)
        for (const Context& c : wraps) {
          LinComb plugged;
          for (const auto& [t, coef] : rel.coeffs())
            plugged.add(coef, plug(bank, c, t));
          stash(plugged);
        }
    }
  }

  for (auto& [key, rows] : pending) {
    std::sort(rows.begin(), rows.end(), row_lex_less);
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    // short rows first keeps the eliminations sparse
    std::stable_sort(rows.begin(), rows.end(),
                     [](const SparseRow& x, const SparseRow& y) {
                       return x.size() < y.size();
                     });
    Block& b = blocks_.at(key);
    for (SparseRow& r : rows) {
      ++rows_processed_;
      b.ech.insert(std::move(r));
    }
  }
}

size_t RelationSpan::rank() const {
  size_t r = 0;
  for (const auto& [key, b] : blocks_) r += b.ech.rank();
  return r;
}

const RelationSpan::Block* RelationSpan::block_of(TermId t) const {
  auto it = blocks_.find(bank_.multidegree(t));
  return it == blocks_.end() ? nullptr : &it->second;
}

bool RelationSpan::contains(const LinComb& lc) const {
  std::map<const Block*, std::map<uint32_t, Rational>> parts;
  for (const auto& [t, c] : lc.coeffs()) {
    if (bank_.size(t) != degree_)
      throw std::invalid_argument("span query term has the wrong degree");
    const Block* b = block_of(t);
    if (!b) return false;
    auto it = b->col_of.find(t);
    if (it == b->col_of.end()) return false;
    parts[b][it->second] = c;
  }
  for (const auto& [b, cols] : parts) {
    SparseRow row;
    row.reserve(cols.size());
    for (const auto& [col, c] : cols) row.push_back({col, c});
    if (!b->ech.reduce(std::move(row)).empty()) return false;
  }
  return true;
}

LinComb RelationSpan::reduce(const LinComb& lc) const {
  std::map<const Block*, std::map<uint32_t, Rational>> parts;
  for (const auto& [t, c] : lc.coeffs()) {
    if (bank_.size(t) != degree_)
      throw std::invalid_argument("span query term has the wrong degree");
    const Block* b = block_of(t);
    if (!b || !b->col_of.count(t))
      throw std::invalid_argument("span query term is outside the ambient slice");
    parts[b][b->col_of.at(t)] = c;
  }
  LinComb out;
  for (const auto& [b, cols] : parts) {
    SparseRow row;
    row.reserve(cols.size());
    for (const auto& [col, c] : cols) row.push_back({col, c});
    for (const Entry& e : b->ech.reduce(std::move(row)))
      out.add(e.coeff, b->cols[e.col]);
  }
  return out;
}

FreenessReport RelationSpan::verify_freeness(
    const std::vector<TermId>& candidate) const {
  FreenessReport rep;
  rep.degree = degree_;
  rep.basis_count = candidate.size();
  rep.quotient_dim = quotient_dimension();
  rep.independent = true;
  // Extend a copy of each block's echelon by the candidate rows: a candidate
  // is independent from the span and its predecessors exactly when its unit
  // row still increases the rank.
  std::map<const Block*, Echelon> work;
  for (TermId t : candidate) {
    const Block* b = block_of(t);
    if (!b) {
      rep.independent = false;
      break;
    }
    auto it = b->col_of.find(t);
    if (it == b->col_of.end()) {
      rep.independent = false;
      break;
    }
    Echelon& ech = work.try_emplace(b, b->ech).first->second;
    if (!ech.insert({{it->second, Rational(1)}})) {
      rep.independent = false;
      break;
    }
  }
  rep.spanning = rep.independent && rep.basis_count == rep.quotient_dim;
  return rep;
}

}  // namespace lyhall
