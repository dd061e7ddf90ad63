#include "lyhall/hall.hpp"

#include <algorithm>
#include <mutex>

namespace lyhall {

namespace {

// Top-level Hall conditions for [y,z,w]; the slots are assumed Hall already.
bool hall_top_ok(const TermBank& bank, TermId y, TermId z, TermId w) {
  if (compare_flatten(bank, y, z) != std::strong_ordering::greater) return false;
  if (compare_flatten(bank, z, w) == std::strong_ordering::greater) return false;
  if (bank.kind(y) == Kind::Bracket) {
    TermId r = bank.child(y, 2);
    if (compare_flatten(bank, r, z) == std::strong_ordering::greater) return false;
  }
  return true;
}

// Extra membership clauses for brackets beyond Hall-ness.
bool basis_bracket_clauses_ok(const TermBank& bank, TermId y, TermId z, TermId w) {
  if (bank.kind(w) == Kind::Star) return false;
  if (bank.kind(y) == Kind::Star) {
    TermId v = bank.child(y, 1);
    if (bank.kind(v) != Kind::Leaf || bank.kind(z) != Kind::Leaf) return false;
    if (bank.leaf_rank(v) > bank.leaf_rank(z)) return false;
  }
  if (bank.kind(z) == Kind::Star) {
    if (bank.kind(y) != Kind::Bracket) return false;
    if (bank.child(y, 0) != bank.child(z, 0)) return false;
    if (bank.child(y, 1) != bank.child(z, 1)) return false;
    if (bank.kind(bank.child(y, 2)) != Kind::Leaf) return false;
  }
  return true;
}

}  // namespace

bool is_lts_hall(const TermBank& bank, TermId t) {
  if (bank.kind(t) != Kind::Bracket) return true;  // letters of Mag-bar
  TermId y = bank.child(t, 0), z = bank.child(t, 1), w = bank.child(t, 2);
  return is_lts_hall(bank, y) && is_lts_hall(bank, z) && is_lts_hall(bank, w) &&
         hall_top_ok(bank, y, z, w);
}

bool is_basis_element(const TermBank& bank, TermId t) {
  switch (bank.kind(t)) {
    case Kind::Leaf:
      return true;
    case Kind::Star: {
      TermId u = bank.child(t, 0), v = bank.child(t, 1);
      return is_basis_element(bank, u) && is_basis_element(bank, v) &&
             compare_flatten(bank, u, v) == std::strong_ordering::greater;
    }
    case Kind::Bracket: {
      TermId y = bank.child(t, 0), z = bank.child(t, 1), w = bank.child(t, 2);
      return is_basis_element(bank, y) && is_basis_element(bank, z) &&
             is_basis_element(bank, w) && is_lts_hall(bank, t) &&
             basis_bracket_clauses_ok(bank, y, z, w);
    }
  }
  return false;
}

Enumerator::Enumerator(TermBank& bank, size_t max_terms)
    : bank_(bank), max_terms_(max_terms) {}

mpz_class Enumerator::magma_count(Signature sig, uint32_t degree) {
  if (degree == 0) throw std::invalid_argument("degree must be positive");
  std::vector<mpz_class> c(degree + 1, 0);
  c[1] = bank_.generators().count();
  for (uint32_t n = 2; n <= degree; ++n) {
    mpz_class total = 0;
    if (sig == Signature::BinaryTernary)
      for (uint32_t i = 1; i < n; ++i) total += c[i] * c[n - i];
    for (uint32_t i = 1; i + 2 <= n; ++i)
      for (uint32_t j = 1; i + j + 1 <= n; ++j) total += c[i] * c[j] * c[n - i - j];
    c[n] = total;
  }
  return c[degree];
}

const std::vector<TermId>& Enumerator::cached(
    Cache& cache, uint32_t degree, std::vector<TermId> (Enumerator::*build)(uint32_t)) {
  {
    std::shared_lock lock(mu_);
    if (degree < cache.done.size() && cache.done[degree]) return cache.slices[degree];
  }
  std::vector<TermId> built = (this->*build)(degree);  // no lock held: recursion
  std::unique_lock lock(mu_);
  if (cache.slices.size() <= degree) {
    cache.slices.resize(degree + 1);
    cache.done.resize(degree + 1, false);
  }
  if (!cache.done[degree]) {
    cache.slices[degree] = std::move(built);
    cache.done[degree] = true;
  }
  return cache.slices[degree];
}

void Enumerator::sort_slice(std::vector<TermId>& v) {
  std::sort(v.begin(), v.end(), [&](TermId a, TermId b) {
    return compare_terms(bank_, a, b) == std::strong_ordering::less;
  });
}

const std::vector<TermId>& Enumerator::magma(Signature sig, uint32_t degree) {
  if (degree == 0) throw std::invalid_argument("degree must be positive");
  if (magma_count(sig, degree) > static_cast<long>(max_terms_))
    throw CapExceeded("magma slice at degree " + std::to_string(degree) +
                      " exceeds the term cap");
  return sig == Signature::BinaryTernary
             ? cached(magma_bt_, degree, &Enumerator::build_magma_bt)
             : cached(magma_t_, degree, &Enumerator::build_magma_t);
}

std::vector<TermId> Enumerator::build_magma_bt(uint32_t n) {
  std::vector<TermId> out;
  if (n == 1) {
    for (uint32_t r = 0; r < bank_.generators().count(); ++r) out.push_back(bank_.leaf(r));
  } else {
    for (uint32_t i = 1; i < n; ++i)
      for (TermId u : magma(Signature::BinaryTernary, i))
        for (TermId v : magma(Signature::BinaryTernary, n - i))
          out.push_back(bank_.star(u, v));
    for (uint32_t i = 1; i + 2 <= n; ++i)
      for (uint32_t j = 1; i + j + 1 <= n; ++j)
        for (TermId y : magma(Signature::BinaryTernary, i))
          for (TermId z : magma(Signature::BinaryTernary, j))
            for (TermId w : magma(Signature::BinaryTernary, n - i - j))
              out.push_back(bank_.bracket(y, z, w));
  }
  sort_slice(out);
  return out;
}

std::vector<TermId> Enumerator::build_magma_t(uint32_t n) {
  std::vector<TermId> out;
  if (n == 1) {
    for (uint32_t r = 0; r < bank_.generators().count(); ++r) out.push_back(bank_.leaf(r));
  } else {
    for (uint32_t i = 1; i + 2 <= n; ++i)
      for (uint32_t j = 1; i + j + 1 <= n; ++j)
        for (TermId y : magma(Signature::TernaryOnly, i))
          for (TermId z : magma(Signature::TernaryOnly, j))
            for (TermId w : magma(Signature::TernaryOnly, n - i - j))
              out.push_back(bank_.bracket(y, z, w));
  }
  sort_slice(out);
  return out;
}

const std::vector<TermId>& Enumerator::basis(uint32_t degree) {
  if (degree == 0) throw std::invalid_argument("degree must be positive");
  return cached(basis_, degree, &Enumerator::build_basis);
}

std::vector<TermId> Enumerator::build_basis(uint32_t n) {
  std::vector<TermId> out;
  if (n == 1) {
    for (uint32_t r = 0; r < bank_.generators().count(); ++r) out.push_back(bank_.leaf(r));
    sort_slice(out);
    return out;
  }
  // combine lower-degree basis slices; never filter the full magma
  for (uint32_t i = 1; i < n; ++i)
    for (TermId u : basis(i))
      for (TermId v : basis(n - i))
        if (compare_flatten(bank_, u, v) == std::strong_ordering::greater)
          out.push_back(bank_.star(u, v));
  for (uint32_t i = 1; i + 2 <= n; ++i)
    for (uint32_t j = 1; i + j + 1 <= n; ++j)
      for (TermId y : basis(i))
        for (TermId z : basis(j))
          for (TermId w : basis(n - i - j))
            if (hall_top_ok(bank_, y, z, w) && basis_bracket_clauses_ok(bank_, y, z, w))
              out.push_back(bank_.bracket(y, z, w));
  if (out.size() > max_terms_) throw CapExceeded("basis slice exceeds the term cap");
  sort_slice(out);
  return out;
}

const std::vector<TermId>& Enumerator::lts_hall(uint32_t degree) {
  if (degree == 0) throw std::invalid_argument("degree must be positive");
  return cached(lts_hall_, degree, &Enumerator::build_lts_hall);
}

std::vector<TermId> Enumerator::build_lts_hall(uint32_t n) {
  std::vector<TermId> out;
  if (n == 1) {
    for (uint32_t r = 0; r < bank_.generators().count(); ++r) out.push_back(bank_.leaf(r));
  } else {
    for (uint32_t i = 1; i + 2 <= n; ++i)
      for (uint32_t j = 1; i + j + 1 <= n; ++j)
        for (TermId y : lts_hall(i))
          for (TermId z : lts_hall(j))
            for (TermId w : lts_hall(n - i - j))
              if (hall_top_ok(bank_, y, z, w)) out.push_back(bank_.bracket(y, z, w));
  }
  if (out.size() > max_terms_) throw CapExceeded("Hall slice exceeds the term cap");
  sort_slice(out);
  return out;
}

std::vector<std::pair<uint32_t, size_t>> Enumerator::basis_dimension_table(uint32_t max_degree) {
  if (max_degree == 0) throw std::invalid_argument("degree must be positive");
  std::vector<std::pair<uint32_t, size_t>> table;
  for (uint32_t n = 1; n <= max_degree; ++n) table.emplace_back(n, basis(n).size());
  return table;
}

}  // namespace lyhall
