#pragma once

#include <gmpxx.h>

#include <deque>
#include <shared_mutex>
#include <stdexcept>
#include <vector>

#include "lyhall/term.hpp"

namespace lyhall {

enum class Signature { BinaryTernary, TernaryOnly };

struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Letters of the flattened alphabet are the Mag-bar terms (generators and
// star-rooted terms), compared through their flattened words. A bracket
// [y,z,w] is a Lie triple Hall element iff y, z, w are, f(y) > f(z),
// f(z) <= f(w), and y is either a letter or a bracket [u,v,r] with
// f(r) <= f(z). Letters are atomic: the predicate never looks inside a star.
bool is_lts_hall(const TermBank& bank, TermId t);

// Membership in the graded basis B:
//   - generators belong to B;
//   - u*v belongs iff u, v belong and f(u) > f(v);
//   - [y,z,w] belongs iff y, z, w belong, the term is Lie triple Hall, w is
//     not star-rooted, a star-rooted y = u*v forces v and z to be generators
//     with v <= z, and a star-rooted z = u*v forces y = [u,v,c] with c a
//     generator (same u and v).
bool is_basis_element(const TermBank& bank, TermId t);

// Graded enumeration, memoized per degree. Magma enumeration materializes
// every term of a degree; basis/Hall sets are built bottom-up from the lower
// graded slices and never by filtering the full magma. All results are sorted
// ascending by the term order and cached; readers may query concurrently.
class Enumerator {
 public:
  explicit Enumerator(TermBank& bank, size_t max_terms = 5'000'000);

  TermBank& bank() { return bank_; }

  // Term count of the degree slice, computed arithmetically (no terms built).
  mpz_class magma_count(Signature sig, uint32_t degree);

  const std::vector<TermId>& magma(Signature sig, uint32_t degree);
  const std::vector<TermId>& basis(uint32_t degree);
  // Lie triple Hall elements over the generators in the ternary-only magma.
  const std::vector<TermId>& lts_hall(uint32_t degree);

  std::vector<std::pair<uint32_t, size_t>> basis_dimension_table(uint32_t max_degree);

 private:
  // deque keeps references to filled slices stable while other degrees grow
  struct Cache {
    std::deque<std::vector<TermId>> slices;
    std::deque<bool> done;
  };

  const std::vector<TermId>& cached(Cache& cache, uint32_t degree,
                                    std::vector<TermId> (Enumerator::*build)(uint32_t));
  std::vector<TermId> build_magma_bt(uint32_t degree);
  std::vector<TermId> build_magma_t(uint32_t degree);
  std::vector<TermId> build_basis(uint32_t degree);
  std::vector<TermId> build_lts_hall(uint32_t degree);
  void sort_slice(std::vector<TermId>& v);

  TermBank& bank_;
  size_t max_terms_;
  std::shared_mutex mu_;
  Cache magma_bt_, magma_t_, basis_, lts_hall_;
};

}  // namespace lyhall
