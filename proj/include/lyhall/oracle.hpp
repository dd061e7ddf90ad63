#pragma once
// Brute-force quotient oracle. For a fixed degree it materializes the span of
// every defining-relation instance wrapped in every one-hole product context,
// then answers span membership and quotient-dimension queries by exact
// elimination. Relations are multihomogeneous, so the span splits into
// independent blocks indexed by generator multidegree; each block gets its
// own echelon, which keeps the eliminations narrow.

#include <cstdint>
#include <map>
#include <vector>

#include "lyhall/hall.hpp"
#include "lyhall/linalg.hpp"
#include "lyhall/lincomb.hpp"
#include "lyhall/term.hpp"

namespace lyhall {

struct FreenessReport {
  uint32_t degree = 0;
  size_t basis_count = 0;
  size_t quotient_dim = 0;
  bool independent = false;
  bool spanning = false;
  bool ok() const { return independent && spanning; }
};

class RelationSpan {
 public:
  // Builds the degree slice of the relation span over the bank's generators.
  // BinaryTernary uses the six defining relations of the two-operator
  // algebra; TernaryOnly restricts to the pure triple-system relations
  // (alternation, cyclic sum, derivation) over the ternary magma.
  // Throws CapExceeded when the ambient slice is larger than max_ambient.
  RelationSpan(TermBank& bank, Signature sig, uint32_t degree,
               size_t max_ambient = 200000);

  uint32_t degree() const { return degree_; }
  Signature signature() const { return sig_; }
  size_t ambient_dimension() const { return ambient_; }
  size_t rank() const;
  size_t quotient_dimension() const { return ambient_ - rank(); }
  // relation rows fed to the eliminator (after exact-duplicate removal)
  size_t rows_processed() const { return rows_processed_; }

  // True iff the combination lies in the relation span, i.e. vanishes in the
  // quotient. Every term must be a magma term of the span's degree.
  bool contains(const LinComb& lc) const;

  // Canonical representative of the class of lc modulo the span.
  LinComb reduce(const LinComb& lc) const;

  // Checks that the candidate terms are independent modulo the span and
  // count exactly the quotient dimension.
  FreenessReport verify_freeness(const std::vector<TermId>& candidate) const;

 private:
  struct Block {
    std::vector<TermId> cols;  // ascending term order
    std::map<TermId, uint32_t> col_of;
    Echelon ech;
  };

  const Block* block_of(TermId t) const;

  TermBank& bank_;
  Signature sig_;
  uint32_t degree_;
  size_t ambient_ = 0;
  size_t rows_processed_ = 0;
  std::map<std::vector<uint32_t>, Block> blocks_;
};

// Instances of every defining relation whose monomials have the given total
// degree, appended to out. Exposed for the relation-annihilation tests.
void collect_relation_instances(TermBank& bank, Enumerator& en, Signature sig,
                                uint32_t degree, std::vector<LinComb>& out);

}  // namespace lyhall
