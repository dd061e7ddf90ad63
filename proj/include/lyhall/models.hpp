#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lyhall/hall.hpp"
#include "lyhall/lincomb.hpp"
#include "lyhall/term.hpp"

namespace lyhall {

// Malformed model files or tables, and misuse of a loaded model.
struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dense exact coordinate vector; the owning structure fixes the dimension.
using Vec = std::vector<Rational>;

// Finite-dimensional Lie algebra as structure constants over an ordered
// basis. Input tables cover i < j only; antisymmetry and the zero diagonal
// are filled in here, so corrupted antisymmetry cannot be expressed.
class LieAlgebraData {
 public:
  LieAlgebraData(std::vector<std::string> basis_names,
                 const std::map<std::pair<uint32_t, uint32_t>, Vec>& upper_table);

  uint32_t dim() const { return static_cast<uint32_t>(names_.size()); }
  const std::vector<std::string>& basis_names() const { return names_; }
  std::optional<uint32_t> index_of(const std::string& name) const;

  const Vec& bracket(uint32_t i, uint32_t j) const;
  Vec bracket(const Vec& x, const Vec& y) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<Vec>> table_;
};

// Basis-aligned splitting: every basis index in exactly one of m or h.
struct ReductivePair {
  std::vector<uint32_t> m_indices;
  std::vector<uint32_t> h_indices;
};

struct ModelFile {
  LieAlgebraData algebra;
  ReductivePair split;
};

// {"basis": [names], "brackets": {"i,j": {name: "p/q", ...}, ...},
//  "h": [names], "m": [names]}; omitted pairs are zero, keys must have i < j.
ModelFile load_model_text(const std::string& json_text);
ModelFile load_model_file(const std::string& path);

// True iff Jacobi holds on all basis triples; a failing triple lands in
// *witness when given.
bool check_jacobi(const LieAlgebraData& L, std::string* witness = nullptr);

// True iff [h,h] ⊆ h and [h,m] ⊆ m on basis pairs. Throws ModelError when
// the index sets do not partition the basis.
bool check_reductive(const LieAlgebraData& L, const ReductivePair& split,
                     std::string* witness = nullptr);

struct AxiomCheck {
  bool ok = true;
  std::string witness;  // offending basis tuple when !ok
};

// axiom[k] reports axiom k+1.
struct AxiomReport {
  std::array<AxiomCheck, 6> axiom;
  bool all_ok() const;
};

// Concrete algebra: star and triple-bracket tables over an ordered
// coordinate basis, exact rational arithmetic throughout.
class LYModel {
 public:
  using StarTable = std::vector<std::vector<Vec>>;
  using BracketTable = std::vector<std::vector<std::vector<Vec>>>;

  LYModel(std::vector<std::string> coords, StarTable star, BracketTable bracket);

  uint32_t dim() const { return static_cast<uint32_t>(coords_.size()); }
  const std::vector<std::string>& coords() const { return coords_; }
  std::optional<uint32_t> coord_of(const std::string& name) const;
  Vec unit(uint32_t i) const;

  Vec star(const Vec& x, const Vec& y) const;
  Vec bracket(const Vec& x, const Vec& y, const Vec& z) const;

  // Copy with the global sign of either operation flipped.
  LYModel flipped(bool flip_star, bool flip_bracket) const;

  // Exact verification of the six defining identities on all basis tuples.
  // Throws CapExceeded beyond the dimension cap (12): the degree-five tuple
  // loop for the last identity grows too fast past that.
  AxiomReport check_axioms() const;

 private:
  std::vector<std::string> coords_;
  StarTable star_;
  BracketTable bracket_;
};

// x*y = [x,y]_m, [[x,y,z]] = [[x,y]_h, z], both as tables over the m-basis.
// Validates the splitting (check_reductive) and throws ModelError when it
// fails; the projections are exact index lookups because splittings are
// basis-aligned.
LYModel induce_ly(const LieAlgebraData& L, const ReductivePair& split);

// Structural evaluation: assign maps generator rank to a model vector.
// Missing ranks or wrong dimensions throw ModelError. Linear over LinComb.
Vec eval(const LYModel& M, const TermBank& bank, TermId t, const std::vector<Vec>& assign);
Vec eval(const LYModel& M, const TermBank& bank, const LinComb& x,
         const std::vector<Vec>& assign);

}  // namespace lyhall
