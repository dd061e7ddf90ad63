#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "lyhall/lincomb.hpp"
#include "lyhall/term.hpp"

namespace lyhall {

// Tally of rule applications, keyed by rule id:
//   LY1          star of equal operands vanishing, or a star orientation swap
//   LY2          bracket with equal first two slots vanishing, or a slot-1/2 swap
//   LY3          full cyclic expansion fired when slots 1 and 2 are both stars
//   LY4          splitting a star in slot 1 across slots 1 and 2
//   LY5          clearing a star-rooted slot 3 through the derivation rule
//   LY6          expanding a bracket-rooted slot 1 through the derivation rule
//   hall-reorder cyclic slot rotation restoring f(z) <= f(w), with star defects
// Results replayed from the memo tables count their rules only once, at first
// computation, so tallies depend on what the rewriter has already seen.
using Certificate = std::map<std::string, uint64_t>;

struct NormalForm {
  LinComb value;
  Certificate certificate;
};

// Two distinct terms with equal flattened words reached a rule that needs a
// strict order between them. A hard error rather than a tie-break: silently
// ordering the pair would hide a genuine counterexample to flatten
// injectivity on the basis.
struct FlattenCollision : std::runtime_error {
  FlattenCollision(TermId u, TermId v, std::string what)
      : std::runtime_error(std::move(what)), left(u), right(v) {}
  TermId left, right;
};

// The recursion guard tripped, which signals a loop in the rule system, not a
// property of the input. Carries the innermost frames of the active rewrite
// stack, outermost first.
struct DepthExceeded : std::runtime_error {
  DepthExceeded(std::string what, std::vector<std::string> frames)
      : std::runtime_error(std::move(what)), trace(std::move(frames)) {}
  std::vector<std::string> trace;
};

// Normal-form engine over one bank. All entry points are pure up to the memo
// tables, which allow concurrent readers and serialize writers, so a single
// Rewriter may be shared across threads.
class Rewriter {
 public:
  explicit Rewriter(TermBank& bank) : bank_(bank) {}

  TermBank& bank() { return bank_; }

  // Rewrites into the span of the basis: the result is supported on basis
  // elements, linear in the input, idempotent, and degree-preserving.
  NormalForm normalize(TermId t);
  NormalForm normalize(const LinComb& x);

  // Orients a star of two basis elements: zero, the star itself, or the
  // swapped star with flipped sign. Throws std::invalid_argument on
  // non-basis operands.
  LinComb rewrite_star(TermId u, TermId v);

  // Rewrites a bracket whose slots are already basis elements. Throws
  // std::invalid_argument on non-basis slots.
  LinComb rewrite_bracket(TermId y, TermId z, TermId w);

  // Triple-system leg: reorders bracket structure only, treating every
  // non-bracket subterm as an atomic letter. The output mixes Lie triple
  // Hall brackets over those letters with raw star-rooted defect terms from
  // the cyclic rule; callers feed the defects back through normalize.
  LinComb lts_hall_rewrite(TermId t);

 private:
  struct Ctx;

  LinComb norm_term(TermId t, Ctx& ctx);
  LinComb star_nf(TermId u, TermId v, Ctx& ctx);
  // (a*b)*c with both stars oriented.
  LinComb star2(TermId a, TermId b, TermId c, Ctx& ctx);
  LinComb bracket_nf(TermId y, TermId z, TermId w, Ctx& ctx);
  LinComb bracket_step(TermId y, TermId z, TermId w, Ctx& ctx);
  LinComb ly6_expand(TermId y, TermId z, TermId w, Ctx& ctx);
  LinComb lts_nf(TermId t, Ctx& ctx);
  LinComb lts_bracket(TermId y, TermId z, TermId w, Ctx& ctx);
  [[noreturn]] void depth_trip(const Ctx& ctx) const;

  TermBank& bank_;
  mutable std::shared_mutex mu_;
  std::unordered_map<TermId, LinComb> memo_norm_;
  std::map<std::array<TermId, 3>, LinComb> memo_bracket_;
  std::unordered_map<TermId, LinComb> memo_lts_;
  std::map<std::array<TermId, 3>, LinComb> memo_lts_bracket_;
};

}  // namespace lyhall
