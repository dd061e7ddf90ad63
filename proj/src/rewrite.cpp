#include "lyhall/rewrite.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>

#include "lyhall/hall.hpp"
#include "lyhall/term_io.hpp"

namespace lyhall {

// Per-call rewriting state. One Ctx lives for the duration of one public
// entry point; the stack holds the active bracket rewrites only, since every
// potential loop in the rule system goes through them, and its size is the
// recursion depth the cap guards.
struct Rewriter::Ctx {
  Certificate& cert;
  uint32_t cap = 0;
  std::vector<std::array<TermId, 3>> stack;
};

namespace {

// Rule ids are listed at the Certificate declaration.
void count_rule(Certificate& cert, const char* id) { ++cert[id]; }

}  // namespace

void Rewriter::depth_trip(const Ctx& ctx) const {
  std::vector<std::string> frames;
  size_t keep = std::min<size_t>(ctx.stack.size(), 32);
  for (size_t i = ctx.stack.size() - keep; i < ctx.stack.size(); ++i) {
    const auto& [y, z, w] = ctx.stack[i];
    frames.push_back("[" + print_term(bank_, y) + ", " + print_term(bank_, z) + ", " +
                     print_term(bank_, w) + "]");
  }
  std::string what = "rewrite depth cap " + std::to_string(ctx.cap) +
                     " exceeded; innermost frames:";
  for (const auto& f : frames) what += "\n  " + f;
  throw DepthExceeded(std::move(what), std::move(frames));
}

NormalForm Rewriter::normalize(TermId t) {
  NormalForm nf;
  Ctx ctx{nf.certificate, 64 * std::max<uint32_t>(bank_.size(t), 1), {}};
  nf.value = norm_term(t, ctx);
  return nf;
}

NormalForm Rewriter::normalize(const LinComb& x) {
  NormalForm nf;
  uint32_t max_size = 1;
  for (const auto& [t, c] : x.coeffs()) max_size = std::max(max_size, bank_.size(t));
  Ctx ctx{nf.certificate, 64 * max_size, {}};
  for (const auto& [t, c] : x.coeffs()) nf.value += c * norm_term(t, ctx);
  return nf;
}

LinComb Rewriter::rewrite_star(TermId u, TermId v) {
  for (TermId t : {u, v})
    if (!is_basis_element(bank_, t))
      throw std::invalid_argument("rewrite_star operand is not a basis element: " +
                                  print_term(bank_, t));
  Certificate cert;
  Ctx ctx{cert, 64 * (bank_.size(u) + bank_.size(v)), {}};
  return star_nf(u, v, ctx);
}

LinComb Rewriter::rewrite_bracket(TermId y, TermId z, TermId w) {
  for (TermId t : {y, z, w})
    if (!is_basis_element(bank_, t))
      throw std::invalid_argument("rewrite_bracket slot is not a basis element: " +
                                  print_term(bank_, t));
  Certificate cert;
  Ctx ctx{cert, 64 * (bank_.size(y) + bank_.size(z) + bank_.size(w)), {}};
  return bracket_nf(y, z, w, ctx);
}

LinComb Rewriter::lts_hall_rewrite(TermId t) {
  if (bank_.kind(t) != Kind::Bracket)
    throw std::invalid_argument("lts_hall_rewrite needs a bracket-rooted term");
  Certificate cert;
  Ctx ctx{cert, 64 * bank_.size(t), {}};
  return lts_nf(t, ctx);
}

LinComb Rewriter::norm_term(TermId t, Ctx& ctx) {
  {
    std::shared_lock lk(mu_);
    auto it = memo_norm_.find(t);
    if (it != memo_norm_.end()) return it->second;
  }
  LinComb r;
  switch (bank_.kind(t)) {
    case Kind::Leaf:
      r.add(1, t);
      break;
    case Kind::Star: {
      LinComb lu = norm_term(bank_.child(t, 0), ctx);
      LinComb lv = norm_term(bank_.child(t, 1), ctx);
      for (const auto& [u, cu] : lu.coeffs())
        for (const auto& [v, cv] : lv.coeffs()) r += Rational(cu * cv) * star_nf(u, v, ctx);
      break;
    }
    case Kind::Bracket: {
      LinComb ly = norm_term(bank_.child(t, 0), ctx);
      LinComb lz = norm_term(bank_.child(t, 1), ctx);
      LinComb lw = norm_term(bank_.child(t, 2), ctx);
      for (const auto& [y, cy] : ly.coeffs())
        for (const auto& [z, cz] : lz.coeffs())
          for (const auto& [w, cw] : lw.coeffs())
            r += Rational(cy * cz * cw) * bracket_nf(y, z, w, ctx);
      break;
    }
  }
  std::unique_lock lk(mu_);
  return memo_norm_.emplace(t, std::move(r)).first->second;
}

LinComb Rewriter::star_nf(TermId u, TermId v, Ctx& ctx) {
  if (u == v) {
    count_rule(ctx.cert, "LY1");
    return {};
  }
  auto c = compare_flatten(bank_, u, v);
  if (c > 0) return LinComb(1, bank_.star(u, v));
  if (c < 0) {
    count_rule(ctx.cert, "LY1");
    return LinComb(-1, bank_.star(v, u));
  }
  throw FlattenCollision(u, v, "flatten collision between " + print_term(bank_, u) + " and " +
                                   print_term(bank_, v));
}

LinComb Rewriter::star2(TermId a, TermId b, TermId c, Ctx& ctx) {
  LinComb inner = star_nf(a, b, ctx);
  LinComb out;
  for (const auto& [e, k] : inner.coeffs()) out += k * star_nf(e, c, ctx);
  return out;
}

LinComb Rewriter::bracket_nf(TermId y, TermId z, TermId w, Ctx& ctx) {
  std::array<TermId, 3> key{y, z, w};
  {
    std::shared_lock lk(mu_);
    auto it = memo_bracket_.find(key);
    if (it != memo_bracket_.end()) return it->second;
  }
  ctx.stack.push_back(key);
  if (ctx.stack.size() > ctx.cap) depth_trip(ctx);
  LinComb r = bracket_step(y, z, w, ctx);
  ctx.stack.pop_back();
  std::unique_lock lk(mu_);
  return memo_bracket_.emplace(key, std::move(r)).first->second;
}

// One dispatch of the bracket rules. Precondition: y, z, w are basis
// elements. The case order matters; each branch either finishes or hands a
// strictly tamer configuration to the recursion.
LinComb Rewriter::bracket_step(TermId y, TermId z, TermId w, Ctx& ctx) {
  // Equal first two slots vanish.
  if (y == z) {
    count_rule(ctx.cert, "LY2");
    return {};
  }
  // A star in slot 3 splits through the derivation rule:
  // [y,z,p*q] = p*[y,z,q] + [y,z,p]*q.
  if (bank_.kind(w) == Kind::Star) {
    count_rule(ctx.cert, "LY5");
    TermId p = bank_.child(w, 0), q = bank_.child(w, 1);
    LinComb hq = bracket_nf(y, z, q, ctx);
    LinComb hp = bracket_nf(y, z, p, ctx);
    LinComb r;
    for (const auto& [e, c] : hq.coeffs()) r += c * star_nf(p, e, ctx);
    for (const auto& [e, c] : hp.coeffs()) r += c * star_nf(e, q, ctx);
    return r;
  }
  // Orient slots 1 and 2 by their flattened words.
  auto c12 = compare_flatten(bank_, y, z);
  if (c12 < 0) {
    count_rule(ctx.cert, "LY2");
    return Rational(-1) * bracket_nf(z, y, w, ctx);
  }
  if (c12 == 0)
    throw FlattenCollision(y, z, "flatten collision between " + print_term(bank_, y) + " and " +
                                     print_term(bank_, z));
  if (bank_.kind(y) == Kind::Star) {
    TermId u = bank_.child(y, 0), v = bank_.child(y, 1);
    if (bank_.kind(z) == Kind::Star) {
      // Stars in both leading slots: expand the whole cyclic relation,
      // [y,z,w] = -[z,w,y] - [w,y,z] - (y*z)*w - (z*w)*y - (w*y)*z.
      count_rule(ctx.cert, "LY3");
      LinComb r;
      r -= bracket_nf(z, w, y, ctx);
      r -= bracket_nf(w, y, z, ctx);
      r -= star2(y, z, w, ctx);
      r -= star2(z, w, y, ctx);
      r -= star2(w, y, z, ctx);
      return r;
    }
    // A bracket in slot 2 would have outweighed the star in slot 1 and been
    // swapped above, so z is a generator here.
    assert(bank_.kind(z) == Kind::Leaf);
    if (!(bank_.kind(v) == Kind::Leaf && bank_.leaf_rank(v) <= bank_.leaf_rank(z))) {
      // Split the star across slots 1 and 2:
      // [u*v,z,w] = -[v*z,u,w] - [z*u,v,w].
      count_rule(ctx.cert, "LY4");
      LinComb svz = star_nf(v, z, ctx);
      LinComb szu = star_nf(z, u, ctx);
      LinComb r;
      for (const auto& [e, c] : svz.coeffs()) r -= c * bracket_nf(e, u, w, ctx);
      for (const auto& [e, c] : szu.coeffs()) r -= c * bracket_nf(e, v, w, ctx);
      return r;
    }
  }
  // Rotate until f(z) <= f(w), folding the slot-1/2 swap into the cycle:
  // [y,z,w] = -[z,w,y] + [y,w,z] - (y*z)*w - (z*w)*y - (w*y)*z.
  if (compare_flatten(bank_, z, w) > 0) {
    count_rule(ctx.cert, "hall-reorder");
    LinComb r;
    r -= bracket_nf(z, w, y, ctx);
    r += bracket_nf(y, w, z, ctx);
    r -= star2(y, z, w, ctx);
    r -= star2(z, w, y, ctx);
    r -= star2(w, y, z, ctx);
    return r;
  }
  if (bank_.kind(z) == Kind::Star) {
    // Slot 1 must be a bracket here: a generator or star in slot 1 flattens
    // to a single letter smaller than the slot-2 star, so it was swapped or
    // expanded already. The bracket must repeat the star's factors exactly
    // and close with a generator; otherwise expand slot 1.
    assert(bank_.kind(y) == Kind::Bracket);
    bool matches = bank_.child(y, 0) == bank_.child(z, 0) &&
                   bank_.child(y, 1) == bank_.child(z, 1) &&
                   bank_.kind(bank_.child(y, 2)) == Kind::Leaf;
    if (!matches) {
      count_rule(ctx.cert, "LY6");
      return ly6_expand(y, z, w, ctx);
    }
  } else if (bank_.kind(y) == Kind::Bracket &&
             compare_flatten(bank_, bank_.child(y, 2), z) > 0) {
    // The Hall letter condition on slot 1 fails: its closing slot outweighs
    // z, so expand slot 1.
    count_rule(ctx.cert, "LY6");
    return ly6_expand(y, z, w, ctx);
  }
  TermId t = bank_.bracket(y, z, w);
  if (!is_basis_element(bank_, t))
    throw std::logic_error("rewriting stalled off the basis at " + print_term(bank_, t));
  return LinComb(1, t);
}

// Moves a bracket out of slot 1 through the derivation rule:
// [[p,q,r],z,w] = [p,q,[r,z,w]] - [r,[p,q,z],w] - [r,z,[p,q,w]].
// Inner brackets are strictly smaller; outer ones keep the degree but carry
// a strictly smaller slot 1.
LinComb Rewriter::ly6_expand(TermId y, TermId z, TermId w, Ctx& ctx) {
  TermId p = bank_.child(y, 0), q = bank_.child(y, 1), r = bank_.child(y, 2);
  LinComb h1 = bracket_nf(r, z, w, ctx);
  LinComb h2 = bracket_nf(p, q, z, ctx);
  LinComb h3 = bracket_nf(p, q, w, ctx);
  LinComb out;
  for (const auto& [e, c] : h1.coeffs()) out += c * bracket_nf(p, q, e, ctx);
  for (const auto& [e, c] : h2.coeffs()) out -= c * bracket_nf(r, e, w, ctx);
  for (const auto& [e, c] : h3.coeffs()) out -= c * bracket_nf(r, z, e, ctx);
  return out;
}

LinComb Rewriter::lts_nf(TermId t, Ctx& ctx) {
  if (bank_.kind(t) != Kind::Bracket) return LinComb(1, t);
  {
    std::shared_lock lk(mu_);
    auto it = memo_lts_.find(t);
    if (it != memo_lts_.end()) return it->second;
  }
  LinComb ly = lts_nf(bank_.child(t, 0), ctx);
  LinComb lz = lts_nf(bank_.child(t, 1), ctx);
  LinComb lw = lts_nf(bank_.child(t, 2), ctx);
  LinComb r;
  for (const auto& [y, cy] : ly.coeffs())
    for (const auto& [z, cz] : lz.coeffs())
      for (const auto& [w, cw] : lw.coeffs())
        r += Rational(cy * cz * cw) * lts_bracket(y, z, w, ctx);
  std::unique_lock lk(mu_);
  return memo_lts_.emplace(t, std::move(r)).first->second;
}

// Bracket dispatch of the triple-system leg: the slot-1/2 rules and the
// cyclic rotation as above, but stars stay atomic and the rotation emits its
// star terms untouched as defects.
LinComb Rewriter::lts_bracket(TermId y, TermId z, TermId w, Ctx& ctx) {
  std::array<TermId, 3> key{y, z, w};
  {
    std::shared_lock lk(mu_);
    auto it = memo_lts_bracket_.find(key);
    if (it != memo_lts_bracket_.end()) return it->second;
  }
  ctx.stack.push_back(key);
  if (ctx.stack.size() > ctx.cap) depth_trip(ctx);

  LinComb r;
  if (y == z) {
    count_rule(ctx.cert, "LY2");
  } else if (auto c12 = compare_flatten(bank_, y, z); c12 < 0) {
    count_rule(ctx.cert, "LY2");
    r = Rational(-1) * lts_bracket(z, y, w, ctx);
  } else if (c12 == 0) {
    throw FlattenCollision(y, z, "flatten collision between " + print_term(bank_, y) + " and " +
                                     print_term(bank_, z));
  } else if (compare_flatten(bank_, z, w) > 0) {
    count_rule(ctx.cert, "hall-reorder");
    r -= lts_bracket(z, w, y, ctx);
    r += lts_bracket(y, w, z, ctx);
    r.add(-1, bank_.star(bank_.star(y, z), w));
    r.add(-1, bank_.star(bank_.star(z, w), y));
    r.add(-1, bank_.star(bank_.star(w, y), z));
  } else if (bank_.kind(y) == Kind::Bracket &&
             compare_flatten(bank_, bank_.child(y, 2), z) > 0) {
    count_rule(ctx.cert, "LY6");
    TermId p = bank_.child(y, 0), q = bank_.child(y, 1), s = bank_.child(y, 2);
    LinComb h1 = lts_bracket(s, z, w, ctx);
    LinComb h2 = lts_bracket(p, q, z, ctx);
    LinComb h3 = lts_bracket(p, q, w, ctx);
    for (const auto& [e, c] : h1.coeffs()) r += c * lts_bracket(p, q, e, ctx);
    for (const auto& [e, c] : h2.coeffs()) r -= c * lts_bracket(s, e, w, ctx);
    for (const auto& [e, c] : h3.coeffs()) r -= c * lts_bracket(s, z, e, ctx);
  } else {
    TermId t = bank_.bracket(y, z, w);
    if (!is_lts_hall(bank_, t))
      throw std::logic_error("triple-system rewriting stalled at " + print_term(bank_, t));
    r.add(1, t);
  }

  ctx.stack.pop_back();
  std::unique_lock lk(mu_);
  return memo_lts_bracket_.emplace(key, std::move(r)).first->second;
}

}  // namespace lyhall
