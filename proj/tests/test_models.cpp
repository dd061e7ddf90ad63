// Concrete-model checks: structure-constant loading, splitting validation,
// induced tables, axiom verification, and evaluation of free-algebra terms.

#include "doctest.h"

#include <random>

#include "lyhall/models.hpp"
#include "lyhall/rewrite.hpp"
#include "lyhall/term_io.hpp"

using namespace lyhall;

static const std::string kData = LYHALL_DATA_DIR;

static Vec vec_of(std::initializer_list<int> entries) {
  Vec v;
  for (int e : entries) v.emplace_back(e);
  return v;
}

TEST_CASE("jacobi verdicts on frozen tables") {
  auto so3 = load_model_text(R"({
    "basis": ["L1", "L2", "L3"],
    "brackets": {"0,1": {"L3": "1"}, "0,2": {"L2": "-1"}, "1,2": {"L1": "1"}},
    "h": [], "m": ["L1", "L2", "L3"]
  })");
  CHECK(check_jacobi(so3.algebra));

  // Heisenberg: [L1,L2] = L3 and L3 central.
  auto heis = load_model_text(R"({
    "basis": ["L1", "L2", "L3"],
    "brackets": {"0,1": {"L3": "1"}},
    "h": [], "m": ["L1", "L2", "L3"]
  })");
  CHECK(check_jacobi(heis.algebra));

  auto bad = load_model_file(kData + "/bad_jacobi.json");
  std::string witness;
  CHECK(!check_jacobi(bad.algebra, &witness));
  CHECK(witness == "(L1, L2, L3)");
}

TEST_CASE("malformed model files are rejected") {
  auto load = [](const std::string& text) { return load_model_text(text); };
  const std::string ok_tail = R"(, "h": [], "m": ["x", "y"]})";

  // Keys must name the upper triangle; a reversed or diagonal key would let a
  // file smuggle in an inconsistent (non-antisymmetric) table.
  CHECK_THROWS_AS(load(R"({"basis": ["x", "y"], "brackets": {"1,0": {"x": "1"}})" + ok_tail),
                  ModelError);
  CHECK_THROWS_AS(load(R"({"basis": ["x", "y"], "brackets": {"0,0": {"x": "1"}})" + ok_tail),
                  ModelError);
  CHECK_THROWS_AS(load(R"({"basis": ["x", "y"], "brackets": {"0,5": {"x": "1"}})" + ok_tail),
                  ModelError);
  CHECK_THROWS_AS(load(R"({"basis": ["x", "y"], "brackets": {"0,1": {"z": "1"}})" + ok_tail),
                  ModelError);
  CHECK_THROWS_AS(load(R"({"basis": ["x", "y"], "brackets": {"0,1": {"x": "nope"}})" + ok_tail),
                  ModelError);
  CHECK_THROWS_AS(load(R"({"basis": ["x", "y"], "brackets": {"0,1": {"x": "1/0"}})" + ok_tail),
                  ModelError);
  CHECK_THROWS_AS(load(R"({"basis": ["x", "x"], "brackets": {})" + ok_tail), ModelError);
  CHECK_THROWS_AS(load(R"({"basis": ["x", "y"], "brackets": {}, "h": []})"), ModelError);
  CHECK_THROWS_AS(load("not json at all"), ModelError);
  CHECK_THROWS_AS(load_model_file(kData + "/no_such_file.json"), ModelError);
}

TEST_CASE("splitting must partition the basis") {
  auto so3 = load_model_file(kData + "/so3_lie.json");
  ReductivePair overlap{{0, 1, 2}, {2}};
  CHECK_THROWS_AS(check_reductive(so3.algebra, overlap), ModelError);
  ReductivePair missing{{0, 1}, {}};
  CHECK_THROWS_AS(check_reductive(so3.algebra, missing), ModelError);
}

TEST_CASE("reductive verdicts") {
  auto sym = load_model_file(kData + "/so3_sym.json");
  CHECK(check_jacobi(sym.algebra));
  CHECK(check_reductive(sym.algebra, sym.split));

  // Empty h is vacuously reductive.
  auto lie = load_model_file(kData + "/so3_lie.json");
  CHECK(check_reductive(lie.algebra, lie.split));

  // h = span(L1, L2) is not a subalgebra of so(3): [L1,L2] = L3 escapes.
  ReductivePair bad{{2}, {0, 1}};
  std::string witness;
  CHECK(!check_reductive(sym.algebra, bad, &witness));
  CHECK(witness == "(L1, L2)");
}

TEST_CASE("induced tables match the hand-computed splittings") {
  SUBCASE("symmetric pair: star vanishes, bracket rotates") {
    auto mf = load_model_file(kData + "/so3_sym.json");
    LYModel M = induce_ly(mf.algebra, mf.split);
    REQUIRE(M.dim() == 2);
    CHECK(M.coords() == std::vector<std::string>{"L1", "L2"});
    for (uint32_t i = 0; i < 2; ++i)
      for (uint32_t j = 0; j < 2; ++j)
        CHECK(M.star(M.unit(i), M.unit(j)) == vec_of({0, 0}));
    CHECK(M.bracket(M.unit(0), M.unit(1), M.unit(0)) == vec_of({0, 1}));
    CHECK(M.bracket(M.unit(0), M.unit(1), M.unit(1)) == vec_of({-1, 0}));
  }
  SUBCASE("empty h: star is the Lie bracket, triple bracket vanishes") {
    auto mf = load_model_file(kData + "/so3_lie.json");
    LYModel M = induce_ly(mf.algebra, mf.split);
    REQUIRE(M.dim() == 3);
    CHECK(M.star(M.unit(0), M.unit(1)) == vec_of({0, 0, 1}));
    CHECK(M.star(M.unit(1), M.unit(2)) == vec_of({1, 0, 0}));
    for (uint32_t i = 0; i < 3; ++i)
      for (uint32_t j = 0; j < 3; ++j)
        for (uint32_t k = 0; k < 3; ++k)
          CHECK(M.bracket(M.unit(i), M.unit(j), M.unit(k)) == vec_of({0, 0, 0}));
  }
  SUBCASE("slanted complement through a central direction") {
    auto mf = load_model_file(kData + "/so3_central.json");
    LYModel M = induce_ly(mf.algebra, mf.split);
    REQUIRE(M.dim() == 3);
    CHECK(M.coords() == std::vector<std::string>{"L1", "L2", "c"});
    CHECK(M.star(M.unit(0), M.unit(1)) == vec_of({0, 0, -1}));
    CHECK(M.star(M.unit(0), M.unit(2)) == vec_of({0, 0, 0}));
    CHECK(M.bracket(M.unit(0), M.unit(1), M.unit(0)) == vec_of({0, 1, 0}));
    CHECK(M.bracket(M.unit(0), M.unit(1), M.unit(1)) == vec_of({-1, 0, 0}));
    CHECK(M.bracket(M.unit(0), M.unit(1), M.unit(2)) == vec_of({0, 0, 0}));
  }
}

TEST_CASE("axioms hold for the shipped models, including sign flips") {
  for (const char* f : {"/so3_sym.json", "/so3_lie.json", "/so3_central.json"}) {
    CAPTURE(f);
    auto mf = load_model_file(kData + f);
    REQUIRE(check_jacobi(mf.algebra));
    REQUIRE(check_reductive(mf.algebra, mf.split));
    LYModel M = induce_ly(mf.algebra, mf.split);
    CHECK(M.check_axioms().all_ok());
    // Negating either operation (or both) preserves the identities here; the
    // axiom checker must not hard-code a sign convention.
    CHECK(M.flipped(true, false).check_axioms().all_ok());
    CHECK(M.flipped(false, true).check_axioms().all_ok());
    CHECK(M.flipped(true, true).check_axioms().all_ok());
  }
}

static LYModel::StarTable star_table_of(const LYModel& M) {
  uint32_t n = M.dim();
  LYModel::StarTable t(n, std::vector<Vec>(n));
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j) t[i][j] = M.star(M.unit(i), M.unit(j));
  return t;
}

static LYModel::BracketTable bracket_table_of(const LYModel& M) {
  uint32_t n = M.dim();
  LYModel::BracketTable t(n, std::vector<std::vector<Vec>>(n, std::vector<Vec>(n)));
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j)
      for (uint32_t k = 0; k < n; ++k)
        t[i][j][k] = M.bracket(M.unit(i), M.unit(j), M.unit(k));
  return t;
}

TEST_CASE("axiom failures carry witness tuples") {
  auto mf = load_model_file(kData + "/so3_sym.json");
  LYModel M = induce_ly(mf.algebra, mf.split);

  SUBCASE("corrupted star diagonal trips the alternating identity") {
    auto star = star_table_of(M);
    star[0][0] = M.unit(1);  // L1 * L1 = L2
    LYModel bad(std::vector<std::string>(M.coords()), star, bracket_table_of(M));
    auto rep = bad.check_axioms();
    CHECK(!rep.all_ok());
    CHECK(!rep.axiom[0].ok);
    CHECK(rep.axiom[0].witness == "(L1, L1)");
  }
  SUBCASE("corrupted triple bracket trips the derivation identity") {
    auto bracket = bracket_table_of(M);
    bracket[1][0][0] = M.unit(0);  // breaks antisymmetry in the first slots
    LYModel bad(std::vector<std::string>(M.coords()), star_table_of(M), bracket);
    auto rep = bad.check_axioms();
    CHECK(!rep.axiom[1].ok);
    CHECK(rep.axiom[1].witness == "(L1, L2, L1)");
  }
}

TEST_CASE("zero tables satisfy every axiom") {
  uint32_t n = 4;
  Vec zero(n, Rational(0));
  LYModel::StarTable star(n, std::vector<Vec>(n, zero));
  LYModel::BracketTable bracket(
      n, std::vector<std::vector<Vec>>(n, std::vector<Vec>(n, zero)));
  LYModel abelian({"e1", "e2", "e3", "e4"}, star, bracket);
  CHECK(abelian.check_axioms().all_ok());
}

TEST_CASE("axiom checking is capped by dimension") {
  uint32_t n = 13;
  Vec zero(n, Rational(0));
  std::vector<std::string> names;
  for (uint32_t i = 0; i < n; ++i) names.push_back("e" + std::to_string(i));
  LYModel::StarTable star(n, std::vector<Vec>(n, zero));
  LYModel::BracketTable bracket(
      n, std::vector<std::vector<Vec>>(n, std::vector<Vec>(n, zero)));
  LYModel big(names, star, bracket);
  CHECK_THROWS_AS(big.check_axioms(), CapExceeded);
}

TEST_CASE("splittings must be basis-aligned") {
  // Subspace spans like "L2+L3" are not supported; h and m list basis names.
  CHECK_THROWS_AS(load_model_text(R"({
    "basis": ["L1", "L2", "L3"],
    "brackets": {"0,1": {"L3": "1"}, "0,2": {"L2": "-1"}, "1,2": {"L1": "1"}},
    "h": ["L3"], "m": ["L1", "L2+L3"]
  })"),
                  ModelError);
}

TEST_CASE("evaluation of free terms in a model") {
  auto mf = load_model_file(kData + "/so3_sym.json");
  LYModel M = induce_ly(mf.algebra, mf.split);
  TermBank bank(GeneratorSet({"a", "b"}));
  std::vector<Vec> assign = {M.unit(0), M.unit(1)};

  CHECK(eval(M, bank, parse_term(bank, "a"), assign) == assign[0]);
  CHECK(eval(M, bank, parse_term(bank, "[a,b,a]"), assign) == vec_of({0, 1}));
  CHECK(eval(M, bank, parse_term(bank, "a*b"), assign) == vec_of({0, 0}));
  CHECK(eval(M, bank, parse_term(bank, "[a,b,[a,b,b]]"), assign) == vec_of({0, -1}));

  // Generators without an assigned vector are an error, as are vectors of the
  // wrong dimension.
  CHECK_THROWS_AS(eval(M, bank, parse_term(bank, "a*b"), {M.unit(0)}), ModelError);
  CHECK_THROWS_AS(eval(M, bank, parse_term(bank, "a"), {vec_of({1, 0, 0}), M.unit(1)}),
                  ModelError);
}

namespace {

TermId random_model_term(TermBank& bank, std::mt19937& rng, uint32_t size) {
  if (size == 1) return bank.leaf(rng() % bank.generators().count());
  if (size >= 3 && rng() % 2 == 0) {
    uint32_t rest = size - 1;
    uint32_t a = 1 + rng() % (rest - 1);
    uint32_t remaining = rest - a;
    uint32_t b = remaining >= 2 ? 1 + rng() % (remaining - 1) : 1;
    uint32_t c = rest - a - b;
    if (c >= 1)
      return bank.bracket(random_model_term(bank, rng, a),
                          random_model_term(bank, rng, b),
                          random_model_term(bank, rng, c));
  }
  uint32_t a = 1 + rng() % (size - 1);
  return bank.star(random_model_term(bank, rng, a),
                   random_model_term(bank, rng, size - a));
}

}  // namespace

TEST_CASE("evaluation factors through normal forms") {
  // Rewriting only uses consequences of the six identities, so any model that
  // satisfies them must give eval(t) == eval(normalize(t)).
  std::mt19937 rng(20260816);
  for (const char* f : {"/so3_sym.json", "/so3_lie.json", "/so3_central.json"}) {
    CAPTURE(f);
    auto mf = load_model_file(kData + f);
    LYModel M = induce_ly(mf.algebra, mf.split);
    TermBank bank(GeneratorSet({"a", "b"}));
    Rewriter rw(bank);

    std::vector<std::vector<Vec>> assignments;
    assignments.push_back({M.unit(0), M.unit(M.dim() > 1 ? 1 : 0)});
    {
      Vec x = M.unit(0);
      Vec y = M.unit(M.dim() - 1);
      x[M.dim() > 1 ? 1 : 0] += Rational(1, 2);
      y[0] += Rational(-2, 3);
      assignments.push_back({x, y});
    }

    for (const auto& assign : assignments)
      for (int trial = 0; trial < 40; ++trial) {
        uint32_t size = 1 + rng() % 6;
        TermId t = random_model_term(bank, rng, size);
        CAPTURE(print_term(bank, t));
        Vec direct = eval(M, bank, t, assign);
        Vec via_nf = eval(M, bank, rw.normalize(t).value, assign);
        CHECK(direct == via_nf);
      }
  }
}
