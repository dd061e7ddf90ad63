#include <map>
#include <set>

#include "doctest.h"
#include "lyhall/hall.hpp"
#include "lyhall/term_io.hpp"

using namespace lyhall;

namespace {

std::vector<std::string> printed(TermBank& bank, const std::vector<TermId>& ts) {
  std::vector<std::string> out;
  for (TermId t : ts) out.push_back(print_term(bank, t));
  return out;
}

}  // namespace

TEST_CASE("magma counts over one generator") {
  TermBank bank(GeneratorSet({"a"}));
  Enumerator en(bank);
  CHECK(en.magma(Signature::BinaryTernary, 1).size() == 1);
  CHECK(en.magma(Signature::BinaryTernary, 2).size() == 1);
  CHECK(en.magma(Signature::BinaryTernary, 3).size() == 3);
  CHECK(en.magma(Signature::BinaryTernary, 4).size() == 10);
  CHECK(en.magma(Signature::TernaryOnly, 1).size() == 1);
  CHECK(en.magma(Signature::TernaryOnly, 2).empty());
  CHECK(en.magma(Signature::TernaryOnly, 3).size() == 1);
  CHECK(en.magma(Signature::TernaryOnly, 5).size() == 3);
  // the arithmetic counter agrees with materialized slices
  for (uint32_t n = 1; n <= 6; ++n) {
    CHECK(en.magma_count(Signature::BinaryTernary, n) ==
          static_cast<long>(en.magma(Signature::BinaryTernary, n).size()));
    CHECK(en.magma_count(Signature::TernaryOnly, n) ==
          static_cast<long>(en.magma(Signature::TernaryOnly, n).size()));
  }
}

TEST_CASE("magma slice at degree two over two generators, sorted") {
  TermBank bank(GeneratorSet({"a", "b"}));
  Enumerator en(bank);
  CHECK(printed(bank, en.magma(Signature::BinaryTernary, 2)) ==
        std::vector<std::string>{"(a*a)", "(a*b)", "(b*a)", "(b*b)"});
}

TEST_CASE("magma slices are strictly sorted") {
  TermBank bank(GeneratorSet({"a", "b"}));
  Enumerator en(bank);
  for (uint32_t n = 1; n <= 5; ++n) {
    const auto& slice = en.magma(Signature::BinaryTernary, n);
    for (size_t i = 1; i < slice.size(); ++i)
      CHECK(compare_terms(bank, slice[i - 1], slice[i]) == std::strong_ordering::less);
  }
}

TEST_CASE("Hall membership examples") {
  TermBank bank(GeneratorSet({"a", "b"}));
  TermId a = bank.leaf(0), b = bank.leaf(1);
  TermId baa = bank.bracket(b, a, a);
  CHECK(is_lts_hall(bank, a));
  CHECK(is_lts_hall(bank, bank.star(a, b)));  // letters are atomic
  CHECK(is_lts_hall(bank, baa));
  CHECK(is_lts_hall(bank, bank.bracket(baa, a, b)));
  CHECK(!is_lts_hall(bank, bank.bracket(a, b, a)));    // first slot too small
  CHECK(!is_lts_hall(bank, bank.bracket(a, a, b)));    // equal first slots
  CHECK(!is_lts_hall(bank, bank.bracket(b, a, bank.bracket(b, a, a))) ==
        false);  // [b,a,[b,a,a]] is Hall: (a) <= (b,a,a)
  // third-slot condition on a bracket first slot
  TermId bab = bank.bracket(b, a, b);
  CHECK(!is_lts_hall(bank, bank.bracket(bab, a, a)));  // r=b > z=a
  CHECK(is_lts_hall(bank, bank.bracket(bab, b, b)));
}

TEST_CASE("basis membership examples") {
  TermBank bank(GeneratorSet({"a", "b", "c"}));
  TermId a = bank.leaf(0), b = bank.leaf(1), c = bank.leaf(2);
  CHECK(is_basis_element(bank, a));
  CHECK(is_basis_element(bank, bank.star(b, a)));
  CHECK(!is_basis_element(bank, bank.star(a, b)));
  CHECK(!is_basis_element(bank, bank.star(a, a)));
  CHECK(is_basis_element(bank, bank.bracket(b, a, a)));
  CHECK(!is_basis_element(bank, bank.bracket(b, a, bank.star(b, a))));  // star third slot
  CHECK(is_basis_element(bank, bank.bracket(bank.star(b, a), a, c)));
  CHECK(is_basis_element(bank, bank.bracket(bank.star(b, a), c, c)));   // v=a <= z=c
  CHECK(!is_basis_element(bank, bank.bracket(bank.star(c, b), a, a)));  // v=b > z=a
  // star second slot forces the first slot to repeat its factors
  TermId ba = bank.star(b, a);
  CHECK(is_basis_element(bank, bank.bracket(bank.bracket(b, a, a), ba, bank.bracket(b, a, a))));
  CHECK(is_basis_element(bank, bank.bracket(bank.bracket(b, a, b), ba, bank.bracket(b, a, a))));
  CHECK(!is_basis_element(bank, bank.bracket(bank.bracket(c, a, a), ba, bank.bracket(b, a, a))));
}

TEST_CASE("basis slices at low degrees over two generators") {
  TermBank bank(GeneratorSet({"a", "b"}));
  Enumerator en(bank);
  CHECK(printed(bank, en.basis(1)) == std::vector<std::string>{"a", "b"});
  CHECK(printed(bank, en.basis(2)) == std::vector<std::string>{"(b*a)"});
  CHECK(printed(bank, en.basis(3)) ==
        std::vector<std::string>{"((b*a)*a)", "((b*a)*b)", "[b,a,a]", "[b,a,b]"});
  CHECK(en.basis(4).size() == 11);
  CHECK(en.basis(5).size() == 36);
  // the degree-6 count of the literal clause set; three of these elements
  // are linearly dependent in the quotient (covered by the span tests)
  CHECK(en.basis(6).size() == 117);
}

TEST_CASE("dimension table over one generator collapses above degree one") {
  TermBank bank(GeneratorSet({"a"}));
  Enumerator en(bank);
  auto table = en.basis_dimension_table(3);
  REQUIRE(table.size() == 3);
  CHECK(table[0] == std::pair<uint32_t, size_t>{1, 1});
  CHECK(table[1] == std::pair<uint32_t, size_t>{2, 0});
  CHECK(table[2] == std::pair<uint32_t, size_t>{3, 0});
}

TEST_CASE("basis enumeration matches filtering the magma") {
  TermBank bank(GeneratorSet({"a", "b"}));
  Enumerator en(bank);
  for (uint32_t n = 1; n <= 5; ++n) {
    std::vector<TermId> filtered;
    for (TermId t : en.magma(Signature::BinaryTernary, n))
      if (is_basis_element(bank, t)) filtered.push_back(t);
    CHECK(filtered == en.basis(n));
  }
}

TEST_CASE("basis elements decompose into basis elements") {
  TermBank bank(GeneratorSet({"a", "b"}));
  Enumerator en(bank);
  for (uint32_t n = 1; n <= 6; ++n)
    for (TermId t : en.basis(n)) {
      int slots = bank.kind(t) == Kind::Bracket ? 3 : bank.kind(t) == Kind::Star ? 2 : 0;
      for (int i = 0; i < slots; ++i) CHECK(is_basis_element(bank, bank.child(t, i)));
    }
}

TEST_CASE("flatten is injective on bracket-rooted basis elements") {
  TermBank bank(GeneratorSet({"a", "b"}));
  Enumerator en(bank);
  std::map<Word, TermId> seen;
  for (uint32_t n = 1; n <= 6; ++n)
    for (TermId t : en.basis(n)) {
      if (bank.kind(t) != Kind::Bracket) continue;
      auto [it, fresh] = seen.emplace(bank.flatten(t), t);
      (void)it;
      CHECK(fresh);
    }
}

TEST_CASE("ternary-only specialization: basis membership is Hall membership") {
  TermBank bank(GeneratorSet({"a", "b"}));
  Enumerator en(bank);
  for (uint32_t n : {1u, 3u, 5u, 7u})
    for (TermId t : en.magma(Signature::TernaryOnly, n))
      CHECK(is_basis_element(bank, t) == is_lts_hall(bank, t));
}

TEST_CASE("Hall elements of the ternary magma by degree") {
  TermBank bank(GeneratorSet({"a", "b"}));
  Enumerator en(bank);
  CHECK(en.lts_hall(1).size() == 2);
  CHECK(en.lts_hall(2).empty());
  CHECK(en.lts_hall(3).size() == 2);
  CHECK(printed(bank, en.lts_hall(3)) == std::vector<std::string>{"[b,a,a]", "[b,a,b]"});
  CHECK(en.lts_hall(5).size() == 6);
  // bottom-up generation agrees with filtering the ternary magma
  for (uint32_t n : {1u, 3u, 5u, 7u}) {
    std::vector<TermId> filtered;
    for (TermId t : en.magma(Signature::TernaryOnly, n))
      if (is_lts_hall(bank, t)) filtered.push_back(t);
    CHECK(filtered == en.lts_hall(n));
  }
}

TEST_CASE("degree cap guards enumeration") {
  TermBank bank(GeneratorSet({"a", "b"}));
  Enumerator en(bank, 100000);
  CHECK_THROWS_AS(en.magma(Signature::BinaryTernary, 30), CapExceeded);
  CHECK_THROWS_AS(en.magma(Signature::BinaryTernary, 0), std::invalid_argument);
}
