#pragma once

#include <cassert>
#include <compare>
#include <cstdint>
#include <deque>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace lyhall {

// Terms live in the free magma with one binary operation (star, written u*v)
// and one ternary operation (bracket, written [y,z,w]) over an ordered set of
// generators. "Mag-bar" below means a term whose root is not a bracket, i.e.
// a generator or a star; those act as the letters of the flattened alphabet.

enum class Kind : uint8_t { Leaf, Star, Bracket };

using TermId = uint32_t;
using Word = std::vector<TermId>;  // sequence of Mag-bar letters

class GeneratorSet {
 public:
  GeneratorSet() = default;
  // Position in `names` defines the generator order: earlier = smaller.
  explicit GeneratorSet(std::vector<std::string> names);

  uint32_t count() const { return static_cast<uint32_t>(names_.size()); }
  const std::string& name(uint32_t rank) const { return names_.at(rank); }
  std::optional<uint32_t> rank_of(const std::string& name) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, uint32_t> ranks_;
};

// Interning arena. A TermId is valid only against the bank that produced it;
// structural equality of interned terms is TermId equality. Readers and the
// interning writers may run concurrently (shared_mutex).
class TermBank {
 public:
  explicit TermBank(GeneratorSet gens);

  const GeneratorSet& generators() const { return gens_; }

  TermId leaf(uint32_t rank);
  TermId star(TermId u, TermId v);
  TermId bracket(TermId y, TermId z, TermId w);

  Kind kind(TermId t) const;
  uint32_t size(TermId t) const;  // number of generator leaves
  uint32_t leaf_rank(TermId t) const;
  TermId child(TermId t, int slot) const;  // star: 0,1; bracket: 0,1,2

  bool is_magbar(TermId t) const { return kind(t) != Kind::Bracket; }

  // Forgetting map: Mag-bar terms are single letters; brackets concatenate the
  // flattened slots, recursing through nested brackets.
  Word flatten(TermId t) const;

  // Per-generator leaf counts; index = generator rank.
  std::vector<uint32_t> multidegree(TermId t) const;

  size_t node_count() const;

 private:
  struct Node {
    Kind kind;
    uint32_t a = 0, b = 0, c = 0;  // leaf: a = rank; star: a,b; bracket: a,b,c
    uint32_t size = 0;
  };
  struct Key {
    Kind kind;
    uint32_t a, b, c;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    size_t operator()(const Key& k) const {
      uint64_t h = static_cast<uint64_t>(k.kind);
      for (uint64_t x : {k.a, k.b, k.c}) h = h * 0x9e3779b97f4a7c15ULL + (x + 1);
      return static_cast<size_t>(h ^ (h >> 32));
    }
  };

  TermId intern(Key key, uint32_t size);
  Node node(TermId t) const;

  GeneratorSet gens_;
  mutable std::shared_mutex mu_;
  std::deque<Node> nodes_;
  std::unordered_map<Key, TermId, KeyHash> index_;
};

// Total order on terms of one bank. Size first (larger size = larger term);
// at equal size a bracket beats a star, both composites compare slot-wise
// left to right, and leaves compare by generator rank.
std::strong_ordering compare_terms(const TermBank& bank, TermId x, TermId y);

// Order on words: length first, then leftmost differing letter.
std::strong_ordering compare_words(const TermBank& bank, const Word& x, const Word& y);

// compare_words of the flattened images; the workhorse of the Hall conditions.
std::strong_ordering compare_flatten(const TermBank& bank, TermId x, TermId y);

}  // namespace lyhall
