#include "lyhall/term.hpp"

#include <mutex>
#include <stdexcept>

namespace lyhall {

GeneratorSet::GeneratorSet(std::vector<std::string> names) : names_(std::move(names)) {
  for (uint32_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw std::invalid_argument("empty generator name");
    auto [it, fresh] = ranks_.emplace(names_[i], i);
    (void)it;
    if (!fresh) throw std::invalid_argument("duplicate generator name: " + names_[i]);
  }
}

std::optional<uint32_t> GeneratorSet::rank_of(const std::string& name) const {
  auto it = ranks_.find(name);
  if (it == ranks_.end()) return std::nullopt;
  return it->second;
}

TermBank::TermBank(GeneratorSet gens) : gens_(std::move(gens)) {}

TermId TermBank::intern(Key key, uint32_t size) {
  {
    std::shared_lock lock(mu_);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
  }
  std::unique_lock lock(mu_);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  TermId id = static_cast<TermId>(nodes_.size());
  nodes_.push_back(Node{key.kind, key.a, key.b, key.c, size});
  index_.emplace(key, id);
  return id;
}

TermId TermBank::leaf(uint32_t rank) {
  if (rank >= gens_.count()) throw std::out_of_range("generator rank out of range");
  return intern(Key{Kind::Leaf, rank, 0, 0}, 1);
}

TermId TermBank::star(TermId u, TermId v) {
  return intern(Key{Kind::Star, u, v, 0}, size(u) + size(v));
}

TermId TermBank::bracket(TermId y, TermId z, TermId w) {
  return intern(Key{Kind::Bracket, y, z, w}, size(y) + size(z) + size(w));
}

TermBank::Node TermBank::node(TermId t) const {
  std::shared_lock lock(mu_);
  return nodes_.at(t);
}

Kind TermBank::kind(TermId t) const { return node(t).kind; }
uint32_t TermBank::size(TermId t) const { return node(t).size; }

uint32_t TermBank::leaf_rank(TermId t) const {
  Node n = node(t);
  assert(n.kind == Kind::Leaf);
  return n.a;
}

TermId TermBank::child(TermId t, int slot) const {
  Node n = node(t);
  assert(n.kind != Kind::Leaf);
  switch (slot) {
    case 0: return n.a;
    case 1: return n.b;
    case 2: assert(n.kind == Kind::Bracket); return n.c;
  }
  throw std::out_of_range("bad child slot");
}

Word TermBank::flatten(TermId t) const {
  Node n = node(t);
  if (n.kind != Kind::Bracket) return Word{t};
  Word out;
  for (TermId s : {n.a, n.b, n.c}) {
    Word part = flatten(s);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<uint32_t> TermBank::multidegree(TermId t) const {
  std::vector<uint32_t> deg(gens_.count(), 0);
  // iterative walk; trees are tiny but recursion depth is unbounded in theory
  std::vector<TermId> stack{t};
  while (!stack.empty()) {
    Node n = node(stack.back());
    stack.pop_back();
    switch (n.kind) {
      case Kind::Leaf: deg[n.a]++; break;
      case Kind::Star: stack.push_back(n.a); stack.push_back(n.b); break;
      case Kind::Bracket:
        stack.push_back(n.a); stack.push_back(n.b); stack.push_back(n.c);
        break;
    }
  }
  return deg;
}

size_t TermBank::node_count() const {
  std::shared_lock lock(mu_);
  return nodes_.size();
}

std::strong_ordering compare_terms(const TermBank& bank, TermId x, TermId y) {
  if (x == y) return std::strong_ordering::equal;
  if (auto c = bank.size(x) <=> bank.size(y); c != 0) return c;
  Kind kx = bank.kind(x), ky = bank.kind(y);
  if (kx == Kind::Leaf || ky == Kind::Leaf) {
    // equal sizes: a leaf can only tie in size with another leaf
    assert(kx == Kind::Leaf && ky == Kind::Leaf);
    return bank.leaf_rank(x) <=> bank.leaf_rank(y);
  }
  if (kx != ky) return kx == Kind::Bracket ? std::strong_ordering::greater
                                           : std::strong_ordering::less;
  int slots = kx == Kind::Bracket ? 3 : 2;
  for (int i = 0; i < slots; ++i) {
    if (auto c = compare_terms(bank, bank.child(x, i), bank.child(y, i)); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::strong_ordering compare_words(const TermBank& bank, const Word& x, const Word& y) {
  if (auto c = x.size() <=> y.size(); c != 0) return c;
  for (size_t i = 0; i < x.size(); ++i) {
    if (auto c = compare_terms(bank, x[i], y[i]); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::strong_ordering compare_flatten(const TermBank& bank, TermId x, TermId y) {
  if (x == y) return std::strong_ordering::equal;
  bool lx = bank.is_magbar(x), ly = bank.is_magbar(y);
  if (lx && ly) return compare_terms(bank, x, y);  // both length-1 words
  return compare_words(bank, bank.flatten(x), bank.flatten(y));
}

}  // namespace lyhall
