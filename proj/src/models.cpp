#include "lyhall/models.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "lyhall/hall.hpp"

namespace lyhall {

namespace {

Vec zero_vec(uint32_t n) { return Vec(n, Rational(0)); }

Vec unit_vec(uint32_t n, uint32_t i) {
  Vec v = zero_vec(n);
  v[i] = 1;
  return v;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& c) { return c == 0; });
}

void axpy(const Rational& c, const Vec& x, Vec& into) {
  for (size_t i = 0; i < x.size(); ++i) into[i] += c * x[i];
}

void add_to(const Vec& x, Vec& into) {
  for (size_t i = 0; i < x.size(); ++i) into[i] += x[i];
}

void sub_from(const Vec& x, Vec& into) {
  for (size_t i = 0; i < x.size(); ++i) into[i] -= x[i];
}

Vec negated(Vec v) {
  for (Rational& c : v) c = -c;
  return v;
}

std::string tuple_witness(const std::vector<std::string>& names,
                          std::initializer_list<uint32_t> idx) {
  std::string out = "(";
  bool first = true;
  for (uint32_t i : idx) {
    if (!first) out += ", ";
    out += names[i];
    first = false;
  }
  return out + ")";
}

}  // namespace

LieAlgebraData::LieAlgebraData(
    std::vector<std::string> basis_names,
    const std::map<std::pair<uint32_t, uint32_t>, Vec>& upper_table)
    : names_(std::move(basis_names)) {
  if (names_.empty()) throw ModelError("empty basis");
  {
    auto sorted = names_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ModelError("duplicate basis name");
    for (const auto& n : names_)
      if (n.empty()) throw ModelError("empty basis name");
  }
  const uint32_t n = dim();
  table_.assign(n, std::vector<Vec>(n, zero_vec(n)));
  for (const auto& [key, vec] : upper_table) {
    auto [i, j] = key;
    if (i >= j)
      throw ModelError("bracket table key must have i < j, got (" +
                       std::to_string(i) + "," + std::to_string(j) + ")");
    if (j >= n) throw ModelError("bracket table index out of range");
    if (vec.size() != n) throw ModelError("bracket table entry has wrong dimension");
    table_[i][j] = vec;
    table_[j][i] = negated(vec);
  }
}

std::optional<uint32_t> LieAlgebraData::index_of(const std::string& name) const {
  for (uint32_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

const Vec& LieAlgebraData::bracket(uint32_t i, uint32_t j) const {
  if (i >= dim() || j >= dim()) throw ModelError("basis index out of range");
  return table_[i][j];
}

Vec LieAlgebraData::bracket(const Vec& x, const Vec& y) const {
  const uint32_t n = dim();
  if (x.size() != n || y.size() != n) throw ModelError("vector has wrong dimension");
  Vec out = zero_vec(n);
  for (uint32_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (uint32_t j = 0; j < n; ++j) {
      if (y[j] == 0) continue;
      axpy(Rational(x[i] * y[j]), table_[i][j], out);
    }
  }
  return out;
}

namespace {

std::vector<std::string> parse_name_list(const nlohmann::json& j, const char* field) {
  if (!j.is_array()) throw ModelError(std::string(field) + " must be an array");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw ModelError(std::string(field) + " entries must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::pair<uint32_t, uint32_t> parse_pair_key(const std::string& key) {
  auto comma = key.find(',');
  if (comma == std::string::npos || comma == 0 || comma + 1 == key.size())
    throw ModelError("bracket key must look like \"i,j\": " + key);
  auto parse_index = [&](const std::string& s) -> uint32_t {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) {
          return std::isdigit(c);
        }))
      throw ModelError("bad index in bracket key: " + key);
    unsigned long v = std::stoul(s);
    if (v > 1000000) throw ModelError("bracket key index out of range: " + key);
    return static_cast<uint32_t>(v);
  };
  return {parse_index(key.substr(0, comma)), parse_index(key.substr(comma + 1))};
}

}  // namespace

ModelFile load_model_text(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ModelError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ModelError("model file must be a JSON object");
  for (const char* field : {"basis", "brackets", "h", "m"})
    if (!doc.contains(field)) throw ModelError(std::string("missing field: ") + field);

  auto names = parse_name_list(doc["basis"], "basis");
  std::map<std::string, uint32_t> rank;
  for (uint32_t i = 0; i < names.size(); ++i) {
    if (!rank.emplace(names[i], i).second)
      throw ModelError("duplicate basis name: " + names[i]);
  }

  if (!doc["brackets"].is_object()) throw ModelError("brackets must be an object");
  std::map<std::pair<uint32_t, uint32_t>, Vec> table;
  for (const auto& [key, val] : doc["brackets"].items()) {
    auto ij = parse_pair_key(key);
    if (ij.first >= ij.second)
      throw ModelError("bracket key must have i < j: " + key);
    if (ij.second >= names.size())
      throw ModelError("bracket key index out of range: " + key);
    if (!val.is_object())
      throw ModelError("bracket entry must map names to rationals: " + key);
    Vec vec(names.size(), Rational(0));
    for (const auto& [name, coeff] : val.items()) {
      auto it = rank.find(name);
      if (it == rank.end()) throw ModelError("unknown basis name in bracket: " + name);
      if (!coeff.is_string())
        throw ModelError("coefficients must be rational strings like \"1\" or \"-2/3\"");
      try {
        vec[it->second] = rational_from_string(coeff.get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw ModelError(e.what());
      }
    }
    table.emplace(ij, std::move(vec));
  }

  ReductivePair split;
  for (const auto& name : parse_name_list(doc["h"], "h")) {
    auto it = rank.find(name);
    if (it == rank.end()) throw ModelError("unknown basis name in h: " + name);
    split.h_indices.push_back(it->second);
  }
  for (const auto& name : parse_name_list(doc["m"], "m")) {
    auto it = rank.find(name);
    if (it == rank.end()) throw ModelError("unknown basis name in m: " + name);
    split.m_indices.push_back(it->second);
  }
  return ModelFile{LieAlgebraData(std::move(names), table), std::move(split)};
}

ModelFile load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_model_text(buf.str());
}

bool check_jacobi(const LieAlgebraData& L, std::string* witness) {
  const uint32_t n = L.dim();
  // Antisymmetry is structural, so triples with a repeated index vanish and
  // i < j < k covers everything.
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = i + 1; j < n; ++j)
      for (uint32_t k = j + 1; k < n; ++k) {
        Vec sum = L.bracket(L.bracket(i, j), unit_vec(n, k));
        add_to(L.bracket(L.bracket(j, k), unit_vec(n, i)), sum);
        add_to(L.bracket(L.bracket(k, i), unit_vec(n, j)), sum);
        if (!is_zero(sum)) {
          if (witness) *witness = tuple_witness(L.basis_names(), {i, j, k});
          return false;
        }
      }
  return true;
}

bool check_reductive(const LieAlgebraData& L, const ReductivePair& split,
                     std::string* witness) {
  const uint32_t n = L.dim();
  std::vector<int> side(n, -1);  // 0 = m, 1 = h
  for (uint32_t i : split.m_indices) {
    if (i >= n || side[i] != -1) throw ModelError("index sets do not partition the basis");
    side[i] = 0;
  }
  for (uint32_t i : split.h_indices) {
    if (i >= n || side[i] != -1) throw ModelError("index sets do not partition the basis");
    side[i] = 1;
  }
  if (std::find(side.begin(), side.end(), -1) != side.end())
    throw ModelError("index sets do not partition the basis");

  // [h,h] ⊆ h and [h,m] ⊆ m: the bracket of a basis vector from h against
  // anything must have no components on the other side.
  for (uint32_t i : split.h_indices)
    for (uint32_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const Vec& v = L.bracket(i, j);
      for (uint32_t k = 0; k < n; ++k)
        if (v[k] != 0 && side[k] != side[j]) {
          if (witness) *witness = tuple_witness(L.basis_names(), {i, j});
          return false;
        }
    }
  return true;
}

bool AxiomReport::all_ok() const {
  return std::all_of(axiom.begin(), axiom.end(),
                     [](const AxiomCheck& c) { return c.ok; });
}

LYModel::LYModel(std::vector<std::string> coords, StarTable star, BracketTable bracket)
    : coords_(std::move(coords)), star_(std::move(star)), bracket_(std::move(bracket)) {
  const uint32_t n = dim();
  if (n == 0) throw ModelError("empty coordinate basis");
  auto check_vec = [n](const Vec& v) {
    if (v.size() != n) throw ModelError("table entry has wrong dimension");
  };
  if (star_.size() != n) throw ModelError("star table has wrong shape");
  for (const auto& row : star_) {
    if (row.size() != n) throw ModelError("star table has wrong shape");
    for (const auto& v : row) check_vec(v);
  }
  if (bracket_.size() != n) throw ModelError("bracket table has wrong shape");
  for (const auto& plane : bracket_) {
    if (plane.size() != n) throw ModelError("bracket table has wrong shape");
    for (const auto& row : plane) {
      if (row.size() != n) throw ModelError("bracket table has wrong shape");
      for (const auto& v : row) check_vec(v);
    }
  }
}

std::optional<uint32_t> LYModel::coord_of(const std::string& name) const {
  for (uint32_t i = 0; i < coords_.size(); ++i)
    if (coords_[i] == name) return i;
  return std::nullopt;
}

Vec LYModel::unit(uint32_t i) const {
  if (i >= dim()) throw ModelError("coordinate index out of range");
  return unit_vec(dim(), i);
}

Vec LYModel::star(const Vec& x, const Vec& y) const {
  const uint32_t n = dim();
  if (x.size() != n || y.size() != n) throw ModelError("vector has wrong dimension");
  Vec out = zero_vec(n);
  for (uint32_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (uint32_t j = 0; j < n; ++j) {
      if (y[j] == 0) continue;
      axpy(Rational(x[i] * y[j]), star_[i][j], out);
    }
  }
  return out;
}

Vec LYModel::bracket(const Vec& x, const Vec& y, const Vec& z) const {
  const uint32_t n = dim();
  if (x.size() != n || y.size() != n || z.size() != n)
    throw ModelError("vector has wrong dimension");
  Vec out = zero_vec(n);
  for (uint32_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (uint32_t j = 0; j < n; ++j) {
      if (y[j] == 0) continue;
      Rational cij(x[i] * y[j]);
      for (uint32_t k = 0; k < n; ++k) {
        if (z[k] == 0) continue;
        axpy(Rational(cij * z[k]), bracket_[i][j][k], out);
      }
    }
  }
  return out;
}

LYModel LYModel::flipped(bool flip_star, bool flip_bracket) const {
  LYModel out = *this;
  if (flip_star)
    for (auto& row : out.star_)
      for (auto& v : row) v = negated(std::move(v));
  if (flip_bracket)
    for (auto& plane : out.bracket_)
      for (auto& row : plane)
        for (auto& v : row) v = negated(std::move(v));
  return out;
}

AxiomReport LYModel::check_axioms() const {
  const uint32_t n = dim();
  if (n > 12)
    throw CapExceeded("axiom check capped at dimension 12, got " + std::to_string(n));
  AxiomReport rep;
  auto fail = [&](int ax, std::initializer_list<uint32_t> idx) {
    if (rep.axiom[ax].ok) {
      rep.axiom[ax].ok = false;
      rep.axiom[ax].witness = tuple_witness(coords_, idx);
    }
  };

  // (1) x*x = 0, polarized: zero diagonal plus antisymmetry.
  for (uint32_t i = 0; i < n && rep.axiom[0].ok; ++i) {
    if (!is_zero(star_[i][i])) fail(0, {i, i});
    for (uint32_t j = i + 1; j < n && rep.axiom[0].ok; ++j) {
      Vec s = star_[i][j];
      add_to(star_[j][i], s);
      if (!is_zero(s)) fail(0, {i, j});
    }
  }

  // (2) [[x,x,y]] = 0, polarized over the first two slots.
  for (uint32_t i = 0; i < n && rep.axiom[1].ok; ++i)
    for (uint32_t j = 0; j < n && rep.axiom[1].ok; ++j) {
      if (!is_zero(bracket_[i][i][j])) fail(1, {i, i, j});
      for (uint32_t k = 0; k < n && rep.axiom[1].ok; ++k) {
        Vec s = bracket_[i][j][k];
        add_to(bracket_[j][i][k], s);
        if (!is_zero(s)) fail(1, {i, j, k});
      }
    }

  // (3) cyclic sum of [[x,y,z]] + (x*y)*z vanishes.
  for (uint32_t i = 0; i < n && rep.axiom[2].ok; ++i)
    for (uint32_t j = 0; j < n && rep.axiom[2].ok; ++j)
      for (uint32_t k = 0; k < n && rep.axiom[2].ok; ++k) {
        Vec s = bracket_[i][j][k];
        add_to(bracket_[j][k][i], s);
        add_to(bracket_[k][i][j], s);
        add_to(star(star_[i][j], unit(k)), s);
        add_to(star(star_[j][k], unit(i)), s);
        add_to(star(star_[k][i], unit(j)), s);
        if (!is_zero(s)) fail(2, {i, j, k});
      }

  // (4) cyclic sum of [[x*y, z, w]] vanishes (cycling x, y, z).
  for (uint32_t i = 0; i < n && rep.axiom[3].ok; ++i)
    for (uint32_t j = 0; j < n && rep.axiom[3].ok; ++j)
      for (uint32_t k = 0; k < n && rep.axiom[3].ok; ++k)
        for (uint32_t l = 0; l < n && rep.axiom[3].ok; ++l) {
          Vec s = bracket(star_[i][j], unit(k), unit(l));
          add_to(bracket(star_[j][k], unit(i), unit(l)), s);
          add_to(bracket(star_[k][i], unit(j), unit(l)), s);
          if (!is_zero(s)) fail(3, {i, j, k, l});
        }

  // (5) [[x,y,z*w]] = z*[[x,y,w]] + [[x,y,z]]*w.
  for (uint32_t i = 0; i < n && rep.axiom[4].ok; ++i)
    for (uint32_t j = 0; j < n && rep.axiom[4].ok; ++j)
      for (uint32_t k = 0; k < n && rep.axiom[4].ok; ++k)
        for (uint32_t l = 0; l < n && rep.axiom[4].ok; ++l) {
          Vec s = bracket(unit(i), unit(j), star_[k][l]);
          sub_from(star(unit(k), bracket_[i][j][l]), s);
          sub_from(star(bracket_[i][j][k], unit(l)), s);
          if (!is_zero(s)) fail(4, {i, j, k, l});
        }

  // (6) [[x,y,·]] acts as a derivation of the triple bracket.
  for (uint32_t i = 0; i < n && rep.axiom[5].ok; ++i)
    for (uint32_t j = 0; j < n && rep.axiom[5].ok; ++j)
      for (uint32_t u = 0; u < n && rep.axiom[5].ok; ++u)
        for (uint32_t v = 0; v < n && rep.axiom[5].ok; ++v)
          for (uint32_t w = 0; w < n && rep.axiom[5].ok; ++w) {
            Vec s = bracket(unit(i), unit(j), bracket_[u][v][w]);
            sub_from(bracket(bracket_[i][j][u], unit(v), unit(w)), s);
            sub_from(bracket(unit(u), bracket_[i][j][v], unit(w)), s);
            sub_from(bracket(unit(u), unit(v), bracket_[i][j][w]), s);
            if (!is_zero(s)) fail(5, {i, j, u, v, w});
          }

  return rep;
}

LYModel induce_ly(const LieAlgebraData& L, const ReductivePair& split) {
  std::string witness;
  if (!check_reductive(L, split, &witness))
    throw ModelError("splitting is not reductive, witness " + witness);
  const uint32_t n = L.dim();
  const auto& m = split.m_indices;
  const uint32_t d = static_cast<uint32_t>(m.size());
  if (d == 0) throw ModelError("m part is empty");

  std::vector<int> h_side(n, 0);
  for (uint32_t i : split.h_indices) h_side[i] = 1;

  auto project_m = [&](const Vec& v) {
    Vec out = zero_vec(d);
    for (uint32_t a = 0; a < d; ++a) out[a] = v[m[a]];
    return out;
  };
  auto h_part = [&](const Vec& v) {
    Vec out = zero_vec(n);
    for (uint32_t i = 0; i < n; ++i)
      if (h_side[i]) out[i] = v[i];
    return out;
  };

  std::vector<std::string> coords;
  for (uint32_t i : m) coords.push_back(L.basis_names()[i]);

  LYModel::StarTable star(d, std::vector<Vec>(d));
  LYModel::BracketTable bracket(d, std::vector<std::vector<Vec>>(d, std::vector<Vec>(d)));
  for (uint32_t a = 0; a < d; ++a)
    for (uint32_t b = 0; b < d; ++b) {
      const Vec& full = L.bracket(m[a], m[b]);
      star[a][b] = project_m(full);
      Vec h = h_part(full);
      for (uint32_t c = 0; c < d; ++c)
        bracket[a][b][c] = project_m(L.bracket(h, unit_vec(n, m[c])));
    }
  return LYModel(std::move(coords), std::move(star), std::move(bracket));
}

Vec eval(const LYModel& M, const TermBank& bank, TermId t, const std::vector<Vec>& assign) {
  switch (bank.kind(t)) {
    case Kind::Leaf: {
      uint32_t r = bank.leaf_rank(t);
      if (r >= assign.size())
        throw ModelError("no assignment for generator " + bank.generators().name(r));
      if (assign[r].size() != M.dim())
        throw ModelError("assignment vector has wrong dimension");
      return assign[r];
    }
    case Kind::Star:
      return M.star(eval(M, bank, bank.child(t, 0), assign),
                    eval(M, bank, bank.child(t, 1), assign));
    case Kind::Bracket:
      return M.bracket(eval(M, bank, bank.child(t, 0), assign),
                       eval(M, bank, bank.child(t, 1), assign),
                       eval(M, bank, bank.child(t, 2), assign));
  }
  throw ModelError("corrupt term");
}

Vec eval(const LYModel& M, const TermBank& bank, const LinComb& x,
         const std::vector<Vec>& assign) {
  Vec out(M.dim(), Rational(0));
  for (const auto& [t, c] : x.coeffs()) axpy(c, eval(M, bank, t, assign), out);
  return out;
}

}  // namespace lyhall
