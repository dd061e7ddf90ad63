// Command-line front end. Stdout carries data, stderr carries diagnostics,
// and identical invocations produce byte-identical output.
//
// Exit codes: 0 success, 2 bad flags or unparsable input, 3 resource cap,
// 4 flatten collision, 5 rewrite depth exceeded, 6 failed model check.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lyhall/hall.hpp"
#include "lyhall/models.hpp"
#include "lyhall/oracle.hpp"
#include "lyhall/rewrite.hpp"
#include "lyhall/term_io.hpp"

using namespace lyhall;

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// The order given on the command line is the generator order, and every
// downstream order (words, terms, the basis itself) derives from it.
std::vector<std::string> parse_generators(const std::string& spec) {
  auto names = split(spec, ',');
  for (const auto& n : names)
    if (!valid_identifier(n))
      throw CLI::ValidationError("--gens", "generator names must be identifiers: '" + n + "'");
  for (size_t i = 0; i < names.size(); ++i)
    for (size_t j = i + 1; j < names.size(); ++j)
      if (names[i] == names[j])
        throw CLI::ValidationError("--gens", "duplicate generator: " + names[i]);
  return names;
}

size_t ambient_cap() {
  const char* env = std::getenv("LYHALL_MAX_AMBIENT");
  if (!env) return 200000;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (!end || *end != '\0' || v == 0)
    throw CLI::ValidationError("LYHALL_MAX_AMBIENT", "must be a positive integer");
  return static_cast<size_t>(v);
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  return out + "\"";
}

// Vectors print like linear combinations of coordinate names; a bare
// coefficient 1 is dropped so unit vectors print as their name.
std::string print_vec(const LYModel& M, const Vec& v) {
  std::string out;
  for (uint32_t i = 0; i < M.dim(); ++i) {
    if (v[i] == 0) continue;
    if (!out.empty()) out += " + ";
    if (v[i] == 1)
      out += M.coords()[i];
    else
      out += to_string(v[i]) + " " + M.coords()[i];
  }
  return out.empty() ? "0" : out;
}

void emit_json(const nlohmann::json& doc) { std::cout << doc.dump() << "\n"; }

struct BasisArgs {
  std::string gens;
  uint32_t max_degree = 0;
  bool list = false;
};

int run_basis(const BasisArgs& a, const std::string& format) {
  TermBank bank((GeneratorSet(parse_generators(a.gens))));
  Enumerator en(bank, ambient_cap());
  if (a.list) {
    if (format == "csv") std::cout << "degree,element\n";
    nlohmann::json degrees = nlohmann::json::array();
    for (uint32_t d = 1; d <= a.max_degree; ++d) {
      const auto& slice = en.basis(d);
      if (format == "text") {
        std::cout << "degree " << d << ":";
        bool first = true;
        for (TermId t : slice) {
          std::cout << (first ? " " : ", ") << print_term(bank, t);
          first = false;
        }
        std::cout << "\n";
      } else if (format == "csv") {
        for (TermId t : slice)
          std::cout << d << "," << csv_quote(print_term(bank, t)) << "\n";
      } else {
        nlohmann::json terms = nlohmann::json::array();
        for (TermId t : slice) terms.push_back(print_term(bank, t));
        degrees.push_back({{"degree", d}, {"elements", terms}});
      }
    }
    if (format == "json")
      emit_json({{"schema", 1},
                 {"command", "basis"},
                 {"generators", parse_generators(a.gens)},
                 {"degrees", degrees}});
    return 0;
  }
  auto table = en.basis_dimension_table(a.max_degree);
  if (format == "csv") {
    std::cout << "degree,dimension\n";
    for (auto [d, n] : table) std::cout << d << "," << n << "\n";
  } else if (format == "json") {
    nlohmann::json dims = nlohmann::json::array();
    for (auto [d, n] : table) dims.push_back({{"degree", d}, {"dimension", n}});
    emit_json({{"schema", 1},
               {"command", "basis"},
               {"generators", parse_generators(a.gens)},
               {"dimensions", dims}});
  } else {
    for (auto [d, n] : table) std::cout << "degree " << d << ": " << n << "\n";
  }
  return 0;
}

struct NormalizeArgs {
  std::string gens;
  std::string expr;
  bool certify = false;
};

int run_normalize(const NormalizeArgs& a, const std::string& format) {
  TermBank bank((GeneratorSet(parse_generators(a.gens))));
  TermId t = parse_term(bank, a.expr);
  Rewriter rw(bank);
  NormalForm nf = rw.normalize(t);

  std::string verdict;
  if (a.certify) {
    LinComb diff(1, t);
    diff -= nf.value;
    if (diff.is_zero()) {
      verdict = "in-span";
    } else {
      RelationSpan span(bank, Signature::BinaryTernary, bank.size(t), ambient_cap());
      verdict = span.contains(diff) ? "in-span" : "NOT in-span";
    }
  }

  if (format == "csv") {
    std::cout << "coefficient,term\n";
    for (const auto& [u, c] : nf.value.coeffs())
      std::cout << to_string(c) << "," << csv_quote(print_term(bank, u)) << "\n";
    if (a.certify) std::cout << "certified," << csv_quote(verdict) << "\n";
  } else if (format == "json") {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [u, c] : nf.value.coeffs())
      terms.push_back({{"coefficient", to_string(c)}, {"term", print_term(bank, u)}});
    nlohmann::json rules = nlohmann::json::object();
    for (const auto& [rule, n] : nf.certificate) rules[rule] = n;
    nlohmann::json doc = {{"schema", 1},
                          {"command", "normalize"},
                          {"input", a.expr},
                          {"normal_form", terms},
                          {"rules", rules}};
    if (a.certify) doc["certified"] = verdict;
    emit_json(doc);
  } else {
    std::cout << print_lincomb(bank, nf.value) << "\n";
    if (a.certify) std::cout << "certified: " << verdict << "\n";
  }
  return verdict == "NOT in-span" ? 1 : 0;
}

struct OracleArgs {
  uint32_t gens = 0;
  uint32_t degree = 0;
};

int run_oracle_verify(const OracleArgs& a, const std::string& format) {
  std::vector<std::string> names;
  for (uint32_t i = 0; i < a.gens; ++i) {
    if (i < 26)
      names.push_back(std::string(1, static_cast<char>('a' + i)));
    else
      names.push_back("g" + std::to_string(i));
  }
  TermBank bank((GeneratorSet(names)));
  RelationSpan span(bank, Signature::BinaryTernary, a.degree, ambient_cap());
  Enumerator en(bank, ambient_cap());
  FreenessReport rep = span.verify_freeness(en.basis(a.degree));
  const char* verdict = rep.ok() ? "pass" : "FAIL";
  if (format == "csv") {
    std::cout << "degree,candidates,quotient,independent,spanning,verdict\n"
              << a.degree << "," << rep.basis_count << "," << rep.quotient_dim << ","
              << (rep.independent ? "yes" : "no") << ","
              << (rep.spanning ? "yes" : "no") << "," << verdict << "\n";
  } else if (format == "json") {
    emit_json({{"schema", 1},
               {"command", "oracle-verify"},
               {"generators", a.gens},
               {"degree", a.degree},
               {"candidates", rep.basis_count},
               {"quotient", rep.quotient_dim},
               {"independent", rep.independent},
               {"spanning", rep.spanning},
               {"pass", rep.ok()}});
  } else {
    std::cout << "degree " << a.degree << ": candidates " << rep.basis_count
              << ", quotient " << rep.quotient_dim << ", independent "
              << (rep.independent ? "yes" : "no") << ", spanning "
              << (rep.spanning ? "yes" : "no") << ": " << verdict << "\n";
  }
  return rep.ok() ? 0 : 1;
}

struct CheckLine {
  std::string name;
  bool pass = true;
  std::string witness;
};

int run_model_check(const std::string& file, const std::string& format) {
  ModelFile mf = load_model_file(file);
  std::vector<CheckLine> lines;
  bool all = true;

  std::string w;
  bool jac = check_jacobi(mf.algebra, &w);
  lines.push_back({"jacobi", jac, jac ? "" : w});
  all = all && jac;
  if (jac) {
    bool red = check_reductive(mf.algebra, mf.split, &w);
    lines.push_back({"reductive", red, red ? "" : w});
    all = all && red;
    if (red) {
      LYModel M = induce_ly(mf.algebra, mf.split);
      AxiomReport rep = M.check_axioms();
      for (int i = 0; i < 6; ++i) {
        lines.push_back({"axiom " + std::to_string(i + 1), rep.axiom[i].ok,
                         rep.axiom[i].witness});
        all = all && rep.axiom[i].ok;
      }
    }
  }

  if (format == "csv") {
    std::cout << "check,verdict,witness\n";
    for (const auto& l : lines)
      std::cout << csv_quote(l.name) << "," << (l.pass ? "pass" : "FAIL") << ","
                << csv_quote(l.witness) << "\n";
  } else if (format == "json") {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& l : lines)
      checks.push_back({{"check", l.name}, {"pass", l.pass}, {"witness", l.witness}});
    emit_json({{"schema", 1},
               {"command", "model-check"},
               {"file", file},
               {"checks", checks},
               {"pass", all}});
  } else {
    for (const auto& l : lines) {
      std::cout << l.name << ": " << (l.pass ? "pass" : "FAIL");
      if (!l.pass) std::cout << " at " << l.witness;
      std::cout << "\n";
    }
  }
  return all ? 0 : 6;
}

struct EvalArgs {
  std::string file;
  std::string map;
  std::string expr;
};

int run_model_eval(const EvalArgs& a, const std::string& format) {
  ModelFile mf = load_model_file(a.file);
  LYModel M = induce_ly(mf.algebra, mf.split);

  std::vector<std::string> gens;
  std::vector<Vec> assign;
  for (const auto& entry : split(a.map, ',')) {
    auto eq = entry.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--map", "entries must look like gen=coord: " + entry);
    std::string gen = entry.substr(0, eq);
    std::string coord = entry.substr(eq + 1);
    if (!valid_identifier(gen))
      throw CLI::ValidationError("--map", "bad generator name: " + gen);
    auto idx = M.coord_of(coord);
    if (!idx)
      throw CLI::ValidationError("--map", "unknown coordinate: " + coord);
    gens.push_back(gen);
    assign.push_back(M.unit(*idx));
  }
  TermBank bank((GeneratorSet(gens)));
  TermId t = parse_term(bank, a.expr);
  Vec v = eval(M, bank, t, assign);

  if (format == "csv") {
    std::cout << "coefficient,name\n";
    for (uint32_t i = 0; i < M.dim(); ++i)
      if (v[i] != 0) std::cout << to_string(v[i]) << "," << csv_quote(M.coords()[i]) << "\n";
  } else if (format == "json") {
    nlohmann::json comps = nlohmann::json::array();
    for (uint32_t i = 0; i < M.dim(); ++i)
      if (v[i] != 0)
        comps.push_back({{"coefficient", to_string(v[i])}, {"name", M.coords()[i]}});
    emit_json({{"schema", 1},
               {"command", "model-eval"},
               {"file", a.file},
               {"input", a.expr},
               {"value", comps}});
  } else {
    std::cout << print_vec(M, v) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);

  CLI::App app{"Free algebra toolkit: graded basis enumeration, normal forms, "
               "quotient-space verification, concrete models"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "csv", "json"}));

  BasisArgs basis_args;
  auto* basis_cmd = app.add_subcommand("basis", "enumerate the graded basis");
  basis_cmd->add_option("--gens", basis_args.gens,
                        "comma-separated generator names; the given order "
                        "fixes every derived order")->required();
  basis_cmd->add_option("--max-degree", basis_args.max_degree, "largest degree")
      ->required()->check(CLI::Range(uint32_t(1), uint32_t(64)));
  basis_cmd->add_flag("--list", basis_args.list, "list elements instead of counting");

  NormalizeArgs norm_args;
  auto* norm_cmd = app.add_subcommand("normalize", "rewrite an expression to normal form");
  norm_cmd->add_option("--gens", norm_args.gens,
                       "comma-separated generator names; the given order "
                       "fixes every derived order")->required();
  norm_cmd->add_flag("--certify", norm_args.certify,
                     "verify input minus output against the relation span");
  norm_cmd->add_option("expr", norm_args.expr, "expression, e.g. \"[a,b*a,b]\"")
      ->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force quotient checks");
  OracleArgs oracle_args;
  auto* verify_cmd = oracle_cmd->add_subcommand("verify", "check basis freeness at a degree");
  verify_cmd->add_option("--gens", oracle_args.gens, "number of generators")
      ->required()->check(CLI::Range(uint32_t(1), uint32_t(64)));
  verify_cmd->add_option("--degree", oracle_args.degree, "degree slice")
      ->required()->check(CLI::Range(uint32_t(1), uint32_t(64)));
  oracle_cmd->require_subcommand(1);

  auto* model_cmd = app.add_subcommand("model", "concrete model operations");
  std::string check_file;
  auto* check_cmd = model_cmd->add_subcommand("check", "verify a model file");
  check_cmd->add_option("file", check_file, "model JSON file")->required();
  EvalArgs eval_args;
  auto* eval_cmd = model_cmd->add_subcommand("eval", "evaluate an expression in a model");
  eval_cmd->add_option("file", eval_args.file, "model JSON file")->required();
  eval_cmd->add_option("--map", eval_args.map,
                       "generator assignments gen=coord, order fixes the "
                       "generator order")->required();
  eval_cmd->add_option("expr", eval_args.expr, "expression over the mapped generators")
      ->required();
  model_cmd->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*basis_cmd) return run_basis(basis_args, format);
    if (*norm_cmd) return run_normalize(norm_args, format);
    if (*verify_cmd) return run_oracle_verify(oracle_args, format);
    if (*check_cmd) return run_model_check(check_file, format);
    if (*eval_cmd) return run_model_eval(eval_args, format);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const ModelError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const CapExceeded& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const FlattenCollision& e) {
    std::cerr << e.what() << "\n";
    return 4;
  } catch (const DepthExceeded& e) {
    std::cerr << e.what() << "\n";
    return 5;
  }
  return 2;
}
