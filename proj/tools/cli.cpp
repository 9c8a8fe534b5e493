#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "gat/checker.hpp"
#include "gat/corpus.hpp"
#include "gat/error.hpp"
#include "gat/presup.hpp"
#include "gat/semantics.hpp"
#include "gat/serialize.hpp"
#include "gat/surface.hpp"

namespace gat::cli {

using json = nlohmann::json;

namespace {

// A failure that should exit with `status` after printing `message`.
struct Exit {
  int status;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Exit{kUsage, "cannot read " + path};
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Exit{kUsage, "cannot write " + path};
}

std::size_t default_fuel() {
  if (const char* v = std::getenv("GAT_FUEL")) {
    try {
      std::size_t used = 0;
      unsigned long long n = std::stoull(v, &used);
      if (used == std::string(v).size() && n > 0) return static_cast<std::size_t>(n);
    } catch (const std::exception&) {
    }
    throw Exit{kUsage, std::string("GAT_FUEL must be a positive integer, got '") + v + "'"};
  }
  return kDefaultFuel;
}

Signature load(const std::string& path) {
  std::string text = read_file(path);
  try {
    return elaborate_all(parse_gat(text));
  } catch (const Error& e) {
    throw Exit{kFailed, path + ":" + e.what()};
  }
}

std::set<std::string> cited_equations(const Derivation& d) {
  std::set<std::string> out;
  std::set<const DerivationNode*> seen;
  std::vector<const DerivationNode*> stack{d.get()};
  while (!stack.empty()) {
    const DerivationNode* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    if (n->rule == Rule::EqAxiom) out.insert(n->symbol);
    for (const auto& p : n->premises) stack.push_back(p.get());
  }
  return out;
}

std::string plural(std::size_t n, const std::string& noun) {
  return std::to_string(n) + " " + noun + (n == 1 ? "" : "s");
}

std::string counts_text(const DeclCounts& n) {
  return plural(n.sorts, "sort") + ", " + plural(n.ops, "operator") + ", " + plural(n.eqs, "equation");
}

std::string join(const std::set<std::string>& xs) {
  std::string s;
  for (const auto& x : xs) s += (s.empty() ? "" : ", ") + x;
  return s;
}

struct Common {
  bool json_out = false;
  bool raw = false;
  std::size_t fuel = 0;  // 0: GAT_FUEL or the default
};

std::size_t fuel_of(const Common& c) { return c.fuel ? c.fuel : default_fuel(); }

void emit(std::ostream& out, const Common& c, const json& j, const std::string& text) {
  if (c.json_out) {
    out << j.dump(2) << "\n";
  } else {
    out << text;
  }
}

// Each command returns its exit status; checked failures are reported on
// standard output like successes, so --json always yields one document.

int cmd_check(const Common& c, const std::string& file, std::ostream& out) {
  std::string text = read_file(file);
  json j = {{"command", "check"}, {"file", file}};
  try {
    Signature sig = elaborate_all(parse_gat(text));
    DeclCounts n = count_decls(sig);
    j["ok"] = true;
    j["declarations"] = sig.size();
    j["sorts"] = n.sorts;
    j["operators"] = n.ops;
    j["equations"] = n.eqs;
    std::ostringstream s;
    s << sig.size() << " declarations valid (" << counts_text(n) << ")\n";
    emit(out, c, j, s.str());
    return kOk;
  } catch (const Error& e) {
    j["ok"] = false;
    j["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", file + ":" + e.what()}};
    emit(out, c, j, file + ":" + std::string(e.what()) + "\n");
    return kFailed;
  }
}

int cmd_derive(const Common& c, const std::string& file, const std::string& goal_text, const std::string& emit_path,
               std::ostream& out) {
  Signature sig = load(file);
  json j = {{"command", "derive"}, {"file", file}, {"goal", goal_text}};
  Goal goal;
  try {
    goal = parse_goal(sig, goal_text, c.raw);
  } catch (const Error& e) {
    throw Exit{kFailed, "goal: " + std::string(e.what())};
  }
  try {
    CheckerOptions opts;
    opts.fuel = fuel_of(c);
    Derivation d = check_goal(sig, goal, opts);
    check_derivation(sig, d);
    auto cites = cited_equations(d);
    j["ok"] = true;
    j["judgment"] = print_judgment(d->concl);
    j["nodes"] = derivation_size(d);
    j["cites"] = cites;
    if (!emit_path.empty()) {
      write_file(emit_path, write_proof({file, goal_text, d, {}}));
      j["emitted"] = emit_path;
    }
    std::ostringstream s;
    s << "derivable: " << print_judgment(d->concl) << "\n"
      << derivation_size(d) << " derivation nodes, checked\n"
      << "cites: " << (cites.empty() ? "no equations" : join(cites)) << "\n";
    if (!emit_path.empty()) s << "wrote " << emit_path << "\n";
    emit(out, c, j, s.str());
    return kOk;
  } catch (const Error& e) {
    j["ok"] = false;
    j["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    emit(out, c, j, "not derivable (" + std::string(to_string(e.kind())) + "): " + e.what() + "\n");
    return kFailed;
  }
}

int cmd_audit(const Common& c, const std::string& proof_path, const std::string& file, std::ostream& out) {
  Signature sig = load(file);
  ProofFile proof;
  try {
    proof = read_proof(read_file(proof_path));
  } catch (const Error& e) {
    throw Exit{kFailed, proof_path + ": " + e.what()};
  }
  AuditResult r = audit(sig, proof);
  json j = {{"command", "audit"}, {"file", proof_path}, {"against", file}, {"ok", r.ok}, {"nodes", r.nodes}};
  if (r.ok) {
    j["judgment"] = print_judgment(r.conclusion);
    emit(out, c, j, "valid: " + print_judgment(r.conclusion) + " (" + std::to_string(r.nodes) + " nodes)\n");
    return kOk;
  }
  j["error"] = r.error;
  emit(out, c, j, "rejected: " + r.error + "\n");
  return kFailed;
}

int cmd_norm(const Common& c, const std::string& file, const std::string& expr_text, bool trace, std::ostream& out) {
  Signature sig = load(file);
  Goal g;
  try {
    g = parse_goal(sig, expr_text, c.raw);
  } catch (const Error& e) {
    throw Exit{kFailed, "expression: " + std::string(e.what())};
  }
  if (g.rhs) throw Exit{kUsage, "--expr takes a single expression, not an equation"};
  Rewriter rw(signature_rule_set(sig));
  NormalizeResult r = rw.normalize(g.lhs, fuel_of(c));
  json j = {{"command", "norm"},
            {"file", file},
            {"ok", !r.exhausted},
            {"input", print_expr(g.lhs)},
            {"normal_form", print_expr(r.nf)},
            {"surface", print_surface(sig, r.nf, g.ctx.names)},
            {"steps", r.trace.steps.size()}};
  std::ostringstream s;
  if (trace) {
    json steps = json::array();
    for (const auto& st : r.trace.steps) {
      json path = st.path;
      steps.push_back({{"path", path}, {"rule", rw.rules().rules()[st.rule].name}, {"result", print_expr(st.result)}});
    }
    j["trace"] = steps;
    s << print_trace(rw.rules(), r.trace);
  }
  if (r.exhausted) {
    s << "fuel exhausted after " << plural(r.trace.steps.size(), "step") << "\n";
  } else {
    std::string named = print_surface(sig, r.nf, g.ctx.names);
    std::string comb = print_expr(r.nf);
    s << "normal form: " << named << "\n";
    if (comb != named) s << "combinators: " << comb << "\n";
  }
  emit(out, c, j, s.str());
  return r.exhausted ? kFailed : kOk;
}

Model load_model_arg(const std::string& path) {
  try {
    return load_model(read_file(path));
  } catch (const Error& e) {
    throw Exit{kFailed, path + ": " + e.what()};
  }
}

int cmd_eval(const Common& c, const std::string& file, const std::string& model_path, const std::string& expr_text,
             std::ostream& out) {
  Signature sig = load(file);
  Model model = load_model_arg(model_path);
  json j = {{"command", "eval"}, {"file", file}, {"model", model_path}, {"expr", expr_text}};
  try {
    Goal g = parse_goal(sig, expr_text, c.raw);
    if (g.rhs) throw Exit{kUsage, "--expr takes a single expression, not an equation"};
    SemanticValue v = interpret(sig, model, g.lhs, g.lhs->cls == ExprClass::Ctx ? nullptr : g.ctx.ctx);
    std::string shown = print_value(v);
    j["ok"] = true;
    j["value"] = shown;
    emit(out, c, j, shown + "\n");
    return kOk;
  } catch (const Error& e) {
    j["ok"] = false;
    j["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    emit(out, c, j, std::string(to_string(e.kind())) + ": " + e.what() + "\n");
    return kFailed;
  }
}

int cmd_models_check(const Common& c, const std::string& file, const std::string& model_path, std::ostream& out) {
  Signature sig = load(file);
  Model model = load_model_arg(model_path);
  json j = {{"command", "models check"}, {"file", file}, {"model", model_path}};
  try {
    ModelReport r = check_model(sig, model);
    json eqs = json::array();
    std::ostringstream s;
    for (const auto& e : r.equations) {
      json row = {{"label", e.label}, {"holds", e.holds}};
      if (!e.holds) {
        if (e.witness) row["witness"] = *e.witness;
        row["lhs"] = e.lhs;
        row["rhs"] = e.rhs;
        s << e.label << " fails at " << (e.witness ? print_env(*e.witness) : "?") << ": " << e.lhs << " ≠ " << e.rhs
          << "\n";
      }
      eqs.push_back(std::move(row));
    }
    s << r.passed() << "/" << r.equations.size() << " equations hold\n";
    j["ok"] = r.ok();
    j["passed"] = r.passed();
    j["total"] = r.equations.size();
    j["equations"] = eqs;
    emit(out, c, j, s.str());
    return r.ok() ? kOk : kFailed;
  } catch (const Error& e) {
    j["ok"] = false;
    j["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    emit(out, c, j, std::string(to_string(e.kind())) + ": " + e.what() + "\n");
    return kFailed;
  }
}

int cmd_corpus_list(const Common& c, std::ostream& out) {
  json names = corpus_names();
  std::string text;
  for (const auto& n : corpus_names()) text += n + "\n";
  emit(out, c, {{"command", "corpus list"}, {"ok", true}, {"examples", names}, {"models", model_names()}}, text);
  return kOk;
}

int cmd_corpus_build(const Common& c, const std::string& name, std::ostream& out) {
  NamedExample ex;
  try {
    ex = build(name);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::UnknownExample) throw Exit{kUsage, e.what()};
    throw Exit{kFailed, name + ": " + e.what()};
  }
  DeclCounts n = count_decls(ex.sig);
  bool ok = n == ex.counts;
  std::ostringstream s;
  s << ex.name << ": " << ex.summary << "\n"
    << counts_text(n)
    << (ok ? "" : " (expected " + std::to_string(ex.counts.sorts) + "/" + std::to_string(ex.counts.ops) + "/" +
                      std::to_string(ex.counts.eqs) + ")")
    << "\n";
  json golden = json::array();
  for (const auto& g : ex.golden) {
    bool pass = true;
    std::string why;
    try {
      Derivation d = check_goal(ex.sig, parse_goal(ex.sig, g.goal));
      check_derivation(ex.sig, d);
    } catch (const Error& e) {
      pass = false;
      why = e.what();
    }
    ok = ok && pass;
    golden.push_back({{"goal", g.goal}, {"ok", pass}});
    s << (pass ? "  ok   " : "  FAIL ") << g.goal << (pass ? "" : ": " + why) << "\n";
  }
  json models = json::array();
  for (const auto& m : ex.models) {
    ModelReport r = check_model(ex.sig, m);
    ok = ok && r.ok();
    models.push_back({{"model", m.name}, {"passed", r.passed()}, {"total", r.equations.size()}});
    s << "  model " << m.name << ": " << r.passed() << "/" << r.equations.size() << " equations hold\n";
  }
  json j = {{"command", "corpus build"},
            {"name", name},
            {"ok", ok},
            {"sorts", n.sorts},
            {"operators", n.ops},
            {"equations", n.eqs},
            {"golden", golden},
            {"models", models}};
  emit(out, c, j, s.str());
  return ok ? kOk : kFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Checker and evaluator for generalized algebraic theories in cwf-combinator syntax", "gat"};
  app.require_subcommand(1);
  app.fallthrough();  // --json may follow the subcommand
  Common c;
  app.add_flag("--json", c.json_out, "machine-readable output");

  std::string file, goal, emit_path, proof, model, expr, name;
  bool trace = false;

  auto* check = app.add_subcommand("check", "validate every declaration of a .gat file");
  check->add_option("file", file, ".gat file")->required();

  auto* derive = app.add_subcommand("derive", "derive a goal and check the derivation");
  derive->add_option("file", file, ".gat file")->required();
  derive->add_option("--goal", goal, "[CTX |-] a [= b] [: T]")->required();
  derive->add_option("--fuel", c.fuel, "rewrite steps per normalization (default: GAT_FUEL or 10000)")
      ->check(CLI::PositiveNumber);
  derive->add_option("--emit", emit_path, "write the derivation to a .gatpf file");
  derive->add_flag("--raw", c.raw, "goal in combinator syntax");

  auto* audit_cmd = app.add_subcommand("audit", "re-check a derivation file");
  audit_cmd->add_option("file", proof, ".gatpf file")->required();
  audit_cmd->add_option("--against", file, ".gat file")->required();

  auto* norm = app.add_subcommand("norm", "normalize an expression");
  norm->add_option("file", file, ".gat file")->required();
  norm->add_option("--expr", expr, "[CTX |-] a")->required();
  norm->add_flag("--trace", trace, "print every rewrite step");
  norm->add_option("--fuel", c.fuel, "rewrite steps (default: GAT_FUEL or 10000)")->check(CLI::PositiveNumber);
  norm->add_flag("--raw", c.raw, "expression in combinator syntax");

  auto* eval = app.add_subcommand("eval", "interpret an expression in a finite model");
  eval->add_option("file", file, ".gat file")->required();
  eval->add_option("--model", model, "model file (JSON)")->required();
  eval->add_option("--expr", expr, "[CTX |-] a")->required();
  eval->add_flag("--raw", c.raw, "expression in combinator syntax");

  auto* models = app.add_subcommand("models", "finite models");
  models->require_subcommand(1);
  models->fallthrough();
  auto* models_check = models->add_subcommand("check", "check every equation in a model");
  models_check->add_option("file", file, ".gat file")->required();
  models_check->add_option("--model", model, "model file (JSON)")->required();

  auto* corpus = app.add_subcommand("corpus", "built-in example theories");
  corpus->require_subcommand(1);
  corpus->fallthrough();
  auto* corpus_list = corpus->add_subcommand("list", "list the examples");
  auto* corpus_build = corpus->add_subcommand("build", "build and check an example");
  corpus_build->add_option("name", name, "example name")->required();

  // CLI11 wants argv order with the program name first.
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "gat: " << e.what() << "\nrun 'gat --help' for usage\n";
    return kUsage;
  }

  try {
    if (!c.fuel) default_fuel();  // validate GAT_FUEL before any work
    if (check->parsed()) return cmd_check(c, file, out);
    if (derive->parsed()) return cmd_derive(c, file, goal, emit_path, out);
    if (audit_cmd->parsed()) return cmd_audit(c, proof, file, out);
    if (norm->parsed()) return cmd_norm(c, file, expr, trace, out);
    if (eval->parsed()) return cmd_eval(c, file, model, expr, out);
    if (models_check->parsed()) return cmd_models_check(c, file, model, out);
    if (corpus_list->parsed()) return cmd_corpus_list(c, out);
    if (corpus_build->parsed()) return cmd_corpus_build(c, name, out);
  } catch (const Exit& e) {
    if (c.json_out && e.status == kFailed) {
      out << json{{"ok", false}, {"error", {{"message", e.message}}}}.dump(2) << "\n";
    } else {
      err << "gat: " << e.message << "\n";
    }
    return e.status;
  } catch (const Error& e) {
    err << "gat: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}

}  // namespace gat::cli
