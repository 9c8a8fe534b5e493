#ifndef GAT_SEMANTICS_HPP
#define GAT_SEMANTICS_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "gat/derivation.hpp"
#include "gat/signature.hpp"
#include "gat/syntax.hpp"

namespace gat {

// Values are small integers; an environment lists one value per context
// entry, outermost first (the empty context has the single empty env).
using Value = int;
using Env = std::vector<Value>;
using EnvSet = std::vector<Env>;

// Extensional set-based cwf tables.
struct TyTable {
  EnvSet ctx;
  std::map<Env, std::vector<Value>> fiber;
  bool operator==(const TyTable&) const = default;
};
struct TmTable {
  EnvSet ctx;
  std::map<Env, Value> value;
  bool operator==(const TmTable&) const = default;
};
struct SubTable {
  EnvSet src;
  EnvSet tgt;
  std::map<Env, Env> map;
  bool operator==(const SubTable&) const = default;
};

// The cwf operations on tables. These work on whole tables and share no code
// with the pointwise interpreter, which is what preservation tests rely on.
namespace cwf {
EnvSet terminal();
EnvSet comprehension(const EnvSet& ctx, const TyTable& ty);
SubTable identity(const EnvSet& ctx);
SubTable compose(const SubTable& f, const SubTable& g);
SubTable bang(const EnvSet& ctx);
SubTable proj_p(const EnvSet& ctx, const TyTable& ty);
TmTable proj_q(const EnvSet& ctx, const TyTable& ty);
SubTable pairing(const SubTable& sub, const TmTable& tm, const TyTable& ty);
TyTable reindex(const TyTable& ty, const SubTable& sub);
TmTable reindex(const TmTable& tm, const SubTable& sub);
}  // namespace cwf

// Interpretations of the sort and operator symbols, keyed by environments of
// the declared contexts.
struct Model {
  std::string name;
  std::map<std::string, std::map<Env, std::vector<Value>>> sorts;
  std::map<std::string, std::map<Env, Value>> ops;
};

Model load_model(const std::string& json_text);
Model load_model_file(const std::string& path);
std::string dump_model(const Model& model);

using SemanticValue = std::variant<EnvSet, TyTable, SubTable, TmTable>;

std::string print_env(const Env& env);
std::string print_value(const SemanticValue& v);

class Interpreter {
 public:
  Interpreter(const Signature& sig, const Model& model) : sig_(sig), model_(model) {}

  // Pointwise evaluation; Undefined when the induction gets stuck.
  EnvSet ctx(const Expr& gamma);
  std::vector<Value> fiber(const Expr& ty, const Env& env);
  Env sub(const Expr& s, const Env& env);
  Value tm(const Expr& a, const Env& env);

  // Whole tables over `ctx` (for substitutions, `ctx` is the source and
  // `target` the target).
  TyTable ty_table(const Expr& ctx, const Expr& ty);
  TmTable tm_table(const Expr& ctx, const Expr& tm);
  SubTable sub_table(const Expr& src, const Expr& target, const Expr& s);

 private:
  const Signature& sig_;
  const Model& model_;
  struct CtxInfo {
    EnvSet envs;
    std::set<Env> members;
  };
  std::unordered_map<Expr, CtxInfo, ExprHash, ExprEq> ctx_cache_;

  const CtxInfo& ctx_info(const Expr& gamma);
  void require_member(const Expr& gamma, const Env& env, const Expr& at);
};

// Interprets x at its presuppositions (or at `ctx` when given).
SemanticValue interpret(const Signature& sig, const Model& model, const Expr& x, const Expr& ctx = nullptr);

struct EquationResult {
  std::string label;
  bool holds = true;
  std::optional<Env> witness;
  Value lhs = 0;
  Value rhs = 0;
};

struct ModelReport {
  std::vector<EquationResult> equations;
  std::size_t passed() const;
  bool ok() const { return passed() == equations.size(); }
};

// Validates table shapes against the declarations (ShapeMismatch), then
// checks every equation over all environments of its context.
ModelReport check_model(const Signature& sig, const Model& model);

// Both sides of an equality derivation's conclusion interpret identically.
bool soundness_test(const Signature& sig, const Model& model, const Derivation& d, std::string* detail = nullptr);

struct PreservationReport {
  std::size_t checked = 0;  // individual law instances
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// Checks, at every node of each expression, that the pointwise interpreter
// agrees with the table-level cwf operation for that constructor.
PreservationReport preservation_test(const Signature& sig, const Model& model, const std::vector<Expr>& exprs);

}  // namespace gat

#endif
