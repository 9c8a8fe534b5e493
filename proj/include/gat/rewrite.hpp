#ifndef GAT_REWRITE_HPP
#define GAT_REWRITE_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "gat/derivation.hpp"
#include "gat/signature.hpp"
#include "gat/syntax.hpp"

namespace gat {

inline constexpr std::size_t kDefaultFuel = 10000;

enum class RuleOrigin {
  CwfLaw,       // one of the conversion rules, oriented
  UnitOne,      // consequences of id_1 = ⟨⟩_1 used to keep normal forms small
  SigEquation,  // an oriented signature equation
};

using Bindings = std::map<std::string, Expr>;

struct RewriteRule {
  RuleOrigin origin = RuleOrigin::CwfLaw;
  Rule law = Rule::TyId;  // CwfLaw: the conversion rule; UnitOne: the rule it is derived from
  std::string name;
  std::string label;      // SigEquation: the equation label
  bool reversed = false;  // SigEquation oriented right to left
  Expr lhs;
  Expr rhs;
  // Signature patterns match modulo the terminal object: ⟨⟩_? matches any
  // substitution whose target is 1, and t[⟨⟩_?] matches a bare symbol t.
  bool modulo_terminal = false;
};

// Metavariable conventions in patterns:
//   "_k"        annotation wildcard, bound but never checked for consistency
//   "~x"        loose occurrence of x in an implicit-argument slot: binds x
//               unless a strict occurrence does, and is never checked
//   "@ctx"      the redex's context, bound after matching
//   "src(x)" "tgt(x)" "ctx(x)" "type(x)"
//               computed from the binding of x on instantiation
inline constexpr const char* kRedexCtx = "@ctx";

class RuleSet {
 public:
  RuleSet() = default;
  RuleSet(Signature sig, std::vector<RewriteRule> rules, std::vector<std::string> skipped = {});

  const Signature& sig() const { return sig_; }
  const std::vector<RewriteRule>& rules() const { return rules_; }
  // Oriented equations that could not become rewrite rules, with the reason.
  const std::vector<std::string>& skipped() const { return skipped_; }
  std::size_t id() const { return id_; }

 private:
  Signature sig_;
  std::vector<RewriteRule> rules_;
  std::vector<std::string> skipped_;
  std::size_t id_ = 0;
};

// The oriented cwf laws (conversion rules except surjective pairing) and the
// unit-one rules. Over `sig` only for symbol lookup.
const std::vector<RewriteRule>& cwf_law_rules();
RuleSet cwf_rule_set(const Signature& sig);
// cwf rules followed by one rule per oriented equation of `sig`.
RuleSet signature_rule_set(const Signature& sig);

// Compiles equation `decl` into a pattern rule: both sides are instantiated
// along a generic substitution ⟨…⟨⟨⟩_@ctx, x1⟩,…,xn⟩ and cwf-normalized, and
// annotation positions in the left side become wildcards. nullopt (with
// `why`) when the right side mentions a variable the left side cannot bind.
std::optional<RewriteRule> compile_equation(const Signature& sig, const Declaration& decl, bool reversed,
                                            std::string* why = nullptr);
// The substitution ⟨…⟨⟨⟩_Δ, t1⟩_{A1},…, tn⟩_{An} for context 1.A1…An.
Expr generic_substitution(const Expr& ctx, const Expr& delta, const std::vector<Expr>& terms);

using Path = std::vector<std::size_t>;

struct Step {
  Path path;
  std::size_t rule;  // index into the RuleSet
  Bindings bindings;
  Expr result;  // whole expression after the step
};

struct Trace {
  Expr start;
  std::vector<Step> steps;
  Expr end() const { return steps.empty() ? start : steps.back().result; }
};

struct NormalizeResult {
  Expr nf;
  Trace trace;
  bool exhausted = false;
};

bool match(const RewriteRule& rule, const Signature& sig, const Expr& pattern, const Expr& term, Bindings& b);
Expr instantiate(const Signature& sig, const Expr& pattern, const Bindings& b);

// Applies rule `r` at the root of `x`.
std::optional<std::pair<Expr, Bindings>> apply_at_root(const RuleSet& rules, std::size_t r, const Expr& x);

Expr subterm(const Expr& x, const Path& path);
Expr replace_at(const Expr& x, const Path& path, std::size_t depth, const Expr& replacement);

struct Redex {
  Path path;
  std::size_t rule;
  Bindings bindings;
  Expr replacement;
};

// Normalizer with a cache of subterms already known to be normal.
class Rewriter {
 public:
  explicit Rewriter(RuleSet rules) : rules_(std::move(rules)) {}

  const RuleSet& rules() const { return rules_; }

  // Leftmost-outermost normalization. On running out of fuel the result is
  // marked exhausted and carries the partial trace.
  NormalizeResult normalize(const Expr& x, std::size_t fuel = kDefaultFuel);
  // Throws FuelExhausted.
  Expr normal_form(const Expr& x, std::size_t fuel = kDefaultFuel);
  // Normal form computed root-first with results shared per subterm. Agrees
  // with normal_form when the rules are confluent; no trace. Throws
  // FuelExhausted.
  Expr reduce(const Expr& x, std::size_t fuel = kDefaultFuel);

  std::optional<Redex> first_redex(const Expr& x);
  std::vector<Redex> all_redexes(const Expr& x);

  // Normal forms reachable under every strategy, up to `limit` visited terms.
  // Sets *complete to false if the limit was hit.
  std::vector<Expr> all_normal_forms(const Expr& x, std::size_t limit, bool* complete = nullptr);

 private:
  RuleSet rules_;
  std::unordered_set<const Node*> normal_;
  std::vector<Expr> keep_;

  std::unordered_map<Expr, Expr, ExprHash, ExprEq> reduced_;

  bool find(const Expr& x, Path& path, Redex& out);
  Expr reduce_rec(const Expr& x, std::size_t& fuel);
  void collect(const Expr& x, Path& path, std::vector<Redex>& out);
};

NormalizeResult normalize(const RuleSet& rules, const Expr& x, std::size_t fuel = kDefaultFuel);

struct Joinable {
  Trace left;
  Trace right;
};
// Normalizes both; succeeds iff the normal forms are structurally equal.
std::optional<Joinable> joinable(const RuleSet& rules, const Expr& x, const Expr& y, std::size_t fuel = kDefaultFuel);

struct CriticalPair {
  std::size_t outer;  // rule applied at the root of the peak
  std::size_t inner;  // rule applied at `path`
  Path path;
  Expr peak;
  Expr left;   // outer rule applied
  Expr right;  // inner rule applied
};

// Overlaps between left sides of unconditional pattern rules.
std::vector<CriticalPair> critical_pairs(const RuleSet& rules);

std::string print_trace(const RuleSet& rules, const Trace& trace);

}  // namespace gat

#endif
