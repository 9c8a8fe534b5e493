#ifndef GAT_CHECKER_HPP
#define GAT_CHECKER_HPP

#include <cstddef>
#include <memory>
#include <unordered_map>
#include <unordered_set>

#include "gat/derivation.hpp"
#include "gat/rewrite.hpp"
#include "gat/signature.hpp"
#include "gat/syntax.hpp"

namespace gat {

struct CheckerOptions {
  std::size_t fuel = kDefaultFuel;
  // Nesting bound for conversions started while building other conversions
  // (coercions of contexts and types, eta, equation instances).
  std::size_t max_depth = 48;
};

struct Inferred {
  Expr classifier;  // target context of a substitution, or type of a term
  Derivation derivation;
};

// Decides the judgment forms over one signature, producing derivations that
// check_derivation accepts. Caches inferences and conversions, so reuse one
// instance across many queries.
class Checker {
 public:
  explicit Checker(Signature sig, CheckerOptions opts = {});

  const Signature& sig() const { return sig_; }
  const RuleSet& rules() const { return full_.rules(); }
  const CheckerOptions& options() const { return opts_; }

  // Raise IllFormed, ContextMismatch or TypeMismatch.
  Derivation check_ctx(const Expr& ctx);
  Derivation check_ty(const Expr& ctx, const Expr& ty);
  Inferred infer_sub(const Expr& src, const Expr& sub);
  Derivation check_sub(const Expr& src, const Expr& sub, const Expr& tgt);
  Inferred infer_tm(const Expr& ctx, const Expr& tm);
  Derivation check_tm(const Expr& ctx, const Expr& tm, const Expr& ty);

  // Both sides are checked first. Failure to find a proof raises
  // NormalFormsDiffer or FuelExhausted.
  Derivation conv_ctx(const Expr& ctx, const Expr& ctx2);
  Derivation conv_ty(const Expr& ctx, const Expr& ty, const Expr& ty2);
  Derivation conv_sub(const Expr& src, const Expr& tgt, const Expr& sub, const Expr& sub2);
  Derivation conv_tm(const Expr& ctx, const Expr& ty, const Expr& tm, const Expr& tm2);

  // Derivation of x at the presuppositions read off its annotations.
  Derivation infer(const Expr& x);
  // x = y at x's presuppositions. Inputs are assumed well-formed.
  Derivation convert(const Expr& x, const Expr& y);
  // Normalizes with the signature's rule set.
  NormalizeResult normalize(const Expr& x);
  // start = end of a trace produced by this checker's rule set.
  Derivation trace_derivation(const Trace& trace);

  // Moves a derivation to a convertible context and/or classifier (pass
  // nullptr to keep one).
  Derivation retarget(const Derivation& d, const Expr& ctx, const Expr& cls);

 private:
  struct PairKey {
    Expr x, y;
    std::size_t rules;
    bool operator==(const PairKey& o) const { return rules == o.rules && struct_eq(x, o.x) && struct_eq(y, o.y); }
  };
  struct PairKeyHash {
    std::size_t operator()(const PairKey& k) const noexcept {
      return k.x->hash * 31 + k.y->hash * 7 + k.rules;
    }
  };

  Signature sig_;
  CheckerOptions opts_;
  Rewriter full_;
  Rewriter cwf_;
  std::unordered_map<Expr, Derivation, ExprHash, ExprEq> infer_cache_;
  std::unordered_map<PairKey, Derivation, PairKeyHash> conv_cache_;
  std::unordered_map<PairKey, Error, PairKeyHash> fail_cache_;
  std::unordered_map<PairKey, Derivation, PairKeyHash> nf_cache_;
  std::unordered_set<PairKey, PairKeyHash> in_progress_;
  std::unordered_map<Expr, Derivation, ExprHash, ExprEq> refl_cache_;
  std::size_t depth_ = 0;
  std::size_t cutoffs_ = 0;  // cycle and depth cut-offs so far

  Derivation derive(Rule rule, std::vector<Derivation> premises, std::string symbol = {});
  Derivation refl(const Expr& x);
  Derivation sym(const Derivation& d);
  Derivation chain(const Derivation& d1, const Derivation& d2);
  Derivation fit(const Derivation& d, const Expr& ctx, const Expr& cls);

  Derivation infer_uncached(const Expr& x);
  Derivation convert_with(const Expr& x, const Expr& y, Rewriter& rw);
  Derivation normal_form(const Expr& x, Rewriter& rw);
  Derivation normal_form(const Expr& x, Rewriter& rw, std::size_t& fuel);
  Derivation convert_uncached(const Expr& x, const Expr& y, Rewriter& rw);
  Derivation convert_ctx(const Expr& x, const Expr& y, Rewriter& rw);
  Derivation compare(const Expr& x, const Expr& y, Rewriter& rw);
  Derivation to_bang(const Expr& sub);
  Derivation eta(const Expr& sub);
  Derivation congruence(const Expr& x, std::vector<Derivation> kid_eqs);
  Derivation trace_derivation_with(const Trace& trace, Rewriter& rw);
  Derivation step_derivation(const Expr& x, const Step& step, std::size_t depth, Rewriter& rw);
  Derivation redex_derivation(const Expr& redex, const Expr& out, const Step& step, Rewriter& rw);
  Derivation align(const Expr& x, const Expr& y);
  Derivation congruent(const Expr& x, const Expr& y);
  Derivation equation_instance(const Expr& redex, const Expr& out, const RewriteRule& rule, const Bindings& b);
};

// One-shot conveniences; each builds a Checker.
Derivation check_ctx(const Signature& sig, const Expr& ctx);
Derivation check_ty(const Signature& sig, const Expr& ctx, const Expr& ty);
Inferred infer_sub(const Signature& sig, const Expr& src, const Expr& sub);
Derivation check_tm(const Signature& sig, const Expr& ctx, const Expr& tm, const Expr& ty);
Derivation conv_ctx(const Signature& sig, const Expr& ctx, const Expr& ctx2);
Derivation conv_ty(const Signature& sig, const Expr& ctx, const Expr& ty, const Expr& ty2);
Derivation conv_sub(const Signature& sig, const Expr& src, const Expr& tgt, const Expr& sub, const Expr& sub2);
Derivation conv_tm(const Signature& sig, const Expr& ctx, const Expr& ty, const Expr& tm, const Expr& tm2);

}  // namespace gat

#endif
