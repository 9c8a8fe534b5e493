#include "gat/checker.hpp"

#include "gat/presup.hpp"

namespace gat {
namespace {

bool is_refl(const Derivation& d) { return d->concl.rhs && struct_eq(d->concl.lhs, d->concl.rhs); }

Rule ctx_conv_rule(Form form) {
  switch (form) {
    case Form::Ty: return Rule::TyCtxConv;
    case Form::Tm: return Rule::TmCtxConv;
    case Form::Sub: return Rule::SubSrcConv;
    case Form::TyEq: return Rule::TyEqCtxConv;
    case Form::TmEq: return Rule::TmEqCtxConv;
    case Form::SubEq: return Rule::SubEqSrcConv;
    default: break;
  }
  fail(ErrorKind::IllFormed, "context conversion on a context judgment");
}

class DepthGuard {
 public:
  DepthGuard(std::size_t& depth, std::size_t limit, std::size_t& cutoffs) : depth_(depth) {
    if (++depth_ > limit) {
      --depth_;
      ++cutoffs;
      fail(ErrorKind::FuelExhausted, "conversion nesting exceeded " + std::to_string(limit));
    }
  }
  ~DepthGuard() { --depth_; }
  DepthGuard(const DepthGuard&) = delete;
  DepthGuard& operator=(const DepthGuard&) = delete;

 private:
  std::size_t& depth_;
};

}  // namespace

Checker::Checker(Signature sig, CheckerOptions opts)
    : sig_(sig), opts_(opts), full_(signature_rule_set(sig)), cwf_(cwf_rule_set(sig)) {}

Derivation Checker::derive(Rule rule, std::vector<Derivation> premises, std::string symbol) {
  return gat::derive(sig_, rule, std::move(premises), std::move(symbol));
}

Derivation Checker::refl(const Expr& x) {
  auto it = refl_cache_.find(x);
  if (it != refl_cache_.end()) return it->second;
  Derivation d = derive(Rule::Refl, {infer(x)});
  refl_cache_.emplace(x, d);
  return d;
}

Derivation Checker::sym(const Derivation& d) { return is_refl(d) ? d : derive(Rule::Sym, {d}); }

Derivation Checker::chain(const Derivation& d1, const Derivation& d2) {
  Derivation e = retarget(d2, d1->concl.ctx, d1->concl.cls);
  if (is_refl(e)) return d1;
  if (is_refl(d1)) return e;
  return derive(Rule::Trans, {d1, e});
}

Derivation Checker::retarget(const Derivation& d, const Expr& ctx, const Expr& cls) {
  Derivation out = d;
  const Judgment& j = out->concl;
  if (ctx && j.ctx && !struct_eq(j.ctx, ctx)) {
    out = derive(ctx_conv_rule(j.form), {out, convert(j.ctx, ctx)});
  }
  const Judgment& k = out->concl;
  if (cls && k.cls && !struct_eq(k.cls, cls)) {
    switch (k.form) {
      case Form::Sub:
      case Form::SubEq:
        out = derive(k.form == Form::Sub ? Rule::SubTgtConv : Rule::SubEqTgtConv, {out, convert(k.cls, cls)});
        break;
      case Form::Tm:
      case Form::TmEq: {
        Derivation e = retarget(convert(k.cls, cls), k.ctx, nullptr);
        out = derive(k.form == Form::Tm ? Rule::TmTyConv : Rule::TmEqTyConv, {out, e});
        break;
      }
      default: break;
    }
  }
  return out;
}

// retarget for inference: a failed conversion is reported as a mismatch.
Derivation Checker::fit(const Derivation& d, const Expr& ctx, const Expr& cls) {
  Derivation out = d;
  if (ctx && !struct_eq(out->concl.ctx, ctx)) {
    try {
      out = retarget(out, ctx, nullptr);
    } catch (const Error& e) {
      if (!e.is_not_convertible()) throw;
      fail(ErrorKind::ContextMismatch, "context mismatch for " + print_expr(d->concl.lhs) + ": expected " +
                                           print_expr(ctx) + ", got " + print_expr(d->concl.ctx) + " (" + e.what() +
                                           ")");
    }
  }
  if (cls && !struct_eq(out->concl.cls, cls)) {
    try {
      out = retarget(out, nullptr, cls);
    } catch (const Error& e) {
      if (!e.is_not_convertible()) throw;
      bool is_sub = out->concl.form == Form::Sub || out->concl.form == Form::SubEq;
      fail(is_sub ? ErrorKind::ContextMismatch : ErrorKind::TypeMismatch,
           std::string(is_sub ? "target" : "type") + " mismatch for " + print_expr(d->concl.lhs) + ": expected " +
               print_expr(cls) + ", got " + print_expr(out->concl.cls) + " (" + e.what() + ")");
    }
  }
  return out;
}

Derivation Checker::infer(const Expr& x) {
  auto it = infer_cache_.find(x);
  if (it != infer_cache_.end()) return it->second;
  Derivation d = infer_uncached(x);
  infer_cache_.emplace(x, d);
  return d;
}

Derivation Checker::infer_uncached(const Expr& x) {
  switch (x->kind) {
    case Kind::Empty: return derive(Rule::CtxEmpty, {});
    case Kind::Ext: return derive(Rule::CtxExt, {fit(infer(x->kid(1)), x->kid(0), nullptr)});
    case Kind::SortApp: {
      const Declaration* d = sig_.find(x->name);
      if (!d || d->kind != DeclKind::Sort) fail(ErrorKind::IllFormed, "undeclared sort " + x->name);
      return derive(Rule::SortIntro, {}, x->name);
    }
    case Kind::OpApp: {
      const Declaration* d = sig_.find(x->name);
      if (!d || d->kind != DeclKind::Operator) fail(ErrorKind::IllFormed, "undeclared operator " + x->name);
      return derive(Rule::OpIntro, {}, x->name);
    }
    case Kind::TySubst:
    case Kind::TmSubst: {
      Derivation s = infer(x->kid(1));
      Derivation body = fit(infer(x->kid(0)), s->concl.cls, nullptr);
      return derive(x->kind == Kind::TySubst ? Rule::TySubst : Rule::TmSubst, {body, s});
    }
    case Kind::Id: return derive(Rule::SubId, {infer(x->kid(0))});
    case Kind::Bang: return derive(Rule::SubBang, {infer(x->kid(0))});
    case Kind::P: return derive(Rule::SubP, {infer(x->kid(0))});
    case Kind::Q: return derive(Rule::TmQ, {infer(x->kid(0))});
    case Kind::Comp: {
      Derivation g = infer(x->kid(1));
      Derivation f = fit(infer(x->kid(0)), g->concl.cls, nullptr);
      return derive(Rule::SubComp, {f, g});
    }
    case Kind::Pair: {
      Derivation ty = infer(x->kid(2));
      Derivation s = fit(infer(x->kid(0)), nullptr, ty->concl.ctx);
      Derivation t = fit(infer(x->kid(1)), s->concl.ctx, mk::ty_subst(x->kid(2), x->kid(0)));
      return derive(Rule::SubPair, {s, ty, t});
    }
    case Kind::Meta: break;
  }
  fail(ErrorKind::IllFormed, "metavariable " + x->name + " in checked syntax");
}

Derivation Checker::check_ctx(const Expr& ctx) {
  try {
    return infer(ctx);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::IllFormed) throw;
    fail(ErrorKind::IllFormed, print_expr(ctx) + " is not a valid context: " + e.what());
  }
}

Derivation Checker::check_ty(const Expr& ctx, const Expr& ty) {
  check_ctx(ctx);
  return fit(infer(ty), ctx, nullptr);
}

Inferred Checker::infer_sub(const Expr& src, const Expr& sub) {
  check_ctx(src);
  Derivation d = fit(infer(sub), src, nullptr);
  return {d->concl.cls, d};
}

Derivation Checker::check_sub(const Expr& src, const Expr& sub, const Expr& tgt) {
  check_ctx(tgt);
  return fit(infer_sub(src, sub).derivation, nullptr, tgt);
}

Inferred Checker::infer_tm(const Expr& ctx, const Expr& tm) {
  check_ctx(ctx);
  Derivation d = fit(infer(tm), ctx, nullptr);
  return {d->concl.cls, d};
}

Derivation Checker::check_tm(const Expr& ctx, const Expr& tm, const Expr& ty) {
  Inferred got = infer_tm(ctx, tm);
  try {
    check_ty(ctx, ty);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ContextMismatch) throw;
    fail(ErrorKind::TypeMismatch, "type mismatch for " + print_expr(tm) + ": expected " + print_expr(ty) +
                                      ", which is not a type in " + print_expr(ctx) + "; synthesized " +
                                      print_expr(got.classifier));
  }
  return fit(got.derivation, nullptr, ty);
}

Derivation Checker::conv_ctx(const Expr& ctx, const Expr& ctx2) {
  check_ctx(ctx);
  check_ctx(ctx2);
  return convert(ctx, ctx2);
}

Derivation Checker::conv_ty(const Expr& ctx, const Expr& ty, const Expr& ty2) {
  check_ty(ctx, ty);
  check_ty(ctx, ty2);
  return retarget(convert(ty, ty2), ctx, nullptr);
}

Derivation Checker::conv_sub(const Expr& src, const Expr& tgt, const Expr& sub, const Expr& sub2) {
  check_sub(src, sub, tgt);
  check_sub(src, sub2, tgt);
  return retarget(convert(sub, sub2), src, tgt);
}

Derivation Checker::conv_tm(const Expr& ctx, const Expr& ty, const Expr& tm, const Expr& tm2) {
  check_tm(ctx, tm, ty);
  check_tm(ctx, tm2, ty);
  return retarget(convert(tm, tm2), ctx, ty);
}

NormalizeResult Checker::normalize(const Expr& x) { return full_.normalize(x, opts_.fuel); }

Derivation Checker::convert(const Expr& x, const Expr& y) { return convert_with(x, y, full_); }

Derivation Checker::convert_ctx(const Expr& x, const Expr& y, Rewriter& rw) {
  if (x->kind == Kind::Empty && y->kind == Kind::Empty) return refl(x);
  if (x->kind == Kind::Ext && y->kind == Kind::Ext) {
    Derivation base = convert_with(x->kid(0), y->kid(0), rw);
    Derivation ty = retarget(convert_with(x->kid(1), y->kid(1), rw), x->kid(0), nullptr);
    return derive(Rule::CongExt, {base, ty});
  }
  fail(ErrorKind::NormalFormsDiffer, "contexts differ: " + print_expr(x) + " vs " + print_expr(y));
}

Derivation Checker::convert_with(const Expr& x, const Expr& y, Rewriter& rw) {
  if (struct_eq(x, y)) return refl(x);
  PairKey key{x, y, rw.rules().id()};
  auto it = conv_cache_.find(key);
  if (it != conv_cache_.end()) return it->second;
  auto bad = fail_cache_.find(key);
  if (bad != fail_cache_.end()) throw bad->second;
  if (in_progress_.count(key)) {
    ++cutoffs_;
    fail(ErrorKind::NormalFormsDiffer, "no progress comparing " + print_expr(x) + " and " + print_expr(y));
  }
  std::size_t cutoffs = cutoffs_;
  Derivation d;
  try {
    DepthGuard guard(depth_, opts_.max_depth, cutoffs_);
    in_progress_.insert(key);
    struct Release {
      std::unordered_set<PairKey, PairKeyHash>& set;
      const PairKey& key;
      ~Release() { set.erase(key); }
    } release{in_progress_, key};
    d = convert_uncached(x, y, rw);
  } catch (const Error& e) {
    // A failure that hit a cycle or the depth limit may succeed elsewhere.
    if (e.is_not_convertible() && cutoffs == cutoffs_) fail_cache_.emplace(key, e);
    throw;
  }
  conv_cache_.emplace(key, d);
  return d;
}

Derivation Checker::convert_uncached(const Expr& x, const Expr& y, Rewriter& rw) {
  if (x->cls == ExprClass::Ctx) return convert_ctx(x, y, rw);
  Derivation dx = normal_form(x, rw);
  Derivation dy = normal_form(y, rw);
  Derivation dc = compare(dx->concl.rhs, dy->concl.rhs, rw);
  return chain(dx, chain(dc, sym(dy)));
}

// x = nf(x). Built per subterm so that repeated annotations share one
// derivation; the rewriter's own traces redo them at every occurrence.
Derivation Checker::normal_form(const Expr& x, Rewriter& rw) {
  std::size_t fuel = opts_.fuel;
  return normal_form(x, rw, fuel);
}

Derivation Checker::normal_form(const Expr& x, Rewriter& rw, std::size_t& fuel) {
  PairKey key{x, x, rw.rules().id()};
  auto it = nf_cache_.find(key);
  if (it != nf_cache_.end()) return it->second;
  Derivation d = refl(x);
  Expr cur = x;
  const auto& rules = rw.rules().rules();
  for (;;) {
    bool stepped = false;
    for (std::size_t r = 0; r < rules.size() && !stepped; ++r) {
      auto hit = apply_at_root(rw.rules(), r, cur);
      if (!hit) continue;
      if (fuel == 0) fail(ErrorKind::FuelExhausted, "normalizing " + print_expr(x) + " exceeded fuel");
      --fuel;
      Step step{{}, r, hit->second, hit->first};
      d = chain(d, redex_derivation(cur, hit->first, step, rw));
      cur = hit->first;
      stepped = true;
    }
    if (stepped) continue;
    std::vector<Derivation> eqs(cur->kids.size());
    bool changed = false;
    for (std::size_t i = 0; i < cur->kids.size(); ++i) {
      Derivation k = normal_form(cur->kid(i), rw, fuel);
      if (!is_refl(k)) {
        eqs[i] = k;
        changed = true;
      }
    }
    if (!changed) break;
    d = chain(d, congruence(cur, std::move(eqs)));
    cur = d->concl.rhs;
  }
  nf_cache_.emplace(key, d);
  return d;
}

Derivation Checker::compare(const Expr& x, const Expr& y, Rewriter& rw) {
  if (struct_eq(x, y)) return refl(x);
  if (x->cls == ExprClass::Sub && tgt(sig_, x)->kind == Kind::Empty) {
    Derivation bangs = derive(Rule::CongBang, {convert_with(src(sig_, x), src(sig_, y), rw)});
    return chain(to_bang(x), chain(bangs, sym(to_bang(y))));
  }
  std::string why;
  if (x->kind == y->kind && x->name == y->name && x->kids.size() == y->kids.size()) {
    try {
      std::vector<Derivation> eqs(x->kids.size());
      for (std::size_t i = 0; i < x->kids.size(); ++i) {
        if (!struct_eq(x->kid(i), y->kid(i))) eqs[i] = convert_with(x->kid(i), y->kid(i), rw);
      }
      return congruence(x, std::move(eqs));
    } catch (const Error& e) {
      if (!e.is_not_convertible()) throw;
      why = e.what();
    }
  }
  if (x->cls == ExprClass::Sub && (x->kind != Kind::Pair || y->kind != Kind::Pair) &&
      tgt(sig_, x)->kind == Kind::Ext) {
    Derivation ex = x->kind == Kind::Pair ? refl(x) : eta(x);
    Derivation ey = y->kind == Kind::Pair ? refl(y) : eta(y);
    Derivation mid = convert_with(ex->concl.rhs, ey->concl.rhs, rw);
    return chain(ex, chain(mid, sym(ey)));
  }
  if (!why.empty()) fail(ErrorKind::NormalFormsDiffer, why);
  fail(ErrorKind::NormalFormsDiffer, "normal forms differ: " + print_expr(x) + " vs " + print_expr(y));
}

// γ = ⟨⟩_Δ for γ : Δ → 1, via id_1∘γ = ⟨⟩_1∘γ.
Derivation Checker::to_bang(const Expr& sub) {
  if (sub->kind == Kind::Bang) return refl(sub);
  Derivation g = infer(sub);
  Derivation left = sym(derive(Rule::IdL, {g}));
  Derivation mid = derive(Rule::CongComp, {derive(Rule::IdEmpty, {}), derive(Rule::Refl, {g})});
  Derivation right = derive(Rule::BangComp, {g});
  return chain(chain(left, mid), right);
}

// γ = ⟨p∘γ, q[γ]⟩ for γ : Δ → Γ.A, via surjective pairing.
Derivation Checker::eta(const Expr& sub) {
  Derivation g = infer(sub);
  const Expr& target = g->concl.cls;
  const Expr& base = target->kid(0);
  const Expr& a = target->kid(1);
  Derivation left = sym(derive(Rule::IdL, {g}));
  Derivation surj = derive(Rule::SurjPair, {retarget(infer(a), base, nullptr)});
  Derivation mid = derive(Rule::CongComp, {surj, derive(Rule::Refl, {g})});
  Derivation pq = retarget(infer(mk::pair(mk::p(a), mk::q(a), a)), target, target);
  Derivation right = derive(Rule::PairComp, {pq, g});
  return chain(chain(left, mid), right);
}

Derivation Checker::congruence(const Expr& x, std::vector<Derivation> e) {
  auto eq = [&](std::size_t i) { return e[i] ? e[i] : refl(x->kid(i)); };
  switch (x->kind) {
    case Kind::Ext: return derive(Rule::CongExt, {eq(0), retarget(eq(1), x->kid(0), nullptr)});
    case Kind::TySubst:
    case Kind::TmSubst: {
      Derivation s = eq(1);
      Derivation body = retarget(eq(0), s->concl.cls, nullptr);
      return derive(x->kind == Kind::TySubst ? Rule::CongTySubst : Rule::CongTmSubst, {body, s});
    }
    case Kind::Comp: {
      Derivation g = eq(1);
      return derive(Rule::CongComp, {retarget(eq(0), g->concl.cls, nullptr), g});
    }
    case Kind::Id: return derive(Rule::CongId, {eq(0)});
    case Kind::Bang: return derive(Rule::CongBang, {eq(0)});
    case Kind::P: return derive(Rule::CongP, {eq(0)});
    case Kind::Q: return derive(Rule::CongQ, {eq(0)});
    case Kind::Pair: {
      Derivation ty = eq(2);
      Derivation s = retarget(eq(0), nullptr, ty->concl.ctx);
      Derivation t = retarget(eq(1), s->concl.ctx, mk::ty_subst(x->kid(2), x->kid(0)));
      return derive(Rule::CongPair, {s, ty, t});
    }
    default: break;
  }
  return refl(x);
}

Derivation Checker::trace_derivation(const Trace& trace) { return trace_derivation_with(trace, full_); }

Derivation Checker::trace_derivation_with(const Trace& trace, Rewriter& rw) {
  Derivation d = refl(trace.start);
  Expr cur = trace.start;
  for (const auto& step : trace.steps) {
    d = chain(d, step_derivation(cur, step, 0, rw));
    cur = step.result;
  }
  return d;
}

Derivation Checker::step_derivation(const Expr& x, const Step& step, std::size_t depth, Rewriter& rw) {
  if (depth == step.path.size()) return redex_derivation(x, subterm(step.result, step.path), step, rw);
  std::vector<Derivation> eqs(x->kids.size());
  std::size_t i = step.path[depth];
  eqs[i] = step_derivation(x->kid(i), step, depth + 1, rw);
  return congruence(x, std::move(eqs));
}

Derivation Checker::redex_derivation(const Expr& r, const Expr& out, const Step& step, Rewriter& rw) {
  const RewriteRule& rule = rw.rules().rules()[step.rule];
  Derivation d;
  if (rule.origin == RuleOrigin::SigEquation) {
    d = equation_instance(r, out, rule, step.bindings);
  } else if (rule.origin == RuleOrigin::UnitOne) {
    Expr one = mk::empty();
    Derivation back = sym(derive(Rule::IdEmpty, {}));
    Derivation body = retarget(infer(r->kid(0)), one, nullptr);
    Derivation first = derive(r->kind == Kind::TySubst   ? Rule::CongTySubst
                              : r->kind == Kind::TmSubst ? Rule::CongTmSubst
                                                         : Rule::CongComp,
                              {derive(Rule::Refl, {body}), back});
    d = chain(first, derive(rule.law, {body}));
  } else {
    switch (rule.law) {
      case Rule::TyId:
      case Rule::TmId: d = derive(rule.law, {retarget(infer(r->kid(0)), r->kid(1)->kid(0), nullptr)}); break;
      case Rule::TyComp:
      case Rule::TmComp: {
        const Expr& inner = r->kid(0);
        Derivation g = infer(inner->kid(1));
        Derivation body = retarget(infer(inner->kid(0)), g->concl.cls, nullptr);
        Derivation e = retarget(infer(r->kid(1)), nullptr, g->concl.ctx);
        d = sym(derive(rule.law, {body, g, e}));
        break;
      }
      case Rule::IdL: d = derive(Rule::IdL, {retarget(infer(r->kid(1)), nullptr, r->kid(0)->kid(0))}); break;
      case Rule::IdR: d = derive(Rule::IdR, {retarget(infer(r->kid(0)), r->kid(1)->kid(0), nullptr)}); break;
      case Rule::Assoc: {
        const Expr& gd = r->kid(0);
        Derivation x = infer(r->kid(1));
        Derivation e = retarget(infer(gd->kid(1)), x->concl.cls, nullptr);
        Derivation g = retarget(infer(gd->kid(0)), e->concl.cls, nullptr);
        d = derive(Rule::Assoc, {g, e, x});
        break;
      }
      case Rule::IdEmpty: d = derive(Rule::IdEmpty, {}); break;
      case Rule::BangComp: d = derive(Rule::BangComp, {retarget(infer(r->kid(1)), nullptr, r->kid(0)->kid(0))}); break;
      case Rule::PPair:
      case Rule::QPair: {
        // p_B∘⟨γ,a⟩_A with B ≠ A first rewrites the annotation.
        const Expr& pair = r->kid(1);
        const Expr& ann = pair->kid(2);
        Derivation pre = refl(r);
        if (!struct_eq(r->kid(0)->kid(0), ann)) {
          Expr proj = r->kind == Kind::Comp ? mk::p(ann) : mk::q(ann);
          pre = congruence(r, {convert(r->kid(0), proj), nullptr});
        }
        d = chain(pre, derive(rule.law, {infer(pair)}));
        break;
      }
      case Rule::PairComp: {
        Derivation e = infer(r->kid(1));
        d = derive(Rule::PairComp, {retarget(infer(r->kid(0)), e->concl.cls, nullptr), e});
        break;
      }
      default: fail(ErrorKind::BadInference, "no derivation for rule " + rule.name);
    }
  }
  Derivation wf = infer(r);
  Derivation at = retarget(d, wf->concl.ctx, wf->concl.cls);
  if (!struct_eq(at->concl.lhs, r) || !struct_eq(at->concl.rhs, out)) {
    fail(ErrorKind::BadInference, "step derivation for " + rule.name + " concludes " + print_judgment(at->concl));
  }
  return at;
}

// r = l[σ] = r'[σ] = out, where σ collects the matched arguments. The two
// outer steps only use the cwf laws, so they cannot re-enter the equation.
Derivation Checker::equation_instance(const Expr& r, const Expr& out, const RewriteRule& rule, const Bindings& b) {
  const Declaration& decl = sig_.lookup(rule.label);
  std::vector<Expr> args;
  for (Expr c = decl.ctx; c->kind == Kind::Ext; c = c->kid(0)) args.push_back(nullptr);
  for (std::size_t i = 0; i < args.size(); ++i) {
    auto it = b.find("x" + std::to_string(i + 1));
    if (it == b.end()) fail(ErrorKind::BadInference, "unbound argument in instance of " + rule.label);
    args[i] = it->second;
  }
  Expr sigma = generic_substitution(decl.ctx, ctx_of(sig_, r), args);
  Derivation axiom = derive(Rule::EqAxiom, {}, decl.name);
  if (rule.reversed) axiom = sym(axiom);
  Derivation s = retarget(infer(sigma), nullptr, decl.ctx);
  Derivation inst = derive(Rule::CongTmSubst, {axiom, derive(Rule::Refl, {s})});
  Derivation into = align(r, inst->concl.lhs);
  Derivation outof = sym(align(out, inst->concl.rhs));
  return chain(into, chain(inst, outof));
}

// x = y where y is an instance of an equation side and x its match. They
// agree up to the cwf laws except in implicit-argument slots, which the
// match leaves unchecked; those are converted one by one with every rule.
// Each such slot is a proper subterm of x, so this cannot loop on x.
Derivation Checker::align(const Expr& x, const Expr& y) {
  try {
    return convert_with(x, y, cwf_);
  } catch (const Error& e) {
    if (!e.is_not_convertible()) throw;
  }
  Derivation dy = normal_form(y, cwf_);
  return chain(congruent(x, dy->concl.rhs), sym(dy));
}

Derivation Checker::congruent(const Expr& x, const Expr& y) {
  if (struct_eq(x, y)) return refl(x);
  if (x->kind != y->kind || x->name != y->name || x->kids.size() != y->kids.size()) return convert(x, y);
  try {
    std::vector<Derivation> eqs(x->kids.size());
    for (std::size_t i = 0; i < x->kids.size(); ++i) {
      if (!struct_eq(x->kid(i), y->kid(i))) eqs[i] = congruent(x->kid(i), y->kid(i));
    }
    return congruence(x, std::move(eqs));
  } catch (const Error& e) {
    // Same head, but the kids only meet after a rule fires at this node.
    if (!e.is_not_convertible()) throw;
    return convert(x, y);
  }
}

Derivation check_ctx(const Signature& sig, const Expr& ctx) { return Checker(sig).check_ctx(ctx); }
Derivation check_ty(const Signature& sig, const Expr& ctx, const Expr& ty) { return Checker(sig).check_ty(ctx, ty); }
Inferred infer_sub(const Signature& sig, const Expr& src, const Expr& sub) {
  return Checker(sig).infer_sub(src, sub);
}
Derivation check_tm(const Signature& sig, const Expr& ctx, const Expr& tm, const Expr& ty) {
  return Checker(sig).check_tm(ctx, tm, ty);
}
Derivation conv_ctx(const Signature& sig, const Expr& ctx, const Expr& ctx2) {
  return Checker(sig).conv_ctx(ctx, ctx2);
}
Derivation conv_ty(const Signature& sig, const Expr& ctx, const Expr& ty, const Expr& ty2) {
  return Checker(sig).conv_ty(ctx, ty, ty2);
}
Derivation conv_sub(const Signature& sig, const Expr& src, const Expr& tgt, const Expr& sub, const Expr& sub2) {
  return Checker(sig).conv_sub(src, tgt, sub, sub2);
}
Derivation conv_tm(const Signature& sig, const Expr& ctx, const Expr& ty, const Expr& tm, const Expr& tm2) {
  return Checker(sig).conv_tm(ctx, ty, tm, tm2);
}

}  // namespace gat
