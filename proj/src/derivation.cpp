#include "gat/derivation.hpp"

#include <array>
#include <unordered_set>

namespace gat {

std::string_view to_string(Form form) {
  switch (form) {
    case Form::Ctx: return "ctx";
    case Form::CtxEq: return "ctx-eq";
    case Form::Ty: return "ty";
    case Form::TyEq: return "ty-eq";
    case Form::Sub: return "sub";
    case Form::SubEq: return "sub-eq";
    case Form::Tm: return "tm";
    case Form::TmEq: return "tm-eq";
  }
  return "?";
}

bool is_equality(Form form) {
  return form == Form::CtxEq || form == Form::TyEq || form == Form::SubEq || form == Form::TmEq;
}

Form plain_form(Form form) {
  switch (form) {
    case Form::CtxEq: return Form::Ctx;
    case Form::TyEq: return Form::Ty;
    case Form::SubEq: return Form::Sub;
    case Form::TmEq: return Form::Tm;
    default: return form;
  }
}

Form equality_form(Form form) {
  switch (form) {
    case Form::Ctx: return Form::CtxEq;
    case Form::Ty: return Form::TyEq;
    case Form::Sub: return Form::SubEq;
    case Form::Tm: return Form::TmEq;
    default: return form;
  }
}

Judgment Judgment::as_refl() const {
  Judgment j = *this;
  j.form = equality_form(form);
  j.rhs = lhs;
  return j;
}

namespace {

bool same(const Expr& x, const Expr& y) {
  if (!x || !y) return !x && !y;
  return struct_eq(x, y);
}

}  // namespace

bool same_judgment(const Judgment& x, const Judgment& y) {
  return x.form == y.form && same(x.ctx, y.ctx) && same(x.lhs, y.lhs) && same(x.rhs, y.rhs) && same(x.cls, y.cls);
}

std::string print_judgment(const Judgment& j) {
  auto p = [](const Expr& e) { return print_expr(e); };
  switch (j.form) {
    case Form::Ctx: return p(j.lhs) + " ⊢";
    case Form::CtxEq: return p(j.lhs) + " = " + p(j.rhs) + " ⊢";
    case Form::Ty: return p(j.ctx) + " ⊢ " + p(j.lhs);
    case Form::TyEq: return p(j.ctx) + " ⊢ " + p(j.lhs) + " = " + p(j.rhs);
    case Form::Sub: return p(j.ctx) + " ⊢ " + p(j.lhs) + " : " + p(j.cls);
    case Form::SubEq: return p(j.ctx) + " ⊢ " + p(j.lhs) + " = " + p(j.rhs) + " : " + p(j.cls);
    case Form::Tm: return p(j.ctx) + " ⊢ " + p(j.lhs) + " : " + p(j.cls);
    case Form::TmEq: return p(j.ctx) + " ⊢ " + p(j.lhs) + " = " + p(j.rhs) + " : " + p(j.cls);
  }
  return {};
}

namespace {

struct RuleName {
  Rule rule;
  std::string_view name;
};

constexpr std::array<RuleName, 48> kRuleNames = {{
    {Rule::CtxEmpty, "CtxEmpty"},       {Rule::CtxExt, "CtxExt"},
    {Rule::SortIntro, "SortIntro"},     {Rule::TySubst, "TySubst"},
    {Rule::SubId, "SubId"},             {Rule::SubComp, "SubComp"},
    {Rule::SubBang, "SubBang"},         {Rule::SubP, "SubP"},
    {Rule::SubPair, "SubPair"},         {Rule::OpIntro, "OpIntro"},
    {Rule::TmQ, "TmQ"},                 {Rule::TmSubst, "TmSubst"},
    {Rule::Refl, "Refl"},               {Rule::Sym, "Sym"},
    {Rule::Trans, "Trans"},             {Rule::TyCtxConv, "TyCtxConv"},
    {Rule::SubSrcConv, "SubSrcConv"},   {Rule::SubTgtConv, "SubTgtConv"},
    {Rule::TmCtxConv, "TmCtxConv"},     {Rule::TmTyConv, "TmTyConv"},
    {Rule::TyEqCtxConv, "TyEqCtxConv"}, {Rule::SubEqSrcConv, "SubEqSrcConv"},
    {Rule::SubEqTgtConv, "SubEqTgtConv"}, {Rule::TmEqCtxConv, "TmEqCtxConv"},
    {Rule::TmEqTyConv, "TmEqTyConv"},   {Rule::CongExt, "CongExt"},
    {Rule::CongTySubst, "CongTySubst"}, {Rule::CongTmSubst, "CongTmSubst"},
    {Rule::CongComp, "CongComp"},       {Rule::CongId, "CongId"},
    {Rule::CongBang, "CongBang"},       {Rule::CongP, "CongP"},
    {Rule::CongQ, "CongQ"},             {Rule::CongPair, "CongPair"},
    {Rule::TyId, "TyId"},               {Rule::TmId, "TmId"},
    {Rule::TyComp, "TyComp"},           {Rule::TmComp, "TmComp"},
    {Rule::IdL, "IdL"},                 {Rule::IdR, "IdR"},
    {Rule::Assoc, "Assoc"},             {Rule::IdEmpty, "IdEmpty"},
    {Rule::BangComp, "BangComp"},       {Rule::PPair, "PPair"},
    {Rule::QPair, "QPair"},             {Rule::PairComp, "PairComp"},
    {Rule::SurjPair, "SurjPair"},       {Rule::EqAxiom, "EqAxiom"},
}};

}  // namespace

std::string_view to_string(Rule rule) {
  for (const auto& r : kRuleNames) {
    if (r.rule == rule) return r.name;
  }
  return "?";
}

std::optional<Rule> rule_from_string(std::string_view name) {
  for (const auto& r : kRuleNames) {
    if (r.name == name) return r.rule;
  }
  return std::nullopt;
}

const std::vector<Rule>& conversion_rules() {
  static const std::vector<Rule> rules = {Rule::TyId,     Rule::TmId,    Rule::TyComp, Rule::TmComp, Rule::IdL,
                                          Rule::IdR,      Rule::Assoc,   Rule::IdEmpty, Rule::BangComp, Rule::PPair,
                                          Rule::QPair,    Rule::PairComp, Rule::SurjPair};
  return rules;
}

bool is_conversion(Rule rule) {
  for (Rule r : conversion_rules()) {
    if (r == rule) return true;
  }
  return false;
}

Derivation make_derivation(Judgment concl, Rule rule, std::vector<Derivation> premises, std::string symbol) {
  auto node = std::make_shared<DerivationNode>();
  node->concl = std::move(concl);
  node->rule = rule;
  node->symbol = std::move(symbol);
  node->premises = std::move(premises);
  return node;
}

namespace {

// Thrown internally, converted to BadInference with the path at the top.
struct LocalFailure {
  std::string reason;
};

void require(bool cond, const char* reason) {
  if (!cond) throw LocalFailure{reason};
}

bool is(const Expr& e, Kind k) { return e && e->kind == k; }

struct RuleApp {
  Rule rule;
  const std::vector<Derivation>& premises;
  const std::string& symbol;
};

void wellformed_fields(const Judgment& j);

class Concluder {
 public:
  explicit Concluder(const Signature& sig) : sig_(sig) {}

  // The conclusion rule `d.rule` licenses from its premises; LocalFailure
  // when a side condition fails.
  Judgment conclude(const RuleApp& d) const;

 private:
  const Signature& sig_;

  static const Judgment& prem(const RuleApp& d, std::size_t i, Form form) {
    require(i < d.premises.size() && d.premises[i], "too few premises");
    const Judgment& j = d.premises[i]->concl;
    require(j.form == form, "premise has the wrong judgment form");
    return j;
  }

  static void arity(const RuleApp& d, std::size_t n) { require(d.premises.size() == n, "wrong number of premises"); }

  static bool eq(const Expr& x, const Expr& y) { return x && y && struct_eq(x, y); }
};

void wellformed_fields(const Judgment& j) {
    auto cls = [](const Expr& e, ExprClass c) { return e && e->cls == c; };
    switch (j.form) {
      case Form::Ctx: require(cls(j.lhs, ExprClass::Ctx), "malformed judgment"); break;
      case Form::CtxEq: require(cls(j.lhs, ExprClass::Ctx) && cls(j.rhs, ExprClass::Ctx), "malformed judgment"); break;
      case Form::Ty: require(cls(j.ctx, ExprClass::Ctx) && cls(j.lhs, ExprClass::Ty), "malformed judgment"); break;
      case Form::TyEq:
        require(cls(j.ctx, ExprClass::Ctx) && cls(j.lhs, ExprClass::Ty) && cls(j.rhs, ExprClass::Ty),
                "malformed judgment");
        break;
      case Form::Sub:
        require(cls(j.ctx, ExprClass::Ctx) && cls(j.lhs, ExprClass::Sub) && cls(j.cls, ExprClass::Ctx),
                "malformed judgment");
        break;
      case Form::SubEq:
        require(cls(j.ctx, ExprClass::Ctx) && cls(j.lhs, ExprClass::Sub) && cls(j.rhs, ExprClass::Sub) &&
                    cls(j.cls, ExprClass::Ctx),
                "malformed judgment");
        break;
      case Form::Tm:
        require(cls(j.ctx, ExprClass::Ctx) && cls(j.lhs, ExprClass::Tm) && cls(j.cls, ExprClass::Ty),
                "malformed judgment");
        break;
      case Form::TmEq:
        require(cls(j.ctx, ExprClass::Ctx) && cls(j.lhs, ExprClass::Tm) && cls(j.rhs, ExprClass::Tm) &&
                    cls(j.cls, ExprClass::Ty),
                "malformed judgment");
        break;
    }
  }

Judgment Concluder::conclude(const RuleApp& d) const {
    switch (d.rule) {
      case Rule::CtxEmpty:
        arity(d, 0);
        return Judgment::ctx_wf(mk::empty());
      case Rule::CtxExt: {
        arity(d, 1);
        const auto& a = prem(d, 0, Form::Ty);
        return Judgment::ctx_wf(mk::ext(a.ctx, a.lhs));
      }
      case Rule::SortIntro: {
        arity(d, 0);
        const Declaration* decl = sig_.find(d.symbol);
        require(decl && decl->kind == DeclKind::Sort, "no such sort");
        return Judgment::ty(decl->ctx, mk::sort(decl->name));
      }
      case Rule::OpIntro: {
        arity(d, 0);
        const Declaration* decl = sig_.find(d.symbol);
        require(decl && decl->kind == DeclKind::Operator, "no such operator");
        return Judgment::tm(decl->ctx, mk::op(decl->name), decl->ty);
      }
      case Rule::TySubst: {
        arity(d, 2);
        const auto& a = prem(d, 0, Form::Ty);
        const auto& s = prem(d, 1, Form::Sub);
        require(eq(a.ctx, s.cls), "substitution target differs from the type's context");
        return Judgment::ty(s.ctx, mk::ty_subst(a.lhs, s.lhs));
      }
      case Rule::SubId: {
        arity(d, 1);
        const auto& g = prem(d, 0, Form::Ctx);
        return Judgment::sub(g.lhs, mk::id(g.lhs), g.lhs);
      }
      case Rule::SubComp: {
        arity(d, 2);
        const auto& f = prem(d, 0, Form::Sub);
        const auto& g = prem(d, 1, Form::Sub);
        require(eq(f.ctx, g.cls), "composite does not compose");
        return Judgment::sub(g.ctx, mk::comp(f.lhs, g.lhs), f.cls);
      }
      case Rule::SubBang: {
        arity(d, 1);
        const auto& g = prem(d, 0, Form::Ctx);
        return Judgment::sub(g.lhs, mk::bang(g.lhs), mk::empty());
      }
      case Rule::SubP: {
        arity(d, 1);
        const auto& a = prem(d, 0, Form::Ty);
        return Judgment::sub(mk::ext(a.ctx, a.lhs), mk::p(a.lhs), a.ctx);
      }
      case Rule::SubPair: {
        arity(d, 3);
        const auto& s = prem(d, 0, Form::Sub);
        const auto& a = prem(d, 1, Form::Ty);
        const auto& t = prem(d, 2, Form::Tm);
        require(eq(s.cls, a.ctx), "type is not over the substitution's target");
        require(eq(t.ctx, s.ctx), "term is not in the substitution's source");
        require(eq(t.cls, mk::ty_subst(a.lhs, s.lhs)), "term does not have type A[γ]");
        return Judgment::sub(s.ctx, mk::pair(s.lhs, t.lhs, a.lhs), mk::ext(a.ctx, a.lhs));
      }
      case Rule::TmQ: {
        arity(d, 1);
        const auto& a = prem(d, 0, Form::Ty);
        return Judgment::tm(mk::ext(a.ctx, a.lhs), mk::q(a.lhs), mk::ty_subst(a.lhs, mk::p(a.lhs)));
      }
      case Rule::TmSubst: {
        arity(d, 2);
        const auto& t = prem(d, 0, Form::Tm);
        const auto& s = prem(d, 1, Form::Sub);
        require(eq(t.ctx, s.cls), "substitution target differs from the term's context");
        return Judgment::tm(s.ctx, mk::tm_subst(t.lhs, s.lhs), mk::ty_subst(t.cls, s.lhs));
      }
      case Rule::Refl: {
        arity(d, 1);
        require(!d.premises.empty() && d.premises[0] && !is_equality(d.premises[0]->concl.form),
                "Refl takes a plain judgment");
        const auto& x = prem(d, 0, d.premises[0]->concl.form);
        return x.as_refl();
      }
      case Rule::Sym: {
        arity(d, 1);
        require(!d.premises.empty() && d.premises[0] && is_equality(d.premises[0]->concl.form),
                "Sym takes an equality");
        Judgment x = prem(d, 0, d.premises[0]->concl.form);
        std::swap(x.lhs, x.rhs);
        return x;
      }
      case Rule::Trans: {
        arity(d, 2);
        require(!d.premises.empty() && d.premises[0] && is_equality(d.premises[0]->concl.form),
                "Trans takes equalities");
        const auto& x = prem(d, 0, d.premises[0]->concl.form);
        const auto& y = prem(d, 1, x.form);
        require(eq(x.rhs, y.lhs), "middle terms differ");
        require((!x.ctx && !y.ctx) || eq(x.ctx, y.ctx), "premises live in different contexts");
        require((!x.cls && !y.cls) || eq(x.cls, y.cls), "premises have different classifiers");
        Judgment want = x;
        want.rhs = y.rhs;
        return want;
      }
      case Rule::TyCtxConv:
      case Rule::TmCtxConv:
      case Rule::SubSrcConv:
      case Rule::TyEqCtxConv:
      case Rule::TmEqCtxConv:
      case Rule::SubEqSrcConv: {
        arity(d, 2);
        Form f = Form::Ty;
        switch (d.rule) {
          case Rule::TyCtxConv: f = Form::Ty; break;
          case Rule::TmCtxConv: f = Form::Tm; break;
          case Rule::SubSrcConv: f = Form::Sub; break;
          case Rule::TyEqCtxConv: f = Form::TyEq; break;
          case Rule::TmEqCtxConv: f = Form::TmEq; break;
          default: f = Form::SubEq; break;
        }
        Judgment x = prem(d, 0, f);
        const auto& c = prem(d, 1, Form::CtxEq);
        require(eq(x.ctx, c.lhs), "context equation does not start at the judgment's context");
        x.ctx = c.rhs;
        return x;
      }
      case Rule::SubTgtConv:
      case Rule::SubEqTgtConv: {
        arity(d, 2);
        Judgment x = prem(d, 0, d.rule == Rule::SubTgtConv ? Form::Sub : Form::SubEq);
        const auto& c = prem(d, 1, Form::CtxEq);
        require(eq(x.cls, c.lhs), "context equation does not start at the target");
        x.cls = c.rhs;
        return x;
      }
      case Rule::TmTyConv:
      case Rule::TmEqTyConv: {
        arity(d, 2);
        Judgment x = prem(d, 0, d.rule == Rule::TmTyConv ? Form::Tm : Form::TmEq);
        const auto& t = prem(d, 1, Form::TyEq);
        require(eq(t.ctx, x.ctx), "type equation lives in another context");
        require(eq(x.cls, t.lhs), "type equation does not start at the term's type");
        x.cls = t.rhs;
        return x;
      }
      case Rule::CongExt: {
        arity(d, 2);
        const auto& c = prem(d, 0, Form::CtxEq);
        const auto& a = prem(d, 1, Form::TyEq);
        require(eq(a.ctx, c.lhs), "type equation is not over the base context");
        return Judgment::ctx_eq(mk::ext(c.lhs, a.lhs), mk::ext(c.rhs, a.rhs));
      }
      case Rule::CongTySubst: {
        arity(d, 2);
        const auto& a = prem(d, 0, Form::TyEq);
        const auto& s = prem(d, 1, Form::SubEq);
        require(eq(a.ctx, s.cls), "substitution target differs from the type's context");
        return Judgment::ty_eq(s.ctx, mk::ty_subst(a.lhs, s.lhs), mk::ty_subst(a.rhs, s.rhs));
      }
      case Rule::CongTmSubst: {
        arity(d, 2);
        const auto& t = prem(d, 0, Form::TmEq);
        const auto& s = prem(d, 1, Form::SubEq);
        require(eq(t.ctx, s.cls), "substitution target differs from the term's context");
        return Judgment::tm_eq(s.ctx, mk::tm_subst(t.lhs, s.lhs), mk::tm_subst(t.rhs, s.rhs),
                                  mk::ty_subst(t.cls, s.lhs));
      }
      case Rule::CongComp: {
        arity(d, 2);
        const auto& f = prem(d, 0, Form::SubEq);
        const auto& g = prem(d, 1, Form::SubEq);
        require(eq(f.ctx, g.cls), "composite does not compose");
        return Judgment::sub_eq(g.ctx, mk::comp(f.lhs, g.lhs), mk::comp(f.rhs, g.rhs), f.cls);
      }
      case Rule::CongId: {
        arity(d, 1);
        const auto& c = prem(d, 0, Form::CtxEq);
        return Judgment::sub_eq(c.lhs, mk::id(c.lhs), mk::id(c.rhs), c.lhs);
      }
      case Rule::CongBang: {
        arity(d, 1);
        const auto& c = prem(d, 0, Form::CtxEq);
        return Judgment::sub_eq(c.lhs, mk::bang(c.lhs), mk::bang(c.rhs), mk::empty());
      }
      case Rule::CongP: {
        arity(d, 1);
        const auto& a = prem(d, 0, Form::TyEq);
        return Judgment::sub_eq(mk::ext(a.ctx, a.lhs), mk::p(a.lhs), mk::p(a.rhs), a.ctx);
      }
      case Rule::CongQ: {
        arity(d, 1);
        const auto& a = prem(d, 0, Form::TyEq);
        return Judgment::tm_eq(mk::ext(a.ctx, a.lhs), mk::q(a.lhs), mk::q(a.rhs),
                                  mk::ty_subst(a.lhs, mk::p(a.lhs)));
      }
      case Rule::CongPair: {
        arity(d, 3);
        const auto& s = prem(d, 0, Form::SubEq);
        const auto& a = prem(d, 1, Form::TyEq);
        const auto& t = prem(d, 2, Form::TmEq);
        require(eq(s.cls, a.ctx), "type is not over the substitution's target");
        require(eq(t.ctx, s.ctx), "term is not in the substitution's source");
        require(eq(t.cls, mk::ty_subst(a.lhs, s.lhs)), "term equation is not at type A[γ]");
        return Judgment::sub_eq(s.ctx, mk::pair(s.lhs, t.lhs, a.lhs), mk::pair(s.rhs, t.rhs, a.rhs),
                                   mk::ext(a.ctx, a.lhs));
      }
      case Rule::TyId: {
        arity(d, 1);
        const auto& a = prem(d, 0, Form::Ty);
        return Judgment::ty_eq(a.ctx, mk::ty_subst(a.lhs, mk::id(a.ctx)), a.lhs);
      }
      case Rule::TmId: {
        arity(d, 1);
        const auto& t = prem(d, 0, Form::Tm);
        return Judgment::tm_eq(t.ctx, mk::tm_subst(t.lhs, mk::id(t.ctx)), t.lhs, t.cls);
      }
      case Rule::TyComp: {
        arity(d, 3);
        const auto& a = prem(d, 0, Form::Ty);
        const auto& g = prem(d, 1, Form::Sub);
        const auto& e = prem(d, 2, Form::Sub);
        require(eq(a.ctx, g.cls) && eq(g.ctx, e.cls), "premises do not compose");
        return Judgment::ty_eq(e.ctx, mk::ty_subst(a.lhs, mk::comp(g.lhs, e.lhs)),
                                  mk::ty_subst(mk::ty_subst(a.lhs, g.lhs), e.lhs));
      }
      case Rule::TmComp: {
        arity(d, 3);
        const auto& t = prem(d, 0, Form::Tm);
        const auto& g = prem(d, 1, Form::Sub);
        const auto& e = prem(d, 2, Form::Sub);
        require(eq(t.ctx, g.cls) && eq(g.ctx, e.cls), "premises do not compose");
        auto ge = mk::comp(g.lhs, e.lhs);
        return Judgment::tm_eq(e.ctx, mk::tm_subst(t.lhs, ge), mk::tm_subst(mk::tm_subst(t.lhs, g.lhs), e.lhs),
                                  mk::ty_subst(t.cls, ge));
      }
      case Rule::IdL: {
        arity(d, 1);
        const auto& g = prem(d, 0, Form::Sub);
        return Judgment::sub_eq(g.ctx, mk::comp(mk::id(g.cls), g.lhs), g.lhs, g.cls);
      }
      case Rule::IdR: {
        arity(d, 1);
        const auto& g = prem(d, 0, Form::Sub);
        return Judgment::sub_eq(g.ctx, mk::comp(g.lhs, mk::id(g.ctx)), g.lhs, g.cls);
      }
      case Rule::Assoc: {
        arity(d, 3);
        const auto& g = prem(d, 0, Form::Sub);
        const auto& e = prem(d, 1, Form::Sub);
        const auto& x = prem(d, 2, Form::Sub);
        require(eq(g.ctx, e.cls) && eq(e.ctx, x.cls), "premises do not compose");
        return Judgment::sub_eq(x.ctx, mk::comp(mk::comp(g.lhs, e.lhs), x.lhs),
                                   mk::comp(g.lhs, mk::comp(e.lhs, x.lhs)), g.cls);
      }
      case Rule::IdEmpty:
        arity(d, 0);
        return Judgment::sub_eq(mk::empty(), mk::id(mk::empty()), mk::bang(mk::empty()), mk::empty());
      case Rule::BangComp: {
        arity(d, 1);
        const auto& g = prem(d, 0, Form::Sub);
        return Judgment::sub_eq(g.ctx, mk::comp(mk::bang(g.cls), g.lhs), mk::bang(g.ctx), mk::empty());
      }
      case Rule::PPair:
      case Rule::QPair: {
        arity(d, 1);
        const auto& s = prem(d, 0, Form::Sub);
        require(is(s.lhs, Kind::Pair), "premise is not a pair");
        require(is(s.cls, Kind::Ext), "pair target is not a comprehension");
        const Expr& g = s.lhs->kid(0);
        const Expr& a = s.lhs->kid(1);
        const Expr& ty = s.lhs->kid(2);
        require(eq(s.cls->kid(1), ty), "pair annotation differs from its target");
        if (d.rule == Rule::PPair) return Judgment::sub_eq(s.ctx, mk::comp(mk::p(ty), s.lhs), g, s.cls->kid(0));
        return Judgment::tm_eq(s.ctx, mk::tm_subst(mk::q(ty), s.lhs), a, mk::ty_subst(ty, g));
      }
      case Rule::PairComp: {
        arity(d, 2);
        const auto& s = prem(d, 0, Form::Sub);
        const auto& e = prem(d, 1, Form::Sub);
        require(is(s.lhs, Kind::Pair), "premise is not a pair");
        require(eq(s.ctx, e.cls), "premises do not compose");
        const Expr& g = s.lhs->kid(0);
        const Expr& a = s.lhs->kid(1);
        const Expr& ty = s.lhs->kid(2);
        return Judgment::sub_eq(e.ctx, mk::comp(s.lhs, e.lhs),
                                   mk::pair(mk::comp(g, e.lhs), mk::tm_subst(a, e.lhs), ty), s.cls);
      }
      case Rule::SurjPair: {
        arity(d, 1);
        const auto& a = prem(d, 0, Form::Ty);
        auto ga = mk::ext(a.ctx, a.lhs);
        return Judgment::sub_eq(ga, mk::id(ga), mk::pair(mk::p(a.lhs), mk::q(a.lhs), a.lhs), ga);
      }
      case Rule::EqAxiom: {
        arity(d, 0);
        const Declaration* decl = sig_.find(d.symbol);
        require(decl && decl->kind == DeclKind::Equation, "no such equation");
        return Judgment::tm_eq(decl->ctx, decl->lhs, decl->rhs, decl->ty);
      }
    }
    throw LocalFailure{"unknown rule"};
}

class DerivationChecker {
 public:
  explicit DerivationChecker(const Signature& sig) : concluder_(sig) {}

  void check(const Derivation& d, std::vector<std::size_t>& path) {
    if (!d) throw LocalFailure{"missing derivation"};
    if (done_.count(d.get())) return;
    for (std::size_t i = 0; i < d->premises.size(); ++i) {
      path.push_back(i);
      check(d->premises[i], path);
      path.pop_back();
    }
    try {
      wellformed_fields(d->concl);
      Judgment want = concluder_.conclude({d->rule, d->premises, d->symbol});
      require(same_judgment(d->concl, want), "conclusion does not match the rule instance");
    } catch (const LocalFailure& f) {
      std::string where = "root";
      for (std::size_t i : path) where += "." + std::to_string(i);
      fail(ErrorKind::BadInference, "at " + where + ", rule " + std::string(to_string(d->rule)) + ": " + f.reason +
                                        " (concluding " + print_judgment(d->concl) + ")");
    }
    done_.insert(d.get());
    keep_.push_back(d);
  }

 private:
  Concluder concluder_;
  std::unordered_set<const DerivationNode*> done_;
  std::vector<Derivation> keep_;
};

}  // namespace

Judgment conclude(const Signature& sig, Rule rule, const std::vector<Derivation>& premises,
                  const std::string& symbol) {
  try {
    return Concluder(sig).conclude({rule, premises, symbol});
  } catch (const LocalFailure& f) {
    std::string shown;
    for (const auto& p : premises) shown += "\n  premise: " + (p ? print_judgment(p->concl) : std::string("?"));
    fail(ErrorKind::BadInference, "rule " + std::string(to_string(rule)) + ": " + f.reason + shown);
  }
}

Derivation derive(const Signature& sig, Rule rule, std::vector<Derivation> premises, std::string symbol) {
  Judgment j = conclude(sig, rule, premises, symbol);
  return make_derivation(std::move(j), rule, std::move(premises), std::move(symbol));
}

Judgment check_derivation(const Signature& sig, const Derivation& d) {
  DerivationChecker checker(sig);
  std::vector<std::size_t> path;
  try {
    checker.check(d, path);
  } catch (const LocalFailure& f) {
    fail(ErrorKind::BadInference, f.reason);
  }
  return d->concl;
}

std::size_t derivation_size(const Derivation& d) {
  std::unordered_set<const DerivationNode*> seen;
  std::vector<const DerivationNode*> stack{d.get()};
  while (!stack.empty()) {
    const DerivationNode* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    for (const auto& p : n->premises) stack.push_back(p.get());
  }
  return seen.size();
}

bool cites(const Derivation& d, Rule rule, std::string_view symbol) {
  std::unordered_set<const DerivationNode*> seen;
  std::vector<const DerivationNode*> stack{d.get()};
  while (!stack.empty()) {
    const DerivationNode* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    if (n->rule == rule && (symbol.empty() || n->symbol == symbol)) return true;
    for (const auto& p : n->premises) stack.push_back(p.get());
  }
  return false;
}

}  // namespace gat
