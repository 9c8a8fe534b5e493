#ifndef GAT_DERIVATION_HPP
#define GAT_DERIVATION_HPP

#include <memory>
#include <string>
#include <vector>

#include "gat/signature.hpp"
#include "gat/syntax.hpp"

namespace gat {

// The eight judgment forms. Plain forms are kept alongside the equality
// forms; Refl connects them.
enum class Form { Ctx, CtxEq, Ty, TyEq, Sub, SubEq, Tm, TmEq };

std::string_view to_string(Form form);
bool is_equality(Form form);
Form plain_form(Form form);
Form equality_form(Form form);

// Field use per form:
//   Ctx    lhs=Γ                       Γ ⊢
//   CtxEq  lhs=Γ rhs=Γ'                Γ = Γ' ⊢
//   Ty     ctx=Γ lhs=A                 Γ ⊢ A
//   TyEq   ctx=Γ lhs=A rhs=A'          Γ ⊢ A = A'
//   Sub    ctx=Δ lhs=γ cls=Γ           Δ ⊢ γ : Γ
//   SubEq  ctx=Δ lhs=γ rhs=γ' cls=Γ    Δ ⊢ γ = γ' : Γ
//   Tm     ctx=Γ lhs=a cls=A           Γ ⊢ a : A
//   TmEq   ctx=Γ lhs=a rhs=a' cls=A    Γ ⊢ a = a' : A
struct Judgment {
  Form form = Form::Ctx;
  Expr ctx;
  Expr lhs;
  Expr rhs;
  Expr cls;

  static Judgment ctx_wf(Expr g) { return {Form::Ctx, nullptr, std::move(g), nullptr, nullptr}; }
  static Judgment ctx_eq(Expr g, Expr g2) { return {Form::CtxEq, nullptr, std::move(g), std::move(g2), nullptr}; }
  static Judgment ty(Expr g, Expr a) { return {Form::Ty, std::move(g), std::move(a), nullptr, nullptr}; }
  static Judgment ty_eq(Expr g, Expr a, Expr a2) { return {Form::TyEq, std::move(g), std::move(a), std::move(a2), nullptr}; }
  static Judgment sub(Expr d, Expr s, Expr g) { return {Form::Sub, std::move(d), std::move(s), nullptr, std::move(g)}; }
  static Judgment sub_eq(Expr d, Expr s, Expr s2, Expr g) {
    return {Form::SubEq, std::move(d), std::move(s), std::move(s2), std::move(g)};
  }
  static Judgment tm(Expr g, Expr a, Expr t) { return {Form::Tm, std::move(g), std::move(a), nullptr, std::move(t)}; }
  static Judgment tm_eq(Expr g, Expr a, Expr a2, Expr t) {
    return {Form::TmEq, std::move(g), std::move(a), std::move(a2), std::move(t)};
  }

  // The reflexive equality instance of a plain judgment, and back.
  Judgment as_refl() const;
  // Right-hand side, or lhs for plain forms.
  const Expr& right() const { return rhs ? rhs : lhs; }
};

bool same_judgment(const Judgment& x, const Judgment& y);
std::string print_judgment(const Judgment& j);

enum class Rule : unsigned char {
  // formation
  CtxEmpty,
  CtxExt,
  SortIntro,
  TySubst,
  SubId,
  SubComp,
  SubBang,
  SubP,
  SubPair,
  OpIntro,
  TmQ,
  TmSubst,
  // per
  Refl,
  Sym,
  Trans,
  // preservation
  TyCtxConv,
  SubSrcConv,
  SubTgtConv,
  TmCtxConv,
  TmTyConv,
  TyEqCtxConv,
  SubEqSrcConv,
  SubEqTgtConv,
  TmEqCtxConv,
  TmEqTyConv,
  // congruence, one per constructor with children
  CongExt,
  CongTySubst,
  CongTmSubst,
  CongComp,
  CongId,
  CongBang,
  CongP,
  CongQ,
  CongPair,
  // conversion
  TyId,         // A[id] = A
  TmId,         // a[id] = a
  TyComp,       // A[γ∘δ] = A[γ][δ]
  TmComp,       // a[γ∘δ] = a[γ][δ]
  IdL,          // id∘γ = γ
  IdR,          // γ∘id = γ
  Assoc,        // (γ∘δ)∘ξ = γ∘(δ∘ξ)
  IdEmpty,      // id_1 = ⟨⟩_1
  BangComp,     // ⟨⟩_Γ∘γ = ⟨⟩_Δ
  PPair,        // p∘⟨γ,a⟩ = γ
  QPair,        // q[⟨γ,a⟩] = a
  PairComp,     // ⟨γ,a⟩∘δ = ⟨γ∘δ,a[δ]⟩
  SurjPair,     // id_{Γ.A} = ⟨p,q⟩
  // signature
  EqAxiom,
};

std::string_view to_string(Rule rule);
std::optional<Rule> rule_from_string(std::string_view name);
bool is_conversion(Rule rule);
// The thirteen conversion rules in table order.
const std::vector<Rule>& conversion_rules();

struct DerivationNode;
using Derivation = std::shared_ptr<const DerivationNode>;

struct DerivationNode {
  Judgment concl;
  Rule rule;
  std::string symbol;  // SortIntro/OpIntro name, EqAxiom label
  std::vector<Derivation> premises;
};

Derivation make_derivation(Judgment concl, Rule rule, std::vector<Derivation> premises, std::string symbol = {});

// The conclusion `rule` licenses from `premises` (every rule's conclusion is
// determined by its premises and symbol). Throws BadInference when a side
// condition fails.
Judgment conclude(const Signature& sig, Rule rule, const std::vector<Derivation>& premises,
                  const std::string& symbol = {});
// make_derivation with the conclusion computed by `conclude`.
Derivation derive(const Signature& sig, Rule rule, std::vector<Derivation> premises, std::string symbol = {});

// Trusted checker. Verifies every node of `d` instantiates its rule over
// `sig` and returns the conclusion. Shared subderivations are checked once.
// Throws BadInference naming the path (premise indices from the root).
Judgment check_derivation(const Signature& sig, const Derivation& d);

// Distinct nodes and rule counts, for reporting.
std::size_t derivation_size(const Derivation& d);
bool cites(const Derivation& d, Rule rule, std::string_view symbol = {});

}  // namespace gat

#endif
