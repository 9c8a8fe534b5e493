#ifndef GAT_SYNTAX_HPP
#define GAT_SYNTAX_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gat/error.hpp"

namespace gat {

// The four syntactic classes of cwf-combinator syntax.
enum class ExprClass { Ctx, Sub, Ty, Tm };

std::string_view to_string(ExprClass cls);

// One tag per combinator. Children are stored positionally:
//   Ext      [base ctx, ty]            Γ.A
//   Comp     [sub f, sub g]            f ∘ g
//   Id       [ctx]                     id_Γ
//   Bang     [ctx]                     ⟨⟩_Γ
//   P        [ty]                      p_A
//   Pair     [sub, tm, ty]             ⟨γ, a⟩_A
//   TySubst  [ty, sub]                 A[γ]
//   TmSubst  [tm, sub]                 a[γ]
//   Q        [ty]                      q_A
// SortApp, OpApp and Meta carry a name instead. Meta only occurs in rewrite
// patterns and never in checked syntax.
enum class Kind : unsigned char {
  Empty,
  Ext,
  Comp,
  Id,
  Bang,
  P,
  Pair,
  TySubst,
  SortApp,
  TmSubst,
  Q,
  OpApp,
  Meta,
};

std::string_view to_string(Kind kind);

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
  Kind kind;
  ExprClass cls;
  std::string name;
  std::vector<Expr> kids;
  std::size_t hash = 0;
  std::size_t size = 0;   // skeleton size, see measure()
  std::size_t depth = 0;  // skeleton depth

  const Expr& kid(std::size_t i) const { return kids[i]; }
};

// Annotation positions: the subscripts of id_Γ, ⟨⟩_Γ, p_A, q_A, ⟨γ,a⟩_A.
bool is_annotation(Kind kind, std::size_t child);

namespace mk {
Expr empty();
Expr ext(Expr base, Expr ty);
Expr comp(Expr f, Expr g);
Expr id(Expr ctx);
Expr bang(Expr ctx);
Expr p(Expr ty);
Expr pair(Expr sub, Expr tm, Expr ty);
Expr ty_subst(Expr ty, Expr sub);
Expr sort(std::string name);
Expr tm_subst(Expr tm, Expr sub);
Expr q(Expr ty);
Expr op(std::string name);
Expr meta(std::string name, ExprClass cls);
// A[γ] or a[γ], chosen by the class of `x`.
Expr subst(Expr x, Expr sub);
// Same node kind and name as `like`, with new children.
Expr rebuild(const Expr& like, std::vector<Expr> kids);
}  // namespace mk

bool struct_eq(const Expr& x, const Expr& y);

struct ExprHash {
  std::size_t operator()(const Expr& e) const noexcept { return e->hash; }
};
struct ExprEq {
  bool operator()(const Expr& x, const Expr& y) const { return struct_eq(x, y); }
};

struct Measure {
  std::size_t size;
  std::size_t depth;
  bool operator==(const Measure&) const = default;
};

// Size and depth of the skeleton. Annotation subtrees are not counted, and an
// Ext node contributes depth but no size ("1.M" is the two-element list 1, M).
// So: 1 → (1,1), 1.M → (2,2), M[p][p] → (5,3).
Measure measure(const Expr& x);

// Total node count including annotations.
std::size_t full_size(const Expr& x);

enum class PrintMode {
  Annotated,  // canonical, re-parseable: id_1, p_M, ⟨γ,a⟩_{M[p_M]}
  Compact,    // annotations dropped: ∗[⟨⟨⟨⟩,e[⟨⟩]⟩,q⟩]
};

std::string print_expr(const Expr& x, PrintMode mode = PrintMode::Annotated);

// Resolves a symbol name to Ty (sort) or Tm (operator).
using SymbolResolver = std::function<std::optional<ExprClass>(std::string_view)>;

// Parses the canonical annotated notation produced by print_expr.
Expr parse_expr(std::string_view text, const SymbolResolver& resolve);

// True for names that print_expr/parse_expr cannot round-trip.
bool is_reserved_name(std::string_view name);

// Applies `f` to every node, children first.
void for_each_node(const Expr& x, const std::function<void(const Expr&)>& f);

}  // namespace gat

#endif
