#ifndef GAT_PRESUP_HPP
#define GAT_PRESUP_HPP

#include "gat/signature.hpp"
#include "gat/syntax.hpp"

namespace gat {

// Syntactic presuppositions read off the annotations. For well-formed x these
// are exactly the context/type/target that inference assigns:
//   ctx_of(A)  the context A lives in      (S: declared; A[γ]: src γ)
//   src(γ)     the source                  (p_A: ctx_of(A).A; ⟨γ,a⟩: src γ)
//   tgt(γ)     the target                  (⟨⟩: 1; ⟨γ,a⟩_A: ctx_of(A).A)
//   ctx_of(a)  the context a lives in      (q_A: ctx_of(A).A; a[γ]: src γ)
//   type_of(a) the synthesized type        (q_A: A[p_A]; a[γ]: type_of(a)[γ])
// On pattern metavariables they return opaque metavariables named after the
// query, so rewriting can compute with them. Unknown symbols raise IllFormed.
Expr ctx_of(const Signature& sig, const Expr& x);
Expr src(const Signature& sig, const Expr& sub);
Expr tgt(const Signature& sig, const Expr& sub);
Expr type_of(const Signature& sig, const Expr& tm);

}  // namespace gat

#endif
