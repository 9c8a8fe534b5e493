#include <doctest.h>

#include "common.hpp"
#include "gat/corpus.hpp"
#include "gat/syntax.hpp"

using namespace gat;
using namespace gat::testing;

TEST_SUITE("syntax") {

TEST_CASE("struct_eq") {
  CHECK(struct_eq(one(), one()));
  CHECK_FALSE(struct_eq(ctx_M(), mk::ext(one(), mk::ty_subst(M(), mk::id(one())))));
  // annotations are part of the tree
  CHECK_FALSE(struct_eq(qM(), mk::q(M_p())));
  CHECK(struct_eq(lunit_lhs(), lunit_lhs()));
}

TEST_CASE("classes follow the constructors") {
  CHECK(one()->cls == ExprClass::Ctx);
  CHECK(pM()->cls == ExprClass::Sub);
  CHECK(M_p()->cls == ExprClass::Ty);
  CHECK(qM()->cls == ExprClass::Tm);
  CHECK(mk::subst(e(), mk::bang(one()))->kind == Kind::TmSubst);
  CHECK(mk::subst(M(), mk::bang(one()))->kind == Kind::TySubst);
}

TEST_CASE("print_expr") {
  CHECK(print_expr(ctx_M()) == "1.M");
  CHECK(print_expr(mk::id(one())) == "id_1");
  CHECK(print_expr(lunit_lhs(), PrintMode::Compact) == "*[⟨⟨⟨⟩,e[⟨⟩]⟩,q⟩]");
  CHECK(print_expr(lunit_lhs()) == "*[⟨⟨⟨⟩_{1.M},e[⟨⟩_{1.M}]⟩_M,q_M⟩_{M[p_M]}]");
  CHECK(print_expr(ctx_MM()) == "1.M.M[p_M]");
}

TEST_CASE("measure") {
  CHECK(measure(one()) == Measure{1, 1});
  CHECK(measure(ctx_M()) == Measure{2, 2});
  // SortApp, two substitutions, two projections; annotations not counted
  Expr mpp = mk::ty_subst(M_p(), mk::p(M_p()));
  CHECK(measure(mpp) == Measure{5, 3});
  CHECK(full_size(mpp) > measure(mpp).size);
}

TEST_CASE("parse_expr inverts print_expr") {
  Signature sig = build("monoid").sig;
  for (const auto& d : sig.decls()) {
    for (const Expr& x : {d.ctx, d.ty, d.lhs, d.rhs}) {
      if (!x) continue;
      Expr back = parse_expr(print_expr(x), sig.resolver());
      CHECK(struct_eq(back, x));
    }
  }
}

TEST_CASE("parse_expr rejects junk") {
  Signature sig = build("monoid").sig;
  CHECK(error_of([&] { parse_expr("1.M[", sig.resolver()); }) == ErrorKind::SyntaxError);
  CHECK(error_of([&] { parse_expr("1.N", sig.resolver()); }).has_value());
}

TEST_CASE("reserved names") {
  CHECK(is_reserved_name("p"));
  CHECK(is_reserved_name("q_M"));
  CHECK(is_reserved_name("id_1"));
  CHECK(is_reserved_name("a b"));
  CHECK(is_reserved_name(""));
  CHECK_FALSE(is_reserved_name("M"));
  CHECK_FALSE(is_reserved_name("*"));
  CHECK_FALSE(is_reserved_name("ident"));
}

TEST_CASE("for_each_node visits children first") {
  std::vector<Kind> seen;
  for_each_node(ctx_M(), [&](const Expr& x) { seen.push_back(x->kind); });
  REQUIRE(seen.size() == 3);
  CHECK(seen.back() == Kind::Ext);
}

}
