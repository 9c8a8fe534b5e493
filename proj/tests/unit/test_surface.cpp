#include <doctest.h>

#include "common.hpp"
#include "gat/corpus.hpp"
#include "gat/semantics.hpp"
#include "gat/surface.hpp"

using namespace gat;
using namespace gat::testing;

namespace {

Signature monoid() { return build("monoid").sig; }

std::string error_text(const std::string& src) {
  try {
    parse_gat(src);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("surface") {

TEST_CASE("parse") {
  auto f = parse_gat("sort M; op e : M; op mul (x:M, y:M) : M");
  REQUIRE(f.decls.size() == 3);
  CHECK(f.decls[2].name == "mul");
  CHECK(f.decls[2].tele.size() == 2);
  CHECK(parse_gat("").decls.empty());
  CHECK(parse_gat("-- only a comment\n").decls.empty());
  CHECK(error_of([] { parse_gat("op : M"); }) == ErrorKind::SyntaxError);
  CHECK(error_text("sort M;\nop : M;").find("2:4") != std::string::npos);
}

TEST_CASE("parse equations and orientation") {
  auto f = parse_gat("theory t; sort M; eq l [rtl] (x : M) : x = x : M; eq u [none] (x : M) : x = x : M;");
  CHECK(f.theory == "t");
  CHECK(f.decls[1].orient == Orientation::RightToLeft);
  CHECK(f.decls[2].orient == Orientation::Unoriented);
  CHECK(error_of([] { parse_gat("sort M; eq l [sideways] (x : M) : x = x : M;"); }) == ErrorKind::SyntaxError);
}

TEST_CASE("elaborate the monoid laws") {
  Signature s = monoid();
  const Declaration& l = s.lookup("lunit");
  CHECK(struct_eq(l.ctx, ctx_M()));
  CHECK(struct_eq(l.ty, M_p()));
  CHECK(struct_eq(l.lhs, lunit_lhs()));
  CHECK(struct_eq(l.rhs, qM()));
  const Declaration& e_decl = s.lookup("e");
  CHECK(struct_eq(e_decl.ctx, one()));
  CHECK(struct_eq(e_decl.ty, M()));
}

TEST_CASE("variables are projections") {
  Signature s = monoid();
  NamedCtx c = elaborate_telescope(s, parse_gat("sort t (x y z : M);").decls[0].tele);
  Model m = load_model(model_source("z3"));
  Interpreter in(s, m);
  const std::vector<std::string> names = {"x", "y", "z"};
  for (std::size_t i = 0; i < 3; ++i) {
    Expr v = elaborate_term(s, c, parse_surface_term(names[i]));
    // x is q[p][p], z is q
    std::size_t weakenings = 0;
    for (Expr cur = v; cur->kind == Kind::TmSubst; cur = cur->kid(0)) ++weakenings;
    CHECK(weakenings == 2 - i);
    for (const Env& env : in.ctx(c.ctx)) CHECK(in.tm(v, env) == env[i]);
  }
}

TEST_CASE("elaboration errors") {
  Signature s = monoid();
  NamedCtx c = elaborate_telescope(s, parse_gat("sort t (x : M);").decls[0].tele);
  CHECK(error_of([&] { elaborate_term(s, c, parse_surface_term("f(x)")); }) == ErrorKind::UnknownSymbol);
  CHECK(error_of([&] { elaborate_term(s, c, parse_surface_term("*(x)")); }) == ErrorKind::ArityMismatch);
  CHECK(error_of([&] { elaborate_term(s, c, parse_surface_term("x(e)")); }) == ErrorKind::ArityMismatch);
  CHECK(error_of([] { elaborate_all(parse_gat("sort M; op e : N;")); }) == ErrorKind::UnknownSymbol);
  CHECK(error_of([] { elaborate_all(parse_gat("sort M; op f (x x : M) : M;")); }) == ErrorKind::DuplicateName);

  Signature cat = build("category").sig;
  NamedCtx cc = elaborate_telescope(cat, parse_gat("sort t (A B : obj) (f : hom(A, B));").decls[0].tele);
  // comp(f, f) needs A = B
  CHECK(error_of([&] { elaborate_term(cat, cc, parse_surface_term("comp(f, f)")); }) ==
        ErrorKind::ArgumentTypeMismatch);
  CHECK_NOTHROW(elaborate_term(cat, cc, parse_surface_term("comp(f, ident(A))")));
}

TEST_CASE("print_surface") {
  Signature s = monoid();
  CHECK(print_surface(s, lunit_lhs(), {"y"}) == "*(e, y)");
  CHECK(print_surface(s, qM(), {"y"}) == "y");
  std::string fallback = print_surface(s, mk::comp(pM(), arg1(one(), e())), {});
  CHECK(fallback.find("∘") != std::string::npos);
}

TEST_CASE("print_surface round-trips through elaboration") {
  Signature s = build("internal-cwf").sig;
  for (const auto& d : s.decls()) {
    if (d.kind != DeclKind::Equation || !d.telescope) continue;
    NamedCtx c = elaborate_telescope(s, *d.telescope);
    Checker ck(s);
    for (const Expr& side : {d.lhs, d.rhs}) {
      std::string text = print_surface(s, side, c.names);
      Expr back = elaborate_term(s, c, parse_surface_term(text), d.ty);
      CHECK_NOTHROW(ck.conv_tm(d.ctx, d.ty, side, back));
    }
  }
}

TEST_CASE("goals") {
  Signature s = monoid();
  Goal g = parse_goal(s, "(y : M) |- *(e, y) = y : M");
  CHECK(struct_eq(g.lhs, lunit_lhs()));
  CHECK(cites(check_goal(s, g), Rule::EqAxiom, "lunit"));

  Goal raw = parse_goal(s, "1.M |- *[⟨⟨⟨⟩_{1.M},e[⟨⟩_{1.M}]⟩_M,q_M⟩_{M[p_M]}] = q_M : M[p_M]", true);
  CHECK(struct_eq(raw.lhs, lunit_lhs()));
  CHECK_NOTHROW(check_goal(s, raw));

  CHECK_NOTHROW(check_goal(s, parse_goal(s, "|- *(e, e) = e : M")));
  CHECK(error_of([&] { check_goal(s, parse_goal(s, "(x : M) |- *(x, x) = e : M")); }) ==
        ErrorKind::NormalFormsDiffer);
}

TEST_CASE("implicit arguments are inferred") {
  Signature cat = build("category").sig;
  Goal g = parse_goal(cat, "(Δ Γ : obj) (γ : hom(Δ, Γ)) |- comp(ident(Γ), γ) = γ : hom(Δ, Γ)");
  CHECK(cites(check_goal(cat, g), Rule::EqAxiom, "idl"));
}

TEST_CASE("every corpus golden judgment checks") {
  for (const auto& name : corpus_names()) {
    NamedExample ex = build(name);
    for (const auto& gj : ex.golden) {
      CAPTURE(gj.goal);
      Goal g = parse_goal(ex.sig, gj.goal);
      CHECK((g.rhs != nullptr) == gj.equation);
      CHECK_NOTHROW(check_goal(ex.sig, g));
    }
  }
}

}
