#include <doctest.h>

#include "common.hpp"
#include "gat/checker.hpp"
#include "gat/corpus.hpp"
#include "gat/signature.hpp"

using namespace gat;
using namespace gat::testing;

namespace {

// Σ₁…Σ₄ by hand through the validating constructors.
Signature sigma(int n) {
  Signature s = empty_signature();
  if (n >= 1) s = add_sort(s, "M", one());
  if (n >= 2) s = add_operator(s, "e", one(), M());
  if (n >= 3) s = add_operator(s, "*", ctx_MM(), mk::ty_subst(M_p(), mk::p(M_p())));
  if (n >= 4) s = add_equation(s, "lunit", ctx_M(), M_p(), lunit_lhs(), qM());
  return s;
}

}  // namespace

TEST_SUITE("signature") {

TEST_CASE("empty signature") {
  Signature s = empty_signature();
  CHECK(s.size() == 0);
  CHECK_NOTHROW(check_ctx(s, one()));
  CHECK(error_of([&] { check_ty(s, one(), M()); }).has_value());
}

TEST_CASE("add_sort") {
  CHECK(sigma(1).size() == 1);
  CHECK(error_of([] { add_sort(empty_signature(), "S", mk::ext(one(), mk::sort("T"))); }) ==
        ErrorKind::InvalidContext);
  CHECK(error_of([] { add_sort(sigma(1), "M", one()); }) == ErrorKind::DuplicateName);
  CHECK(error_of([] { add_sort(empty_signature(), "p_x", one()); }) == ErrorKind::InvalidName);

  // hom over 1.obj.obj[p]
  Signature c = add_sort(empty_signature(), "obj", one());
  Expr obj = mk::sort("obj");
  Expr ctx = mk::ext(mk::ext(one(), obj), mk::ty_subst(obj, mk::p(obj)));
  CHECK_NOTHROW(add_sort(c, "hom", ctx));
}

TEST_CASE("add_operator") {
  CHECK(sigma(2).lookup("e").kind == DeclKind::Operator);
  CHECK(sigma(3).size() == 3);
  CHECK(error_of([] { add_operator(sigma(2), "e", one(), M()); }) == ErrorKind::DuplicateName);
  CHECK(error_of([] { add_operator(sigma(1), "f", mk::ext(one(), mk::sort("N")), M()); }) == ErrorKind::InvalidContext);
  CHECK(error_of([] { add_operator(sigma(1), "f", one(), M_p()); }) == ErrorKind::InvalidType);
}

TEST_CASE("add_equation") {
  Signature s4 = sigma(4);
  CHECK(s4.size() == 4);
  CHECK(s4.lookup("lunit").orient == Orientation::LeftToRight);
  // M lives in 1, so it is not a type in 1.M at all
  CHECK(error_of([] { add_equation(sigma(3), "bad", ctx_M(), M(), lunit_lhs(), qM()); }) == ErrorKind::InvalidType);
  // e lives in 1, not 1.M
  CHECK(error_of([] { add_equation(sigma(3), "bad", ctx_M(), M_p(), lunit_lhs(), e()); }) ==
        ErrorKind::SideFailsToCheck);
  // q_{M[p]} has type M[p][p], in the wrong context
  CHECK(error_of([] { add_equation(sigma(3), "bad", ctx_M(), M_p(), lunit_lhs(), mk::q(M_p())); }) ==
        ErrorKind::SideFailsToCheck);
}

TEST_CASE("lookup") {
  const Declaration& e_decl = lookup(sigma(2), "e");
  CHECK(struct_eq(e_decl.ctx, one()));
  CHECK(struct_eq(e_decl.ty, M()));
  CHECK(error_of([] { lookup(sigma(1), "e"); }) == ErrorKind::NotFound);
  Signature s6 = build("monoid").sig;
  CHECK(struct_eq(lookup(s6, "lunit").lhs, lunit_lhs()));
}

TEST_CASE("hand-built stages agree with the corpus") {
  auto stages = monoid_stages();
  REQUIRE(stages.size() == 6);
  for (int n = 1; n <= 4; ++n) {
    Signature hand = sigma(n);
    const auto& want = hand.decls();
    const auto& got = stages[n - 1].decls();
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
      CHECK(got[i].name == want[i].name);
      CHECK(struct_eq(got[i].ctx, want[i].ctx));
      if (want[i].ty) CHECK(struct_eq(got[i].ty, want[i].ty));
      if (want[i].lhs) CHECK(struct_eq(got[i].lhs, want[i].lhs));
      if (want[i].rhs) CHECK(struct_eq(got[i].rhs, want[i].rhs));
    }
  }
}

TEST_CASE("every prefix revalidates") {
  Signature full = build("category").sig;
  Signature rebuilt;
  for (const auto& d : full.decls()) CHECK_NOTHROW(rebuilt = add_declaration(rebuilt, d));
  CHECK(rebuilt.size() == full.size());
}

TEST_CASE("judgments survive extension") {
  auto stages = monoid_stages();
  // e * e = e by lunit, rechecked over each later stage
  Expr lhs = mul(one(), e(), e());
  for (std::size_t n = 3; n < stages.size(); ++n) {
    Checker ck(stages[n]);
    Derivation d = ck.conv_tm(one(), M(), lhs, e());
    for (std::size_t m = n; m < stages.size(); ++m) CHECK_NOTHROW(check_derivation(stages[m], d));
  }
}

}
