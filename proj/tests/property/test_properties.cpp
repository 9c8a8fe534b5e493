#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <map>

#include "common.hpp"
#include "fuzz.hpp"
#include "gat/corpus.hpp"
#include "gat/presup.hpp"
#include "gat/semantics.hpp"
#include "gat/serialize.hpp"

using namespace gat;
using namespace gat::testing;

namespace {

std::uint64_t seed() {
  if (const char* s = std::getenv("GAT_SEED")) return std::strtoull(s, nullptr, 10);
  return 20261016;
}

const char* kMonoidTele = "(x y z : M)";
const char* kCwfTele = "(Γ : ctx) (A : ty(Γ)) (Δ : ctx) (γ : hom(Δ, Γ)) (a : tm(Δ, tysub(A, γ)))";
const char* kCatTele = "(X Y : obj) (f g : hom(X, Y)) (h : hom(Y, Y))";

// Judgment of x at its presuppositions, for comparing conclusions.
Judgment plain(const Signature& sig, const fuzz::Typed& t) {
  switch (t.x->cls) {
    case ExprClass::Tm: return Judgment::tm(t.ctx, t.x, t.cls);
    case ExprClass::Sub: return Judgment::sub(t.ctx, t.x, t.cls);
    case ExprClass::Ty: return Judgment::ty(t.ctx, t.x);
    case ExprClass::Ctx: break;
  }
  (void)sig;
  return Judgment::ctx_wf(t.x);
}

Derivation convert(Checker& ck, const fuzz::Typed& t, const Expr& a, const Expr& b) {
  switch (a->cls) {
    case ExprClass::Tm: return ck.conv_tm(t.ctx, t.cls, a, b);
    case ExprClass::Sub: return ck.conv_sub(t.ctx, t.cls, a, b);
    case ExprClass::Ty: return ck.conv_ty(t.ctx, a, b);
    case ExprClass::Ctx: break;
  }
  return ck.conv_ctx(a, b);
}

}  // namespace

TEST_CASE("print then parse is the identity, and printing is injective") {
  for (const char* name : {"monoid", "internal-cwf"}) {
    Signature sig = build(name).sig;
    fuzz::Fuzzer f(sig, name == std::string("monoid") ? kMonoidTele : kCwfTele, seed());
    std::map<std::string, Expr> printed;
    for (int i = 0; i < 500; ++i) {
      fuzz::Typed t = f.any(24);
      std::string text = print_expr(t.x);
      CAPTURE(text);
      CHECK(struct_eq(parse_expr(text, sig.resolver()), t.x));
      auto [it, fresh] = printed.emplace(text, t.x);
      if (!fresh) CHECK(struct_eq(it->second, t.x));
      CHECK(struct_eq(load_expr(dump_expr(t.x)), t.x));
    }
  }
}

TEST_CASE("every generated expression checks at its presuppositions") {
  for (const char* name : {"monoid", "category", "internal-cwf"}) {
    Signature sig = build(name).sig;
    std::string n = name;
    fuzz::Fuzzer f(sig, n == "monoid" ? kMonoidTele : n == "category" ? kCatTele : kCwfTele, seed() + 1);
    for (int i = 0; i < 300; ++i) {
      fuzz::Typed t = f.any(20);
      CAPTURE(print_expr(t.x));
      Derivation d = f.checker().infer(t.x);
      Judgment j = check_derivation(sig, d);
      if (t.x->cls != ExprClass::Ctx) CHECK(same_judgment(j, plain(sig, t)));
    }
  }
}

TEST_CASE("PER laws: reflexivity, symmetry and transitivity by glue") {
  for (const char* name : {"monoid", "internal-cwf"}) {
    Signature sig = build(name).sig;
    fuzz::Fuzzer f(sig, name == std::string("monoid") ? kMonoidTele : kCwfTele, seed() + 2);
    Rewriter rw(signature_rule_set(sig));
    Checker& ck = f.checker();
    for (int i = 0; i < 200; ++i) {
      fuzz::Typed t = f.any(18);
      if (t.x->cls == ExprClass::Ctx) continue;
      CAPTURE(print_expr(t.x));
      Derivation r = convert(ck, t, t.x, t.x);
      CHECK(r->rule == Rule::Refl);

      Expr b = fuzz::random_rewrites(rw, f.rng(), t.x, 2);
      Expr c = fuzz::random_rewrites(rw, f.rng(), b, 2);
      Derivation ab = convert(ck, t, t.x, b);
      Derivation bc = convert(ck, t, b, c);
      Derivation ba = convert(ck, t, b, t.x);
      CHECK_NOTHROW(check_derivation(sig, ba));

      Judgment ac = check_derivation(sig, derive(sig, Rule::Trans, {ab, bc}));
      CHECK(struct_eq(ac.lhs, t.x));
      CHECK(struct_eq(ac.rhs, c));
      Judgment sym = check_derivation(sig, derive(sig, Rule::Sym, {ab}));
      CHECK(struct_eq(sym.lhs, b));
      CHECK(struct_eq(sym.rhs, t.x));
    }
  }
}

TEST_CASE("type conversion preserves term typing") {
  Signature sig = build("internal-cwf").sig;
  fuzz::Fuzzer f(sig, kCwfTele, seed() + 3);
  Rewriter rw(signature_rule_set(sig));
  for (int i = 0; i < 200; ++i) {
    fuzz::Typed t = f.any_term(18);
    // a convertible type: rewrite the synthesized one, or weaken it by id
    Expr ty2 = i % 2 ? fuzz::random_rewrites(rw, f.rng(), t.cls, 3) : mk::ty_subst(t.cls, mk::id(t.ctx));
    CAPTURE(print_expr(t.x));
    CHECK_NOTHROW(f.checker().conv_ty(t.ctx, t.cls, ty2));
    Derivation d = f.checker().check_tm(t.ctx, t.x, ty2);
    CHECK(struct_eq(check_derivation(sig, d).cls, ty2));
  }
}

TEST_CASE("normalization traces become checked derivations") {
  for (const char* name : {"category", "internal-cwf"}) {
    Signature sig = build(name).sig;
    fuzz::Fuzzer f(sig, name == std::string("category") ? kCatTele : kCwfTele, seed() + 4);
    for (int i = 0; i < 150; ++i) {
      fuzz::Typed t = f.any(18);
      NormalizeResult r = f.checker().normalize(t.x);
      REQUIRE_FALSE(r.exhausted);
      if (t.x->cls == ExprClass::Ctx) continue;
      Judgment j = check_derivation(sig, f.checker().trace_derivation(r.trace));
      CHECK(struct_eq(j.lhs, t.x));
      CHECK(struct_eq(j.rhs, r.nf));
    }
  }
}

TEST_CASE("interpretation is functorial") {
  Signature sig = build("monoid").sig;
  Model z3 = load_model(model_source("z3"));
  fuzz::Fuzzer f(sig, kMonoidTele, seed() + 5);
  Interpreter in(sig, z3);
  for (int i = 0; i < 300; ++i) {
    std::size_t a = f.random_level(), b = f.random_level(), c = f.random_level();
    auto g = f.sub(b, c, 8);
    auto d = f.sub(a, b, 8);
    if (!g || !d) continue;
    SubTable tg = in.sub_table(f.level(b), f.level(c), *g);
    SubTable td = in.sub_table(f.level(a), f.level(b), *d);
    CHECK(in.sub_table(f.level(a), f.level(c), mk::comp(*g, *d)) == cwf::compose(tg, td));
    CHECK(in.sub_table(f.level(b), f.level(c), mk::comp(*g, mk::id(f.level(b)))) == tg);
    CHECK(in.sub_table(f.level(a), f.level(a), mk::id(f.level(a))) == cwf::identity(in.ctx(f.level(a))));
  }
}

TEST_CASE("soundness in the category model") {
  Signature sig = build("category").sig;
  Model m = load_model(model_source("category-2"));
  REQUIRE(check_model(sig, m).ok());
  fuzz::Fuzzer f(sig, kCatTele, seed() + 6);
  Rewriter rw(signature_rule_set(sig));
  for (int i = 0; i < 200; ++i) {
    fuzz::Typed t = f.any(18);
    if (t.x->cls == ExprClass::Ctx) continue;
    Expr b = fuzz::random_rewrites(rw, f.rng(), t.x, 4);
    Derivation d = convert(f.checker(), t, t.x, b);
    std::string why;
    CHECK_MESSAGE(soundness_test(sig, m, d, &why), why);
  }
}

namespace {

// Reads a named monoid term directly from the model tables, with no cwf
// structure in between.
Value eval_named(const Model& m, const SurfaceTerm& t, const std::map<std::string, Value>& env) {
  auto v = env.find(t.head);
  if (v != env.end()) return v->second;
  Env args;
  for (const auto& a : t.args) args.push_back(eval_named(m, a, env));
  return m.ops.at(t.head).at(args);
}

}  // namespace

TEST_CASE("elaboration agrees with the named reading") {
  Signature sig = build("monoid").sig;
  for (const char* model : {"z2", "z3"}) {
    Model m = load_model(model_source(model));
    Interpreter in(sig, m);
    // the corpus laws
    for (const auto& d : sig.decls()) {
      if (d.kind != DeclKind::Equation) continue;
      NamedCtx c = elaborate_telescope(sig, *d.telescope);
      SurfaceDecl sd;
      for (const auto& decl : parse_gat(theory_source("monoid")).decls)
        if (decl.name == d.name) sd = decl;
      for (const Env& env : in.ctx(c.ctx)) {
        std::map<std::string, Value> named;
        for (std::size_t i = 0; i < env.size(); ++i) named[c.names[i]] = env[i];
        CHECK(in.tm(d.lhs, env) == eval_named(m, *sd.lhs, named));
        CHECK(in.tm(d.rhs, env) == eval_named(m, *sd.rhs, named));
      }
    }
    // random named terms in three variables
    NamedCtx c = elaborate_telescope(sig, parse_gat("sort t (x y z : M);").decls[0].tele);
    std::mt19937_64 rng(seed() + 7);
    std::function<SurfaceTerm(int)> gen = [&](int depth) {
      static const char* leaves[] = {"x", "y", "z", "e"};
      if (depth == 0 || rng() % 3 == 0) return SurfaceTerm{leaves[rng() % 4], {}, false, {}};
      return SurfaceTerm{"*", {gen(depth - 1), gen(depth - 1)}, true, {}};
    };
    for (int i = 0; i < 200; ++i) {
      SurfaceTerm st = gen(4);
      Expr x = elaborate_term(sig, c, st);
      for (const Env& env : in.ctx(c.ctx)) {
        std::map<std::string, Value> named{{"x", env[0]}, {"y", env[1]}, {"z", env[2]}};
        CHECK(in.tm(x, env) == eval_named(m, st, named));
      }
    }
  }
}
