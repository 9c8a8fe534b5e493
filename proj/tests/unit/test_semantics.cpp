#include <doctest.h>

#include "common.hpp"
#include "gat/checker.hpp"
#include "gat/corpus.hpp"
#include "gat/semantics.hpp"

using namespace gat;
using namespace gat::testing;

namespace {

Signature monoid() { return build("monoid").sig; }
Model z2() { return load_model(model_source("z2")); }

// Every map from a finite env set into another, as substitution tables.
std::vector<SubTable> all_maps(const EnvSet& src, const EnvSet& tgt) {
  std::vector<SubTable> out;
  std::vector<std::size_t> pick(src.size(), 0);
  if (tgt.empty() && !src.empty()) return out;
  while (true) {
    SubTable t{src, tgt, {}};
    for (std::size_t i = 0; i < src.size(); ++i) t.map[src[i]] = tgt[pick[i]];
    out.push_back(std::move(t));
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == tgt.size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return out;
}

}  // namespace

TEST_SUITE("semantics") {

TEST_CASE("interpret e * e in Z2") {
  Signature s = monoid();
  Model m = z2();
  Expr x = mul(one(), e(), e());
  auto v = std::get<TmTable>(interpret(s, m, x));
  CHECK(v.value == std::map<Env, Value>{{{}, 0}});
}

TEST_CASE("interpret q is the projection") {
  Signature s = monoid();
  Model m = z2();
  auto v = std::get<TmTable>(interpret(s, m, qM()));
  CHECK(v.value == std::map<Env, Value>{{{0}, 0}, {{1}, 1}});
  auto lhs = std::get<TmTable>(interpret(s, m, lunit_lhs()));
  CHECK(lhs == v);
}

TEST_CASE("check_model") {
  Signature s = monoid();
  ModelReport ok = check_model(s, z2());
  CHECK(ok.ok());
  CHECK(ok.passed() == 3);
  CHECK(check_model(s, load_model(model_source("z3"))).ok());

  ModelReport bad = check_model(s, load_model(model_source("z2-broken")));
  CHECK(bad.passed() == 1);
  REQUIRE(bad.equations.size() == 3);
  const EquationResult& lunit = bad.equations[0];
  CHECK(lunit.label == "lunit");
  CHECK_FALSE(lunit.holds);
  REQUIRE(lunit.witness);
  CHECK(*lunit.witness == Env{0});
  CHECK(lunit.lhs == 1);
  CHECK(lunit.rhs == 0);

  CHECK(check_model(empty_signature(), Model{}).ok());
  CHECK(check_model(build("category").sig, load_model(model_source("category-2"))).ok());
}

TEST_CASE("shape errors") {
  Signature s = monoid();
  Model m = z2();
  m.ops.erase("e");
  CHECK(error_of([&] { check_model(s, m); }) == ErrorKind::ShapeMismatch);
  Model n = z2();
  n.ops["e"][{}] = 7;  // outside the fiber
  CHECK(error_of([&] { check_model(s, n); }) == ErrorKind::ShapeMismatch);
  CHECK(error_of([] { load_model("{\"sorts\": 3}"); }) == ErrorKind::ShapeMismatch);
}

TEST_CASE("model files round-trip") {
  Model m = z2();
  Model back = load_model(dump_model(m));
  CHECK(back.sorts == m.sorts);
  CHECK(back.ops == m.ops);
}

TEST_CASE("ill-typed input is undefined") {
  Signature s = monoid();
  Model m = z2();
  Interpreter in(s, m);
  // q_M read in the empty environment
  CHECK(error_of([&] { in.tm(qM(), {}); }) == ErrorKind::Undefined);
}

TEST_CASE("soundness_test") {
  Signature s = monoid();
  Model m = z2();
  Checker ck(s);
  CHECK(soundness_test(s, m, ck.conv_tm(ctx_M(), M_p(), lunit_lhs(), qM())));
  CHECK(soundness_test(s, m, ck.conv_tm(one(), M(), e(), e())));
}

TEST_CASE("interpretation against hand-made tables") {
  Signature s = monoid();
  Model m = z2();
  Interpreter in(s, m);
  CHECK(in.ctx(ctx_M()) == EnvSet{{0}, {1}});
  CHECK(in.ctx(ctx_MM()) == EnvSet{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  TyTable mp = in.ty_table(ctx_M(), M_p());
  CHECK(mp.fiber == std::map<Env, std::vector<Value>>{{{0}, {0, 1}}, {{1}, {0, 1}}});
  SubTable pe = in.sub_table(one(), ctx_M(), arg1(one(), e()));
  CHECK(pe.map == std::map<Env, Env>{{{}, {0}}});
  TyTable big = in.ty_table(one(), M());
  CHECK(cwf::comprehension(cwf::terminal(), big) == in.ctx(ctx_M()));
  CHECK(cwf::reindex(big, in.sub_table(ctx_M(), one(), pM())) == mp);
}

TEST_CASE("preservation_test on the corpus declarations") {
  Signature s = monoid();
  std::vector<Expr> xs;
  for (const auto& d : s.decls())
    for (const Expr& x : {d.ctx, d.ty, d.lhs, d.rhs})
      if (x) xs.push_back(x);
  PreservationReport r = preservation_test(s, z2(), xs);
  CHECK(r.ok());
  CHECK(r.checked > xs.size());
}

TEST_CASE("comprehension is universal in small cwfs") {
  // Γ = 1.M in Z3, A = M[p]; every δ : Γ → Γ.A factors through ⟨p∘δ, q[δ]⟩.
  Signature s = monoid();
  Model m = load_model(model_source("z3"));
  Interpreter in(s, m);
  EnvSet g = in.ctx(ctx_M());
  TyTable a = in.ty_table(ctx_M(), M_p());
  EnvSet ga = cwf::comprehension(g, a);
  SubTable p = cwf::proj_p(g, a);
  TmTable q = cwf::proj_q(g, a);
  std::size_t n = 0;
  for (const SubTable& d : all_maps(g, ga)) {
    TmTable qd = cwf::reindex(q, d);
    SubTable back = cwf::pairing(cwf::compose(p, d), qd, a);
    CHECK(back == d);
    // p∘⟨γ,a⟩ = γ and q[⟨γ,a⟩] = a, with γ = p∘δ, a = q[δ]
    CHECK(cwf::compose(p, back) == cwf::compose(p, d));
    CHECK(cwf::reindex(q, back) == qd);
    // identity laws
    CHECK(cwf::compose(cwf::identity(ga), d) == d);
    CHECK(cwf::compose(d, cwf::identity(g)) == d);
    ++n;
  }
  CHECK(n == 729);  // 9^3
}

}
