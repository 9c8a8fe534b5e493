// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <json.hpp>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "common.hpp"
#include "fuzz.hpp"
#include "gat/corpus.hpp"
#include "gat/semantics.hpp"
#include "gat/serialize.hpp"
#include "gat/surface.hpp"

using namespace gat;
using namespace gat::testing;

namespace {

constexpr std::uint64_t kSeed = 0x5eed2026;
const char* kMonoidTele = "(x y z : M)";
const char* kCwfTele = "(Γ : ctx) (A : ty(Γ)) (Δ : ctx) (γ : hom(Δ, Γ)) (a : tm(Δ, tysub(A, γ)))";
const char* kCatTele = "(X Y : obj) (f g : hom(X, Y)) (h : hom(Y, Y))";

// Collects failures for one criterion; `detail` is printed after PASS.
struct Outcome {
  std::vector<std::string> failures;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 5) failures.push_back(what);
    else if (!ok) failures.push_back("");
  }
};

Derivation convert(Checker& ck, const fuzz::Typed& t, const Expr& a, const Expr& b) {
  switch (a->cls) {
    case ExprClass::Tm: return ck.conv_tm(t.ctx, t.cls, a, b);
    case ExprClass::Sub: return ck.conv_sub(t.ctx, t.cls, a, b);
    case ExprClass::Ty: return ck.conv_ty(t.ctx, a, b);
    case ExprClass::Ctx: break;
  }
  return ck.conv_ctx(a, b);
}

// The expression still checks at the presuppositions it started with.
bool checks_at(Checker& ck, const fuzz::Typed& t, const Expr& y) {
  try {
    switch (y->cls) {
      case ExprClass::Tm: ck.check_tm(t.ctx, y, t.cls); break;
      case ExprClass::Sub: ck.check_sub(t.ctx, y, t.cls); break;
      case ExprClass::Ty: ck.check_ty(t.ctx, y); break;
      case ExprClass::Ctx: ck.check_ctx(y); break;
    }
    return true;
  } catch (const Error&) {
    return false;
  }
}

Outcome monoid_pipeline() {
  Outcome o;
  std::vector<Signature> stages = monoid_stages();
  o.expect(stages.size() == 6, "expected six stages");
  for (std::size_t i = 0; i < stages.size(); ++i)
    o.expect(stages[i].size() == i + 1, "stage " + std::to_string(i + 1) + " has the wrong length");

  // Which declarations each one mentions, read off the source by hand.
  SurfaceFile file = parse_gat(theory_source("monoid"));
  const std::map<std::string, std::set<std::string>> uses = {
      {"M", {}},
      {"e", {"M"}},
      {"*", {"M"}},
      {"lunit", {"M", "e", "*"}},
      {"runit", {"M", "e", "*"}},
      {"assoc", {"M", "*"}},
  };
  std::array<int, 6> order{0, 1, 2, 3, 4, 5};
  int good = 0, bad = 0;
  do {
    SurfaceFile perm{file.theory, {}};
    std::set<std::string> seen;
    bool in_order = true;
    for (int i : order) {
      const SurfaceDecl& d = file.decls[i];
      for (const auto& u : uses.at(d.name)) in_order = in_order && seen.count(u);
      seen.insert(d.name);
      perm.decls.push_back(d);
    }
    std::optional<ErrorKind> err = error_of([&] { elaborate_all(perm); });
    std::string name;
    for (int i : order) name += file.decls[i].name + " ";
    if (in_order) {
      ++good;
      o.expect(!err, "in-order permutation failed: " + name);
    } else {
      ++bad;
      o.expect(err == ErrorKind::InvalidContext || err == ErrorKind::UnknownSymbol,
               "out-of-order permutation not rejected properly: " + name);
    }
  } while (std::next_permutation(order.begin(), order.end()));

  const Declaration& lunit = stages.at(5).decls().at(3);
  o.expect(lunit.name == "lunit", "fourth declaration is not lunit");
  o.expect(struct_eq(lunit.ctx, ctx_M()), "lunit context is not 1.M");
  o.expect(struct_eq(lunit.ty, M_p()), "lunit type is not M[p]");
  o.expect(struct_eq(lunit.lhs, lunit_lhs()), "lunit lhs differs: " + print_expr(lunit.lhs));
  o.expect(struct_eq(lunit.rhs, qM()), "lunit rhs is not q");
  o.detail = std::to_string(good) + " orders accepted, " + std::to_string(bad) + " rejected";
  return o;
}

Outcome schemas() {
  Outcome o;
  std::size_t total = 0;
  for (const char* name : {"monoid", "internal-cwf"}) {
    Signature sig = build(name).sig;
    fuzz::Fuzzer f(sig, name == std::string("monoid") ? kMonoidTele : kCwfTele, kSeed);
    for (Rule rule : conversion_rules()) {
      int got = 0;
      for (int attempt = 0; got < 200 && attempt < 4000; ++attempt) {
        auto s = fuzz::schema_instance(f, rule, 20);
        if (!s) continue;
        ++got;
        for (bool flipped : {false, true}) {
          std::string what = std::string(name) + " " + std::string(to_string(rule)) +
                             (flipped ? " (flipped): " : ": ") + print_expr(s->lhs);
          try {
            Derivation d = fuzz::convert_instance(f.checker(), *s, flipped);
            Judgment j = check_derivation(sig, d);
            o.expect(struct_eq(j.lhs, flipped ? s->rhs : s->lhs) && struct_eq(j.rhs, flipped ? s->lhs : s->rhs),
                     what + " concluded something else");
            ++total;
          } catch (const Error& e) {
            o.expect(false, what + ": " + e.what());
          }
        }
      }
      o.expect(got == 200, std::string(name) + " " + std::string(to_string(rule)) + ": only " +
                               std::to_string(got) + " instances");
    }
  }
  o.detail = std::to_string(conversion_rules().size()) + " schemas, " + std::to_string(total) +
             " checked conversions over monoid and internal-cwf";
  return o;
}

Outcome normalizer() {
  Outcome o;
  std::size_t terms = 0, confluent = 0;
  for (const char* name : {"monoid", "internal-cwf"}) {
    Signature sig = build(name).sig;
    fuzz::Fuzzer f(sig, name == std::string("monoid") ? kMonoidTele : kCwfTele, kSeed + 1);
    Rewriter rw(signature_rule_set(sig));
    for (int i = 0; i < 1000; ++i) {
      fuzz::Typed t = f.any(20);
      std::string what = std::string(name) + ": " + print_expr(t.x);
      NormalizeResult r = rw.normalize(t.x, 10000);
      o.expect(!r.exhausted, what + " did not terminate within 10000 steps");
      if (r.exhausted) continue;
      NormalizeResult again = rw.normalize(r.nf, 10000);
      o.expect(again.trace.steps.empty() && struct_eq(again.nf, r.nf), what + " normal form is not normal");
      o.expect(checks_at(f.checker(), t, r.nf), what + " normal form does not check at the same judgment");
      ++terms;
    }
  }

  // Every rewriting strategy on small monoid expressions ends in one place.
  Signature s6 = build("monoid").sig;
  fuzz::Fuzzer f(s6, kMonoidTele, kSeed + 2);
  for (RuleSet rules : {cwf_rule_set(s6), signature_rule_set(s6)}) {
    Rewriter rw(rules);
    for (int i = 0; i < 300; ++i) {
      fuzz::Typed t = f.any(15);
      bool complete = false;
      std::vector<Expr> nfs = rw.all_normal_forms(t.x, 20000, &complete);
      o.expect(complete, "search incomplete: " + print_expr(t.x));
      o.expect(nfs.size() == 1, std::to_string(nfs.size()) + " normal forms: " + print_expr(t.x));
      ++confluent;
    }
  }
  o.detail = std::to_string(terms) + " terms normalized, " + std::to_string(confluent) +
             " exhaustive strategy searches";
  return o;
}

Outcome soundness() {
  Outcome o;
  Signature s6 = build("monoid").sig;
  Model z2 = load_model(model_source("z2"));
  Model z3 = load_model(model_source("z3"));
  for (const Model* m : {&z2, &z3}) {
    ModelReport r = check_model(s6, *m);
    o.expect(r.equations.size() == 3 && r.passed() == 3, m->name + " fails check_model");
  }
  fuzz::Fuzzer f(s6, kMonoidTele, kSeed + 3);
  Rewriter rw(signature_rule_set(s6));
  int n = 0, tries = 0;
  while (n < 500 && tries < 5000) {
    ++tries;
    fuzz::Typed t = f.any(20);
    Expr y = fuzz::random_rewrites(rw, f.rng(), t.x, 1 + f.rng()() % 6);
    if (struct_eq(t.x, y)) continue;
    std::string what = print_expr(t.x) + " = " + print_expr(y);
    try {
      Derivation d = convert(f.checker(), t, t.x, y);
      check_derivation(s6, d);
      std::string why;
      o.expect(soundness_test(s6, z2, d, &why), "Z2: " + what + ": " + why);
      o.expect(soundness_test(s6, z3, d, &why), "Z3: " + what + ": " + why);
    } catch (const Error& e) {
      o.expect(false, what + ": " + e.what());
    }
    ++n;
  }
  o.expect(n == 500, "only " + std::to_string(n) + " equalities generated");
  o.detail = std::to_string(n) + " equalities with distinct sides, each sound in Z2 and Z3";
  return o;
}

Outcome preservation() {
  Outcome o;
  struct Case {
    const char* theory;
    const char* tele;
    std::vector<const char*> models;
  };
  std::size_t laws = 0;
  for (const Case& c : {Case{"monoid", kMonoidTele, {"z2", "z3"}}, Case{"category", kCatTele, {"category-2"}}}) {
    Signature sig = build(c.theory).sig;
    for (const char* model : c.models) {
      fuzz::Fuzzer f(sig, c.tele, kSeed + 4);
      std::vector<Expr> exprs;
      for (int i = 0; i < 500; ++i) exprs.push_back(f.any(20).x);
      Model m = load_model(model_source(model));
      PreservationReport r = preservation_test(sig, m, exprs);
      for (const auto& why : r.failures) o.expect(false, std::string(model) + ": " + why);
      o.expect(r.checked > 0, std::string(model) + ": nothing checked");
      laws += r.checked;
    }
  }
  o.detail = "500 expressions per model (z2, z3, category-2), " + std::to_string(laws) + " law instances";
  return o;
}

Outcome corpus() {
  Outcome o;
  const std::map<std::string, DeclCounts> audited = {
      {"category", {2, 2, 3}},
      {"internal-cwf", {4, 10, 13}},
      {"cwf-pi-n-u0", {4, 21, 30}},
  };
  for (const auto& [name, counts] : audited) {
    try {
      NamedExample ex = build(name);
      o.expect(count_decls(ex.sig) == counts, name + ": counts differ from the audited ones");
      o.expect(ex.counts == counts, name + ": recorded counts differ from the audited ones");
      if (name != "cwf-pi-n-u0") continue;

      const std::map<std::string, std::string> decoding = {
          {"T0_N0", "(Γ : ctx) |- T0(N0(Γ)) = N(Γ) : ty(Γ)"},
          {"T0_Pi0",
           "(Γ : ctx) (a : tm(Γ, U0(Γ))) (b : tm(ext(Γ, T0(a)), U0(ext(Γ, T0(a))))) "
           "|- T0(Pi0(a, b)) = Pi(T0(a), T0(b)) : ty(Γ)"},
      };
      Checker ck(ex.sig);
      for (const auto& [label, text] : decoding) {
        const Declaration* d = nullptr;
        for (const auto& decl : ex.sig.decls())
          if (decl.name == label) d = &decl;
        o.expect(d != nullptr, label + " missing");
        if (!d) continue;
        Goal g = parse_goal(ex.sig, text);
        o.expect(struct_eq(g.ctx.ctx, d->ctx) && struct_eq(g.lhs, d->lhs) && struct_eq(g.rhs, d->rhs) &&
                     struct_eq(g.ty, d->ty),
                 label + " is not the equation written out by hand");
        Judgment j = check_derivation(ex.sig, ck.conv_tm(d->ctx, d->ty, d->lhs, d->rhs));
        o.expect(j.form == Form::TmEq && struct_eq(j.cls, g.ty), label + " does not conclude at ty(Γ)");
      }
    } catch (const Error& e) {
      o.expect(false, name + ": " + e.what());
    }
  }
  o.detail = "category, internal-cwf, cwf-pi-n-u0; T0_N0 and T0_Pi0 convert at ty(Γ)";
  return o;
}

Outcome negatives() {
  Outcome o;
  Signature s6 = build("monoid").sig;

  ModelReport r = check_model(s6, load_model(model_source("z2-broken")));
  bool witnessed = false;
  for (const auto& eq : r.equations) witnessed = witnessed || (!eq.holds && eq.witness);
  o.expect(!r.ok() && witnessed, "broken Z2 passes or gives no witness");

  Expr mpp = mk::ty_subst(M_p(), mk::p(M_p()));
  Expr e_weak = mk::tm_subst(e(), mk::bang(ctx_MM()));
  o.expect(error_of([&] { conv_tm(s6, ctx_MM(), mpp, e_weak, star()); }) == ErrorKind::NormalFormsDiffer,
           "e against * did not give NormalFormsDiffer");

  // an audited lunit proof with its axiom node retyped
  auto proof = nlohmann::json::parse(
      write_proof({"monoid", "lunit", conv_tm(s6, ctx_M(), M_p(), lunit_lhs(), qM()), {}}));
  bool tampered = false;
  for (auto& node : proof["nodes"]) {
    if (node["rule"] == "EqAxiom") {
      node["cls"] = node["ctx"];
      tampered = true;
    }
  }
  o.expect(tampered, "no EqAxiom node to tamper with");
  AuditResult a = audit(s6, read_proof(proof.dump()));
  o.expect(!a.ok, "audit accepted a mistyped EqAxiom node");
  o.detail = "broken Z2 witnessed, e vs * differ, tampered proof rejected";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* title;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"monoid pipeline", monoid_pipeline},
      {"conversion schemas", schemas},
      {"normalizer", normalizer},
      {"soundness", soundness},
      {"preservation", preservation},
      {"corpus", corpus},
      {"negative controls", negatives},
  };
  auto start = std::chrono::steady_clock::now();
  int failed = 0;
  int n = 0;
  for (const auto& c : criteria) {
    ++n;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.failures.push_back(std::string("uncaught: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.failures.empty()) {
      std::printf("criterion %d (%s): PASS [%.1fs] %s\n", n, c.title, secs, o.detail.c_str());
    } else {
      ++failed;
      std::printf("criterion %d (%s): FAIL [%.1fs] %zu failures\n", n, c.title, secs, o.failures.size());
      for (const auto& f : o.failures)
        if (!f.empty()) std::printf("    %s\n", f.c_str());
    }
    std::fflush(stdout);
  }
  double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of %d criteria passed in %.1fs\n", n - failed, n, total);
  return failed == 0 ? 0 : 1;
}
