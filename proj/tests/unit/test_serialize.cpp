#include <doctest.h>

#include <json.hpp>

#include "common.hpp"
#include "gat/checker.hpp"
#include "gat/corpus.hpp"
#include "gat/serialize.hpp"

using namespace gat;
using namespace gat::testing;

namespace {

ProofFile lunit_proof() {
  Signature s = build("monoid").sig;
  return {"monoid", "lunit", conv_tm(s, ctx_M(), M_p(), lunit_lhs(), qM()), {}};
}

}  // namespace

TEST_SUITE("serialize") {

TEST_CASE("expressions round-trip") {
  for (const Expr& x : {one(), ctx_MM(), lunit_lhs(), M_p(), mk::id(ctx_M())}) {
    CHECK(struct_eq(load_expr(dump_expr(x)), x));
  }
  // shared subtrees are stored once
  auto j = nlohmann::json::parse(dump_expr(mk::ext(ctx_M(), M())));
  CHECK(j["exprs"].size() == 4);
}

TEST_CASE("bad expression tables") {
  CHECK(error_of([] { load_expr(R"({"exprs":[["Ext",0,0]],"root":0})"); }) == ErrorKind::SyntaxError);
  CHECK(error_of([] { load_expr(R"({"exprs":[["Nope"]],"root":0})"); }) == ErrorKind::SyntaxError);
  CHECK(error_of([] { load_expr("not json"); }) == ErrorKind::SyntaxError);
}

TEST_CASE("derivation files round-trip and audit") {
  Signature s = build("monoid").sig;
  ProofFile p = lunit_proof();
  ProofFile back = read_proof(write_proof(p));
  CHECK(back.theory == "monoid");
  AuditResult r = audit(s, back);
  CHECK(r.ok);
  CHECK(r.nodes == derivation_size(p.derivation));
  CHECK(same_judgment(r.conclusion, check_derivation(s, p.derivation)));
}

TEST_CASE("audit rejects tampering") {
  Signature s = build("monoid").sig;
  auto j = nlohmann::json::parse(write_proof(lunit_proof()));
  // point the EqAxiom node's type at the context expression
  bool changed = false;
  for (auto& node : j["nodes"]) {
    if (node["rule"] == "EqAxiom" && !changed) {
      node["cls"] = node["ctx"];
      changed = true;
    }
  }
  REQUIRE(changed);
  AuditResult r = audit(s, read_proof(j.dump()));
  CHECK_FALSE(r.ok);
  CHECK_FALSE(r.error.empty());

  auto k = nlohmann::json::parse(write_proof(lunit_proof()));
  for (auto& node : k["nodes"])
    if (node["rule"] == "EqAxiom") node["symbol"] = "runit";
  CHECK_FALSE(audit(s, read_proof(k.dump())).ok);

  auto v = nlohmann::json::parse(write_proof(lunit_proof()));
  v["version"] = 99;
  CHECK(error_of([&] { read_proof(v.dump()); }) == ErrorKind::SyntaxError);
}

TEST_CASE("signatures dump") {
  auto j = nlohmann::json::parse(dump_signature(build("monoid").sig));
  CHECK(j["decls"].size() == 6);
  CHECK(j["decls"][3]["name"] == "lunit");
  CHECK(j["decls"][3]["orient"] == "ltr");
}

}
