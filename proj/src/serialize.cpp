#include "gat/serialize.hpp"

#include <json.hpp>
#include <unordered_map>

#include "gat/error.hpp"

namespace gat {

using json = nlohmann::json;

namespace {

constexpr int kVersion = 1;

Kind kind_from_string(std::string_view s) {
  for (int k = 0; k <= static_cast<int>(Kind::Meta); ++k) {
    if (to_string(static_cast<Kind>(k)) == s) return static_cast<Kind>(k);
  }
  fail(ErrorKind::SyntaxError, "unknown expression tag '" + std::string(s) + "'");
}

Form form_from_string(std::string_view s) {
  for (int f = 0; f <= static_cast<int>(Form::TmEq); ++f) {
    if (to_string(static_cast<Form>(f)) == s) return static_cast<Form>(f);
  }
  fail(ErrorKind::SyntaxError, "unknown judgment form '" + std::string(s) + "'");
}

// Expressions in post-order; each row refers only to earlier rows.
class ExprTable {
 public:
  int add(const Expr& x) {
    if (!x) return -1;
    auto it = index_.find(x.get());
    if (it != index_.end()) return it->second;
    if (x->kind == Kind::Meta) fail(ErrorKind::IllFormed, "pattern variables cannot be serialized");
    json row = json::array({std::string(to_string(x->kind))});
    if (x->kind == Kind::SortApp || x->kind == Kind::OpApp) row.push_back(x->name);
    for (const auto& k : x->kids) row.push_back(add(k));
    int id = static_cast<int>(rows_.size());
    rows_.push_back(std::move(row));
    index_.emplace(x.get(), id);
    keep_.push_back(x);
    return id;
  }
  json rows() const { return rows_; }

 private:
  json rows_ = json::array();
  std::unordered_map<const Node*, int> index_;
  std::vector<Expr> keep_;
};

std::vector<Expr> read_exprs(const json& rows) {
  std::vector<Expr> out;
  out.reserve(rows.size());
  auto kid = [&](const json& row, std::size_t i) -> Expr {
    if (i >= row.size()) fail(ErrorKind::SyntaxError, "expression row " + row.dump() + " is missing a child");
    int k = row[i].get<int>();
    if (k < 0 || static_cast<std::size_t>(k) >= out.size())
      fail(ErrorKind::SyntaxError, "expression row " + row.dump() + " refers forward");
    return out[k];
  };
  for (const auto& row : rows) {
    if (!row.is_array() || row.empty()) fail(ErrorKind::SyntaxError, "bad expression row " + row.dump());
    Kind kind = kind_from_string(row[0].get<std::string>());
    Expr x;
    switch (kind) {
      case Kind::Empty: x = mk::empty(); break;
      case Kind::Ext: x = mk::ext(kid(row, 1), kid(row, 2)); break;
      case Kind::Comp: x = mk::comp(kid(row, 1), kid(row, 2)); break;
      case Kind::Id: x = mk::id(kid(row, 1)); break;
      case Kind::Bang: x = mk::bang(kid(row, 1)); break;
      case Kind::P: x = mk::p(kid(row, 1)); break;
      case Kind::Pair: x = mk::pair(kid(row, 1), kid(row, 2), kid(row, 3)); break;
      case Kind::TySubst: x = mk::ty_subst(kid(row, 1), kid(row, 2)); break;
      case Kind::TmSubst: x = mk::tm_subst(kid(row, 1), kid(row, 2)); break;
      case Kind::Q: x = mk::q(kid(row, 1)); break;
      case Kind::SortApp: x = mk::sort(row.at(1).get<std::string>()); break;
      case Kind::OpApp: x = mk::op(row.at(1).get<std::string>()); break;
      case Kind::Meta: fail(ErrorKind::SyntaxError, "pattern variables cannot be deserialized");
    }
    out.push_back(std::move(x));
  }
  return out;
}

template <class F>
auto wrap_json(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    fail(ErrorKind::SyntaxError, std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string dump_expr(const Expr& x) {
  ExprTable t;
  int root = t.add(x);
  return json{{"exprs", t.rows()}, {"root", root}}.dump();
}

Expr load_expr(std::string_view text) {
  return wrap_json("expression", [&] {
    json j = json::parse(text);
    auto exprs = read_exprs(j.at("exprs"));
    int root = j.at("root").get<int>();
    if (root < 0 || static_cast<std::size_t>(root) >= exprs.size()) fail(ErrorKind::SyntaxError, "bad root");
    return exprs[root];
  });
}

std::string write_proof(const ProofFile& proof) {
  ExprTable exprs;
  json nodes = json::array();
  std::unordered_map<const DerivationNode*, int> index;
  // Iterative post-order: derivations from long conversions are deep.
  std::vector<std::pair<const DerivationNode*, bool>> stack{{proof.derivation.get(), false}};
  while (!stack.empty()) {
    auto [n, expanded] = stack.back();
    stack.pop_back();
    if (index.count(n)) continue;
    if (!expanded) {
      stack.push_back({n, true});
      for (auto it = n->premises.rbegin(); it != n->premises.rend(); ++it)
        if (!index.count(it->get())) stack.push_back({it->get(), false});
      continue;
    }
    json prem = json::array();
    for (const auto& p : n->premises) prem.push_back(index.at(p.get()));
    const Judgment& j = n->concl;
    json row = {{"rule", std::string(to_string(n->rule))},
                {"form", std::string(to_string(j.form))},
                {"ctx", exprs.add(j.ctx)},
                {"lhs", exprs.add(j.lhs)},
                {"rhs", exprs.add(j.rhs)},
                {"cls", exprs.add(j.cls)},
                {"premises", prem}};
    if (!n->symbol.empty()) row["symbol"] = n->symbol;
    index.emplace(n, static_cast<int>(nodes.size()));
    nodes.push_back(std::move(row));
  }
  json out = {{"format", "gatpf"},
              {"version", kVersion},
              {"theory", proof.theory},
              {"goal", proof.goal},
              {"exprs", exprs.rows()},
              {"nodes", nodes},
              {"root", static_cast<int>(nodes.size()) - 1}};
  if (!proof.trace.empty()) out["trace"] = proof.trace;
  return out.dump(1);
}

ProofFile read_proof(std::string_view text) {
  return wrap_json("derivation file", [&] {
    json j = json::parse(text);
    if (j.value("format", "") != "gatpf") fail(ErrorKind::SyntaxError, "not a derivation file");
    if (j.value("version", 0) != kVersion)
      fail(ErrorKind::SyntaxError, "unsupported derivation file version " + std::to_string(j.value("version", 0)));
    ProofFile p;
    p.theory = j.value("theory", "");
    p.goal = j.value("goal", "");
    if (j.contains("trace")) p.trace = j["trace"].get<std::vector<std::string>>();
    auto exprs = read_exprs(j.at("exprs"));
    auto ex = [&](const json& row, const char* key) -> Expr {
      int k = row.value(key, -1);
      if (k < 0) return nullptr;
      if (static_cast<std::size_t>(k) >= exprs.size()) fail(ErrorKind::SyntaxError, "bad expression index");
      return exprs[k];
    };
    std::vector<Derivation> nodes;
    for (const auto& row : j.at("nodes")) {
      auto rule = rule_from_string(row.at("rule").get<std::string>());
      if (!rule) fail(ErrorKind::SyntaxError, "unknown rule '" + row.at("rule").get<std::string>() + "'");
      Judgment concl{form_from_string(row.at("form").get<std::string>()), ex(row, "ctx"), ex(row, "lhs"),
                     ex(row, "rhs"), ex(row, "cls")};
      std::vector<Derivation> prem;
      for (const auto& k : row.at("premises")) {
        int i = k.get<int>();
        if (i < 0 || static_cast<std::size_t>(i) >= nodes.size())
          fail(ErrorKind::SyntaxError, "derivation node refers forward");
        prem.push_back(nodes[i]);
      }
      nodes.push_back(make_derivation(std::move(concl), *rule, std::move(prem), row.value("symbol", "")));
    }
    int root = j.at("root").get<int>();
    if (root < 0 || static_cast<std::size_t>(root) >= nodes.size()) fail(ErrorKind::SyntaxError, "bad root node");
    p.derivation = nodes[root];
    return p;
  });
}

AuditResult audit(const Signature& sig, const ProofFile& proof) {
  AuditResult r;
  r.nodes = derivation_size(proof.derivation);
  try {
    r.conclusion = check_derivation(sig, proof.derivation);
    r.ok = true;
  } catch (const Error& e) {
    r.error = e.what();
  }
  return r;
}

std::string dump_signature(const Signature& sig) {
  ExprTable exprs;
  json decls = json::array();
  for (const auto& d : sig.decls()) {
    json row = {{"kind", std::string(to_string(d.kind))}, {"name", d.name}, {"ctx", exprs.add(d.ctx)}};
    if (d.ty) row["ty"] = exprs.add(d.ty);
    if (d.kind == DeclKind::Equation) {
      row["lhs"] = exprs.add(d.lhs);
      row["rhs"] = exprs.add(d.rhs);
      row["orient"] = std::string(to_string(d.orient));
    }
    decls.push_back(std::move(row));
  }
  return json{{"exprs", exprs.rows()}, {"decls", decls}}.dump(1);
}

}  // namespace gat
