#include "gat/semantics.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gat/presup.hpp"

namespace gat {

namespace {

using json = nlohmann::json;

[[noreturn]] void undefined(const Expr& at, const std::string& why) {
  fail(ErrorKind::Undefined, "undefined at " + print_expr(at, PrintMode::Compact) + ": " + why);
}

[[noreturn]] void table_undefined(const std::string& why) { fail(ErrorKind::Undefined, why); }

Env snoc(Env env, Value v) {
  env.push_back(v);
  return env;
}

template <class Map>
const typename Map::mapped_type& at_env(const Map& m, const Env& env, const char* what) {
  auto it = m.find(env);
  if (it == m.end()) table_undefined(std::string(what) + " has no entry at " + print_env(env));
  return it->second;
}

bool contains(const std::vector<Value>& xs, Value v) {
  for (Value x : xs)
    if (x == v) return true;
  return false;
}

}  // namespace

std::string print_env(const Env& env) {
  std::string s = env.empty() ? "•" : "(•";
  for (Value v : env) s += "," + std::to_string(v);
  if (!env.empty()) s += ")";
  return s;
}

// ---------------------------------------------------------------------------
// table-level cwf

namespace cwf {

EnvSet terminal() { return {Env{}}; }

EnvSet comprehension(const EnvSet& ctx, const TyTable& ty) {
  if (ty.ctx != ctx) table_undefined("comprehension: type lives over a different context");
  EnvSet out;
  for (const Env& rho : ctx)
    for (Value v : at_env(ty.fiber, rho, "type")) out.push_back(snoc(rho, v));
  return out;
}

SubTable identity(const EnvSet& ctx) {
  SubTable s{ctx, ctx, {}};
  for (const Env& rho : ctx) s.map[rho] = rho;
  return s;
}

SubTable compose(const SubTable& f, const SubTable& g) {
  if (g.tgt != f.src) table_undefined("compose: target of the right map is not the source of the left");
  SubTable s{g.src, f.tgt, {}};
  for (const Env& rho : g.src) s.map[rho] = at_env(f.map, at_env(g.map, rho, "substitution"), "substitution");
  return s;
}

SubTable bang(const EnvSet& ctx) {
  SubTable s{ctx, terminal(), {}};
  for (const Env& rho : ctx) s.map[rho] = Env{};
  return s;
}

SubTable proj_p(const EnvSet& ctx, const TyTable& ty) {
  SubTable s{comprehension(ctx, ty), ctx, {}};
  for (const Env& rho : ctx)
    for (Value v : ty.fiber.at(rho)) s.map[snoc(rho, v)] = rho;
  return s;
}

TmTable proj_q(const EnvSet& ctx, const TyTable& ty) {
  TmTable t{comprehension(ctx, ty), {}};
  for (const Env& rho : ctx)
    for (Value v : ty.fiber.at(rho)) t.value[snoc(rho, v)] = v;
  return t;
}

SubTable pairing(const SubTable& sub, const TmTable& tm, const TyTable& ty) {
  if (tm.ctx != sub.src) table_undefined("pairing: term and substitution have different sources");
  SubTable s{sub.src, comprehension(sub.tgt, ty), {}};
  for (const Env& rho : sub.src) {
    const Env& img = at_env(sub.map, rho, "substitution");
    Value v = at_env(tm.value, rho, "term");
    if (!contains(at_env(ty.fiber, img, "type"), v)) table_undefined("pairing: value outside the fiber at " + print_env(rho));
    s.map[rho] = snoc(img, v);
  }
  return s;
}

TyTable reindex(const TyTable& ty, const SubTable& sub) {
  if (sub.tgt != ty.ctx) table_undefined("reindex: substitution does not land in the type's context");
  TyTable out{sub.src, {}};
  for (const Env& rho : sub.src) out.fiber[rho] = at_env(ty.fiber, at_env(sub.map, rho, "substitution"), "type");
  return out;
}

TmTable reindex(const TmTable& tm, const SubTable& sub) {
  if (sub.tgt != tm.ctx) table_undefined("reindex: substitution does not land in the term's context");
  TmTable out{sub.src, {}};
  for (const Env& rho : sub.src) out.value[rho] = at_env(tm.value, at_env(sub.map, rho, "substitution"), "term");
  return out;
}

}  // namespace cwf

// ---------------------------------------------------------------------------
// model files

namespace {

Env env_from(const json& j) {
  if (!j.is_array()) fail(ErrorKind::ShapeMismatch, "environment must be an array");
  Env env;
  for (const auto& v : j) env.push_back(v.get<Value>());
  return env;
}

json env_to(const Env& env) { return json(env); }

}  // namespace

Model load_model(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::SyntaxError, std::string("model: ") + e.what());
  }
  try {
    Model m;
    m.name = j.value("name", "");
    // Sorts: a bare list is the fiber over the empty environment; otherwise a
    // list of {"env": [...], "fiber": [...]}.
    if (j.contains("sorts")) {
      for (const auto& [name, v] : j["sorts"].items()) {
        auto& table = m.sorts[name];
        if (v.is_array() && (v.empty() || !v[0].is_object())) {
          table[Env{}] = v.get<std::vector<Value>>();
        } else {
          for (const auto& row : v) table[env_from(row.at("env"))] = row.at("fiber").get<std::vector<Value>>();
        }
      }
    }
    // Operators: a bare number over the empty environment, or rows of
    // {"env": [...], "value": v}.
    if (j.contains("ops")) {
      for (const auto& [name, v] : j["ops"].items()) {
        auto& table = m.ops[name];
        if (v.is_number_integer()) {
          table[Env{}] = v.get<Value>();
        } else {
          for (const auto& row : v) table[env_from(row.at("env"))] = row.at("value").get<Value>();
        }
      }
    }
    return m;
  } catch (const json::exception& e) {
    fail(ErrorKind::ShapeMismatch, std::string("model: ") + e.what());
  }
}

Model load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_model(ss.str());
}

std::string dump_model(const Model& m) {
  json j = json::object();
  if (!m.name.empty()) j["name"] = m.name;
  json sorts = json::object();
  for (const auto& [name, table] : m.sorts) {
    json rows = json::array();
    for (const auto& [env, fib] : table) rows.push_back({{"env", env_to(env)}, {"fiber", fib}});
    sorts[name] = rows;
  }
  json ops = json::object();
  for (const auto& [name, table] : m.ops) {
    json rows = json::array();
    for (const auto& [env, v] : table) rows.push_back({{"env", env_to(env)}, {"value", v}});
    ops[name] = rows;
  }
  j["sorts"] = sorts;
  j["ops"] = ops;
  return j.dump(2);
}

// ---------------------------------------------------------------------------
// pointwise interpreter

const Interpreter::CtxInfo& Interpreter::ctx_info(const Expr& gamma) {
  auto it = ctx_cache_.find(gamma);
  if (it != ctx_cache_.end()) return it->second;
  CtxInfo info;
  switch (gamma->kind) {
    case Kind::Empty:
      info.envs = cwf::terminal();
      break;
    case Kind::Ext: {
      EnvSet base = ctx_info(gamma->kid(0)).envs;
      for (const Env& rho : base)
        for (Value v : fiber(gamma->kid(1), rho)) info.envs.push_back(snoc(rho, v));
      break;
    }
    default:
      undefined(gamma, "not a context");
  }
  info.members.insert(info.envs.begin(), info.envs.end());
  return ctx_cache_.emplace(gamma, std::move(info)).first->second;
}

void Interpreter::require_member(const Expr& gamma, const Env& env, const Expr& at) {
  if (!ctx_info(gamma).members.count(env)) undefined(at, "environment " + print_env(env) + " is not in " + print_expr(gamma));
}

EnvSet Interpreter::ctx(const Expr& gamma) { return ctx_info(gamma).envs; }

std::vector<Value> Interpreter::fiber(const Expr& ty, const Env& env) {
  switch (ty->kind) {
    case Kind::SortApp: {
      auto it = model_.sorts.find(ty->name);
      if (it == model_.sorts.end()) undefined(ty, "sort has no table");
      auto row = it->second.find(env);
      if (row == it->second.end()) undefined(ty, "no fiber at " + print_env(env));
      return row->second;
    }
    case Kind::TySubst:
      return fiber(ty->kid(0), sub(ty->kid(1), env));
    default:
      undefined(ty, "not a type");
  }
}

Env Interpreter::sub(const Expr& s, const Env& env) {
  switch (s->kind) {
    case Kind::Id:
      require_member(s->kid(0), env, s);
      return env;
    case Kind::Bang:
      require_member(s->kid(0), env, s);
      return Env{};
    case Kind::Comp:
      return sub(s->kid(0), sub(s->kid(1), env));
    case Kind::P: {
      const Expr& a = s->kid(0);
      require_member(mk::ext(ctx_of(sig_, a), a), env, s);
      return Env(env.begin(), env.end() - 1);
    }
    case Kind::Pair: {
      Env img = sub(s->kid(0), env);
      Value v = tm(s->kid(1), env);
      if (!contains(fiber(s->kid(2), img), v)) undefined(s, "value " + std::to_string(v) + " is outside the fiber");
      return snoc(std::move(img), v);
    }
    default:
      undefined(s, "not a substitution");
  }
}

Value Interpreter::tm(const Expr& a, const Env& env) {
  switch (a->kind) {
    case Kind::OpApp: {
      auto it = model_.ops.find(a->name);
      if (it == model_.ops.end()) undefined(a, "operator has no table");
      auto row = it->second.find(env);
      if (row == it->second.end()) undefined(a, "no value at " + print_env(env));
      return row->second;
    }
    case Kind::Q: {
      const Expr& ty = a->kid(0);
      require_member(mk::ext(ctx_of(sig_, ty), ty), env, a);
      return env.back();
    }
    case Kind::TmSubst:
      return tm(a->kid(0), sub(a->kid(1), env));
    default:
      undefined(a, "not a term");
  }
}

TyTable Interpreter::ty_table(const Expr& ctx, const Expr& ty) {
  TyTable t{this->ctx(ctx), {}};
  for (const Env& rho : t.ctx) t.fiber[rho] = fiber(ty, rho);
  return t;
}

TmTable Interpreter::tm_table(const Expr& ctx, const Expr& a) {
  TmTable t{this->ctx(ctx), {}};
  for (const Env& rho : t.ctx) t.value[rho] = tm(a, rho);
  return t;
}

SubTable Interpreter::sub_table(const Expr& src, const Expr& target, const Expr& s) {
  SubTable t{ctx(src), ctx(target), {}};
  for (const Env& rho : t.src) {
    Env img = sub(s, rho);
    require_member(target, img, s);
    t.map[rho] = std::move(img);
  }
  return t;
}

SemanticValue interpret(const Signature& sig, const Model& model, const Expr& x, const Expr& ctx) {
  Interpreter in(sig, model);
  switch (x->cls) {
    case ExprClass::Ctx:
      return in.ctx(x);
    case ExprClass::Ty:
      return in.ty_table(ctx ? ctx : ctx_of(sig, x), x);
    case ExprClass::Sub:
      return in.sub_table(ctx ? ctx : src(sig, x), tgt(sig, x), x);
    case ExprClass::Tm: {
      Expr g = ctx ? ctx : ctx_of(sig, x);
      TmTable t = in.tm_table(g, x);
      Expr ty = type_of(sig, x);
      for (const auto& [rho, v] : t.value)
        if (!contains(in.fiber(ty, rho), v)) undefined(x, "value outside its type at " + print_env(rho));
      return t;
    }
  }
  return EnvSet{};
}

std::string print_value(const SemanticValue& v) {
  std::ostringstream os;
  auto list = [](const std::vector<Value>& xs) {
    std::string s = "{";
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
    return s + "}";
  };
  if (auto* envs = std::get_if<EnvSet>(&v)) {
    os << "{";
    for (std::size_t i = 0; i < envs->size(); ++i) os << (i ? ", " : "") << print_env((*envs)[i]);
    os << "}";
  } else if (auto* ty = std::get_if<TyTable>(&v)) {
    bool first = true;
    for (const auto& [rho, fib] : ty->fiber) os << (first ? "" : "; ") << print_env(rho) << " ↦ " << list(fib), first = false;
  } else if (auto* sub = std::get_if<SubTable>(&v)) {
    bool first = true;
    for (const auto& [rho, img] : sub->map) os << (first ? "" : "; ") << print_env(rho) << " ↦ " << print_env(img), first = false;
  } else if (auto* tm = std::get_if<TmTable>(&v)) {
    bool first = true;
    for (const auto& [rho, val] : tm->value) os << (first ? "" : "; ") << print_env(rho) << " ↦ " << val, first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// model checking

std::size_t ModelReport::passed() const {
  std::size_t n = 0;
  for (const auto& e : equations) n += e.holds;
  return n;
}

ModelReport check_model(const Signature& sig, const Model& model) {
  Interpreter in(sig, model);
  auto shape = [](const std::string& what) -> void { fail(ErrorKind::ShapeMismatch, what); };

  for (const auto& [name, table] : model.sorts) {
    auto d = sig.find(name);
    if (!d || d->kind != DeclKind::Sort) shape("model interprets '" + name + "', which is not a declared sort");
  }
  for (const auto& [name, table] : model.ops) {
    auto d = sig.find(name);
    if (!d || d->kind != DeclKind::Operator) shape("model interprets '" + name + "', which is not a declared operator");
  }

  ModelReport report;
  for (const auto& d : sig.decls()) {
    EnvSet envs;
    try {
      envs = in.ctx(d.ctx);
    } catch (const Error& e) {
      shape("context of '" + d.name + "': " + e.what());
    }
    switch (d.kind) {
      case DeclKind::Sort: {
        auto it = model.sorts.find(d.name);
        if (it == model.sorts.end()) shape("sort '" + d.name + "' has no table");
        if (it->second.size() != envs.size()) shape("sort '" + d.name + "' has entries outside its context");
        for (const Env& rho : envs)
          if (!it->second.count(rho)) shape("sort '" + d.name + "' has no fiber at " + print_env(rho));
        break;
      }
      case DeclKind::Operator: {
        auto it = model.ops.find(d.name);
        if (it == model.ops.end()) shape("operator '" + d.name + "' has no table");
        if (it->second.size() != envs.size()) shape("operator '" + d.name + "' has entries outside its context");
        for (const Env& rho : envs) {
          auto row = it->second.find(rho);
          if (row == it->second.end()) shape("operator '" + d.name + "' has no value at " + print_env(rho));
          std::vector<Value> fib;
          try {
            fib = in.fiber(d.ty, rho);
          } catch (const Error& e) {
            shape("type of '" + d.name + "': " + e.what());
          }
          if (!contains(fib, row->second))
            shape("operator '" + d.name + "' at " + print_env(rho) + " is outside its type");
        }
        break;
      }
      case DeclKind::Equation: {
        EquationResult r;
        r.label = d.name;
        for (const Env& rho : envs) {
          if (d.lhs->cls == ExprClass::Tm) {
            r.lhs = in.tm(d.lhs, rho);
            r.rhs = in.tm(d.rhs, rho);
            if (r.lhs != r.rhs) {
              r.holds = false;
            }
          } else if (in.fiber(d.lhs, rho) != in.fiber(d.rhs, rho)) {
            r.holds = false;
          }
          if (!r.holds) {
            r.witness = rho;
            break;
          }
        }
        report.equations.push_back(std::move(r));
        break;
      }
    }
  }
  return report;
}

bool soundness_test(const Signature& sig, const Model& model, const Derivation& d, std::string* detail) {
  const Judgment& j = d->concl;
  Interpreter in(sig, model);
  auto note = [&](const std::string& s) {
    if (detail) *detail = s;
    return false;
  };
  try {
    switch (j.form) {
      case Form::Ctx:
        in.ctx(j.lhs);
        return true;
      case Form::Ty:
        in.ty_table(j.ctx, j.lhs);
        return true;
      case Form::Sub:
        in.sub_table(j.ctx, j.cls, j.lhs);
        return true;
      case Form::Tm:
        in.tm_table(j.ctx, j.lhs);
        return true;
      case Form::CtxEq:
        if (in.ctx(j.lhs) != in.ctx(j.rhs)) return note("contexts interpret differently");
        return true;
      case Form::TyEq: {
        TyTable l = in.ty_table(j.ctx, j.lhs), r = in.ty_table(j.ctx, j.rhs);
        if (l != r) return note(print_value(l) + " vs " + print_value(r));
        return true;
      }
      case Form::SubEq: {
        SubTable l = in.sub_table(j.ctx, j.cls, j.lhs), r = in.sub_table(j.ctx, j.cls, j.rhs);
        if (l != r) return note(print_value(l) + " vs " + print_value(r));
        return true;
      }
      case Form::TmEq: {
        TmTable l = in.tm_table(j.ctx, j.lhs), r = in.tm_table(j.ctx, j.rhs);
        if (l != r) return note(print_value(l) + " vs " + print_value(r));
        return true;
      }
    }
  } catch (const Error& e) {
    return note(e.what());
  }
  return true;
}

PreservationReport preservation_test(const Signature& sig, const Model& model, const std::vector<Expr>& exprs) {
  PreservationReport rep;
  Interpreter in(sig, model);

  auto sort_table = [&](const Expr& s) {
    const auto& d = sig.lookup(s->name);
    TyTable t{in.ctx(d.ctx), {}};
    for (const auto& [rho, fib] : model.sorts.at(s->name)) t.fiber[rho] = fib;
    return t;
  };
  auto op_table = [&](const Expr& f) {
    const auto& d = sig.lookup(f->name);
    TmTable t{in.ctx(d.ctx), {}};
    for (const auto& [rho, v] : model.ops.at(f->name)) t.value[rho] = v;
    return t;
  };

  auto law = [&](const Expr& n) -> bool {
    switch (n->kind) {
      case Kind::Empty:
        return in.ctx(n) == cwf::terminal();
      case Kind::Ext:
        return in.ctx(n) == cwf::comprehension(in.ctx(n->kid(0)), in.ty_table(n->kid(0), n->kid(1)));
      case Kind::SortApp:
        return in.ty_table(ctx_of(sig, n), n) == sort_table(n);
      case Kind::TySubst: {
        const Expr &a = n->kid(0), &g = n->kid(1);
        return in.ty_table(src(sig, g), n) ==
               cwf::reindex(in.ty_table(ctx_of(sig, a), a), in.sub_table(src(sig, g), tgt(sig, g), g));
      }
      case Kind::Id:
        return in.sub_table(n->kid(0), n->kid(0), n) == cwf::identity(in.ctx(n->kid(0)));
      case Kind::Bang:
        return in.sub_table(n->kid(0), mk::empty(), n) == cwf::bang(in.ctx(n->kid(0)));
      case Kind::Comp: {
        const Expr &f = n->kid(0), &g = n->kid(1);
        return in.sub_table(src(sig, n), tgt(sig, n), n) ==
               cwf::compose(in.sub_table(src(sig, f), tgt(sig, f), f), in.sub_table(src(sig, g), tgt(sig, g), g));
      }
      case Kind::P: {
        const Expr& a = n->kid(0);
        Expr g = ctx_of(sig, a);
        return in.sub_table(src(sig, n), g, n) == cwf::proj_p(in.ctx(g), in.ty_table(g, a));
      }
      case Kind::Pair: {
        const Expr &g = n->kid(0), &a = n->kid(1), &ty = n->kid(2);
        Expr d = src(sig, g);
        return in.sub_table(d, tgt(sig, n), n) ==
               cwf::pairing(in.sub_table(d, tgt(sig, g), g), in.tm_table(d, a), in.ty_table(ctx_of(sig, ty), ty));
      }
      case Kind::OpApp:
        return in.tm_table(ctx_of(sig, n), n) == op_table(n);
      case Kind::Q: {
        const Expr& a = n->kid(0);
        Expr g = ctx_of(sig, a);
        return in.tm_table(ctx_of(sig, n), n) == cwf::proj_q(in.ctx(g), in.ty_table(g, a));
      }
      case Kind::TmSubst: {
        const Expr &a = n->kid(0), &g = n->kid(1);
        return in.tm_table(src(sig, g), n) ==
               cwf::reindex(in.tm_table(ctx_of(sig, a), a), in.sub_table(src(sig, g), tgt(sig, g), g));
      }
      case Kind::Meta:
        return true;
    }
    return true;
  };

  for (const Expr& x : exprs) {
    for_each_node(x, [&](const Expr& n) {
      if (n->kind == Kind::Meta) return;
      ++rep.checked;
      try {
        if (!law(n)) rep.failures.push_back(print_expr(n) + ": tables differ");
      } catch (const std::exception& e) {
        rep.failures.push_back(print_expr(n) + ": " + e.what());
      }
    });
  }
  return rep;
}

}  // namespace gat
