#include "gat/surface.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "gat/checker.hpp"
#include "gat/presup.hpp"
#include "gat/rewrite.hpp"

namespace gat {

// ---------------------------------------------------------------------------
// parsing

namespace {

const std::set<std::string, std::less<>> kKeywords = {"theory", "sort", "op", "eq", "model"};

class GatParser {
 public:
  explicit GatParser(std::string_view text) : toks_(tokenize(text)) {}

  SurfaceFile file() {
    SurfaceFile f;
    while (!peek_end()) {
      const Token& t = peek();
      if (t.is(";")) {
        ++i_;
        continue;
      }
      if (!t.is_ident()) error("expected a declaration");
      if (t.text == "theory") {
        ++i_;
        f.theory = name("theory name");
      } else if (t.text == "model") {
        error("models are loaded from JSON files, not declared in theories");
      } else {
        f.decls.push_back(decl());
      }
      terminator();
    }
    return f;
  }

  SurfaceTerm lone_term() {
    SurfaceTerm t = term();
    if (!peek_end()) error("expected end of term");
    return t;
  }

 private:
  std::vector<Token> toks_;
  std::size_t i_ = 0;

  const Token& peek() const { return toks_[i_]; }
  bool peek_end() const { return toks_[i_].type == Token::Type::End; }

  [[noreturn]] void error(const std::string& expected) const {
    const Token& t = peek();
    std::string found = t.type == Token::Type::End ? "end of input" : "'" + t.text + "'";
    fail(ErrorKind::SyntaxError, at(t.pos, expected + ", found " + found));
  }

  void expect(std::string_view punct) {
    if (!peek().is(punct)) error("expected '" + std::string(punct) + "'");
    ++i_;
  }

  std::string name(const std::string& what) {
    const Token& t = peek();
    if (!t.is_ident() || kKeywords.count(t.text)) error("expected " + what);
    ++i_;
    return t.text;
  }

  void terminator() {
    if (peek_end()) return;
    expect(";");
  }

  SurfaceDecl decl() {
    SurfaceDecl d;
    d.pos = peek().pos;
    std::string kw = toks_[i_++].text;
    if (kw == "sort") {
      d.kind = DeclKind::Sort;
      d.name = name("sort name");
      d.tele = telescope();
    } else if (kw == "op") {
      d.kind = DeclKind::Operator;
      d.name = name("operator name");
      d.tele = telescope();
      expect(":");
      d.type = term();
    } else if (kw == "eq") {
      d.kind = DeclKind::Equation;
      d.name = name("equation label");
      if (peek().is("[")) {
        ++i_;
        std::string o = name("orientation (ltr, rtl or none)");
        if (o == "ltr") d.orient = Orientation::LeftToRight;
        else if (o == "rtl") d.orient = Orientation::RightToLeft;
        else if (o == "none") d.orient = Orientation::Unoriented;
        else fail(ErrorKind::SyntaxError, at(toks_[i_ - 1].pos, "unknown orientation '" + o + "'"));
        expect("]");
      }
      d.tele = telescope();
      expect(":");
      d.lhs = term();
      expect("=");
      d.rhs = term();
      expect(":");
      d.type = term();
    } else {
      --i_;
      error("expected 'sort', 'op', 'eq' or 'theory'");
    }
    return d;
  }

  Telescope telescope() {
    Telescope tele;
    while (peek().is("(") || peek().is("{")) {
      bool implicit = peek().is("{");
      std::string close = implicit ? "}" : ")";
      ++i_;
      for (;;) {
        std::vector<std::string> names{name("binder name")};
        while (peek().is_ident()) names.push_back(name("binder name"));
        expect(":");
        SurfaceTerm ty = term();
        for (auto& n : names) tele.push_back({n, ty, implicit});
        if (peek().is(",")) {
          ++i_;
          continue;
        }
        break;
      }
      expect(close);
    }
    return tele;
  }

  SurfaceTerm term() {
    SurfaceTerm t;
    t.pos = peek().pos;
    t.head = name("a term");
    if (peek().is("(")) {
      ++i_;
      t.call = true;
      if (!peek().is(")")) {
        t.args.push_back(term());
        while (peek().is(",")) {
          ++i_;
          t.args.push_back(term());
        }
      }
      expect(")");
    }
    return t;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

SurfaceFile parse_gat(std::string_view text) { return GatParser(text).file(); }

SurfaceFile parse_gat_file(const std::string& path) { return parse_gat(read_file(path)); }

SurfaceTerm parse_surface_term(std::string_view text) { return GatParser(text).lone_term(); }

// ---------------------------------------------------------------------------
// elaboration

namespace {

std::vector<Expr> ctx_entries(const Expr& ctx) {
  std::vector<Expr> out;
  Expr c = ctx;
  while (c->kind == Kind::Ext) {
    out.push_back(c->kid(1));
    c = c->kid(0);
  }
  if (c->kind != Kind::Empty) fail(ErrorKind::IllFormed, "not a context: " + print_expr(ctx));
  return {out.rbegin(), out.rend()};
}

// Binder list of a declaration; programmatic declarations take every
// context entry as an explicit argument.
Telescope binders_of(const Declaration& d) {
  if (d.telescope) return *d.telescope;
  Telescope t;
  std::size_t n = ctx_entries(d.ctx).size();
  for (std::size_t i = 0; i < n; ++i) t.push_back({"x" + std::to_string(i + 1), {}, false});
  return t;
}

struct Scope {
  std::vector<std::string> names;
  std::vector<Expr> types;  // types[i] lives in ctxs[i]
  std::vector<Expr> ctxs;   // ctxs[0] = 1, ctxs[i+1] = ctxs[i].types[i]

  Scope() : ctxs{mk::empty()} {}
  explicit Scope(const NamedCtx& c) : Scope() {
    std::vector<Expr> tys = ctx_entries(c.ctx);
    if (tys.size() != c.names.size()) fail(ErrorKind::IllFormed, "context and binder names differ in length");
    for (std::size_t i = 0; i < tys.size(); ++i) push(c.names[i], tys[i]);
  }

  std::size_t size() const { return types.size(); }
  void push(std::string name, Expr ty) {
    names.push_back(std::move(name));
    ctxs.push_back(mk::ext(ctxs.back(), ty));
    types.push_back(std::move(ty));
  }
  // Innermost binding of `name` among the first n entries.
  std::optional<std::size_t> find(std::string_view name, std::size_t n) const {
    for (std::size_t i = n; i-- > 0;)
      if (names[i] == name) return i;
    return std::nullopt;
  }
};

class Elaborator {
 public:
  explicit Elaborator(const Signature& sig) : sig_(sig), rw_(signature_rule_set(sig)) {}

  Expr term(const SurfaceTerm& t, const Scope& s, std::size_t n) {
    if (auto i = s.find(t.head, n)) {
      if (t.call) fail(ErrorKind::ArityMismatch, at(t.pos, "variable '" + t.head + "' applied to arguments"));
      return var(s, *i, n);
    }
    const Declaration* d = sig_.find(t.head);
    if (!d) fail(ErrorKind::UnknownSymbol, at(t.pos, "unknown symbol '" + t.head + "'"));
    if (d->kind != DeclKind::Operator)
      fail(ErrorKind::UnknownSymbol, at(t.pos, "'" + t.head + "' is not an operator"));
    return apply(*d, t, s, n);
  }

  // Types are built in the shortest prefix that binds every variable they
  // mention and then weakened, so "M" over (x : M) reads M[p].
  Expr type(const SurfaceTerm& t, const Scope& s, std::size_t n) {
    std::size_t k = 0;
    std::function<void(const SurfaceTerm&)> scan = [&](const SurfaceTerm& u) {
      if (auto i = s.find(u.head, n)) k = std::max(k, *i + 1);
      for (const auto& a : u.args) scan(a);
    };
    scan(t);
    if (s.find(t.head, n)) fail(ErrorKind::UnknownSymbol, at(t.pos, "variable '" + t.head + "' used as a type"));
    const Declaration* d = sig_.find(t.head);
    if (!d) fail(ErrorKind::UnknownSymbol, at(t.pos, "unknown symbol '" + t.head + "'"));
    if (d->kind != DeclKind::Sort) fail(ErrorKind::UnknownSymbol, at(t.pos, "'" + t.head + "' is not a sort"));
    Expr ty = apply(*d, t, s, k);
    for (std::size_t j = k; j < n; ++j) ty = mk::ty_subst(ty, mk::p(s.types[j]));
    return ty;
  }

  void constrain(const Expr& inferred, const Expr& expected) { constraints_.push_back({inferred, expected}); }

  // Solves the implicit arguments by first-order unification of normal
  // forms (annotations ignored). A constraint whose rigid parts clash only
  // contributes once nothing else makes progress, since its clash usually
  // means an equation the normalizer could not see yet. The real checks
  // happen afterwards.
  void solve() {
    auto pass = [&](bool strict) {
      bool progress = false;
      for (const auto& [x, y] : constraints_) {
        auto saved = solution_;
        clash_ = false;
        unify(norm(resolve(x)), norm(resolve(y)));
        if (strict && clash_) {
          solution_ = saved;
          resolved_.clear();
        }
        progress |= solution_.size() != saved.size();
      }
      return progress;
    };
    for (int round = 0; round < 64; ++round) {
      if (pass(true)) continue;
      if (!pass(false)) break;
    }
    for (const auto& [name, origin] : metas_)
      if (!solution_.count(name)) fail(ErrorKind::AmbiguousImplicit, origin + " cannot be inferred");
  }

  Expr resolve(const Expr& x) const {
    if (!x) return x;
    if (x->kind == Kind::Meta) {
      auto it = solution_.find(x->name);
      return it == solution_.end() ? x : resolve(it->second);
    }
    if (x->kids.empty()) return x;
    auto it = resolved_.find(x);
    if (it != resolved_.end()) return it->second;
    std::vector<Expr> kids;
    bool changed = false;
    for (const auto& k : x->kids) {
      kids.push_back(resolve(k));
      changed |= kids.back() != k;
    }
    Expr out = changed ? mk::rebuild(x, std::move(kids)) : x;
    resolved_.emplace(x, out);
    return out;
  }

  // Explicit arguments against their expected types, innermost first.
  void check_arguments() {
    if (sites_.empty()) return;
    Checker ck(sig_);
    for (const auto& site : sites_) {
      Expr ctx = resolve(site.ctx), arg = resolve(site.arg), want = resolve(site.expected);
      Expr got = type_of(sig_, arg);
      try {
        ck.conv_ty(ctx, got, want);
      } catch (const Error& e) {
        std::string msg = "argument " + std::to_string(site.index) + " of '" + site.fn + "' has type " +
                          print_expr(got, PrintMode::Compact) + ", expected " + print_expr(want, PrintMode::Compact);
        if (e.kind() == ErrorKind::NormalFormsDiffer || e.kind() == ErrorKind::FuelExhausted) {
          auto l = ck.normalize(got), r = ck.normalize(want);
          msg += "\n  normal forms: " + print_expr(l.nf, PrintMode::Compact) + " vs " + print_expr(r.nf, PrintMode::Compact);
          msg += "\n  trace of the argument type:\n" + print_trace(ck.rules(), l.trace);
          msg += "  trace of the expected type:\n" + print_trace(ck.rules(), r.trace);
        } else {
          msg += std::string("\n  ") + e.what();
        }
        fail(ErrorKind::ArgumentTypeMismatch, at(site.pos, msg));
      }
    }
  }

 private:
  struct Site {
    Expr ctx;
    Expr arg;
    Expr expected;
    std::string fn;
    std::size_t index;
    SourcePos pos;
  };

  const Signature& sig_;
  Rewriter rw_;
  std::vector<std::pair<Expr, Expr>> constraints_;
  std::vector<Site> sites_;
  std::vector<std::pair<std::string, std::string>> metas_;  // name, origin
  std::map<std::string, Expr> solution_;
  mutable std::unordered_map<Expr, Expr> resolved_;  // by node identity, for the current solution
  bool clash_ = false;

  Expr var(const Scope& s, std::size_t i, std::size_t n) {
    Expr t = mk::q(s.types[i]);
    for (std::size_t j = i + 1; j < n; ++j) t = mk::tm_subst(t, mk::p(s.types[j]));
    return t;
  }

  // f(args) in the first n entries: f[⟨…⟨⟨⟩,a1⟩…,am⟩], or f when both f's
  // context and the current one are empty.
  Expr apply(const Declaration& d, const SurfaceTerm& t, const Scope& s, std::size_t n) {
    Telescope binders = binders_of(d);
    std::vector<Expr> entries = ctx_entries(d.ctx);
    std::size_t explicit_count = 0;
    for (const auto& b : binders) explicit_count += !b.implicit;
    if (t.args.size() != explicit_count)
      fail(ErrorKind::ArityMismatch, at(t.pos, "'" + d.name + "' takes " + std::to_string(explicit_count) +
                                                   " argument(s), given " + std::to_string(t.args.size())));
    Expr here = s.ctxs[n];
    Expr head = d.kind == DeclKind::Sort ? mk::sort(d.name) : mk::op(d.name);
    if (entries.empty() && n == 0) return head;
    Expr sigma = mk::bang(here);
    std::size_t next = 0;
    for (std::size_t j = 0; j < entries.size(); ++j) {
      Expr expected = mk::ty_subst(entries[j], sigma);
      Expr a;
      if (binders[j].implicit) {
        std::string m = "?" + std::to_string(metas_.size() + 1);
        metas_.push_back({m, at(t.pos, "implicit argument '" + binders[j].name + "' of '" + d.name + "'")});
        a = mk::meta(m, ExprClass::Tm);
      } else {
        const SurfaceTerm& arg = t.args[next++];
        a = term(arg, s, n);
        constrain(type_of(sig_, a), expected);
        sites_.push_back({here, a, expected, d.name, next, arg.pos});
      }
      sigma = mk::pair(sigma, a, entries[j]);
    }
    return mk::subst(head, sigma);
  }

  Expr norm(const Expr& x) {
    try {
      return rw_.reduce(x);
    } catch (const Error&) {
      return x;
    }
  }

  bool occurs(const std::string& m, const Expr& x) const {
    if (x->kind == Kind::Meta && x->name == m) return true;
    for (const auto& k : x->kids)
      if (occurs(m, k)) return true;
    return false;
  }

  static bool open_meta(const Expr& x) { return x->kind == Kind::Meta && !x->name.empty() && x->name[0] == '?'; }

  void unify(const Expr& a0, const Expr& b0) {
    Expr a = resolve(a0), b = resolve(b0);
    if (open_meta(a) && open_meta(b) && a->name == b->name) return;
    if (open_meta(a) && !occurs(a->name, b)) {
      solution_.emplace(a->name, b);
      resolved_.clear();
      return;
    }
    if (open_meta(b) && !occurs(b->name, a)) {
      solution_.emplace(b->name, a);
      resolved_.clear();
      return;
    }
    if (a->kind != b->kind || a->name != b->name || a->kids.size() != b->kids.size()) {
      clash_ = true;
      return;
    }
    for (std::size_t i = 0; i < a->kids.size(); ++i)
      if (!is_annotation(a->kind, i)) unify(a->kid(i), b->kid(i));
  }
};

Scope telescope_scope(Elaborator& el, const Telescope& tele) {
  Scope s;
  std::set<std::string> seen;
  for (const auto& b : tele) {
    if (!seen.insert(b.name).second)
      fail(ErrorKind::DuplicateName, at(b.type.pos, "binder '" + b.name + "' appears twice in the telescope"));
    s.push(b.name, el.type(b.type, s, s.size()));
  }
  return s;
}

Scope resolved(const Elaborator& el, const Scope& s) {
  Scope out;
  for (std::size_t i = 0; i < s.size(); ++i) out.push(s.names[i], el.resolve(s.types[i]));
  return out;
}

}  // namespace

Declaration elaborate(const Signature& sig, const SurfaceDecl& sd) {
  Elaborator el(sig);
  Scope s = telescope_scope(el, sd.tele);
  std::size_t n = s.size();
  Declaration d;
  d.kind = sd.kind;
  d.name = sd.name;
  d.orient = sd.orient;
  d.telescope = sd.tele;
  Expr ty, lhs, rhs;
  if (sd.type) ty = sd.kind == DeclKind::Sort ? nullptr : el.type(*sd.type, s, n);
  if (sd.kind == DeclKind::Equation) {
    lhs = el.term(*sd.lhs, s, n);
    rhs = el.term(*sd.rhs, s, n);
    el.constrain(type_of(sig, lhs), ty);
    el.constrain(type_of(sig, rhs), ty);
  }
  el.solve();
  el.check_arguments();
  Scope r = resolved(el, s);
  d.ctx = r.ctxs.back();
  d.ty = el.resolve(ty);
  d.lhs = el.resolve(lhs);
  d.rhs = el.resolve(rhs);
  if (sd.type) d.surface_type = sd.type;
  return d;
}

Signature elaborate_all(const SurfaceFile& file, Signature sig) {
  for (const auto& sd : file.decls) {
    try {
      sig = add_declaration(sig, elaborate(sig, sd));
    } catch (const Error& e) {
      std::string msg = e.what();
      // Elaboration errors already carry a position.
      if (msg.empty() || !std::isdigit(static_cast<unsigned char>(msg[0])))
        msg = at(sd.pos, "'" + sd.name + "': " + msg);
      throw Error(e.kind(), msg);
    }
  }
  return sig;
}

Signature load_theory(const std::string& path) { return elaborate_all(parse_gat_file(path)); }

NamedCtx elaborate_telescope(const Signature& sig, const Telescope& tele) {
  Elaborator el(sig);
  Scope s = telescope_scope(el, tele);
  el.solve();
  el.check_arguments();
  Scope r = resolved(el, s);
  return {r.ctxs.back(), r.names};
}

Expr elaborate_term(const Signature& sig, const NamedCtx& ctx, const SurfaceTerm& t, const Expr& expected) {
  Elaborator el(sig);
  Scope s(ctx);
  Expr x = el.term(t, s, s.size());
  if (expected) el.constrain(type_of(sig, x), expected);
  el.solve();
  el.check_arguments();
  return el.resolve(x);
}

Expr elaborate_type(const Signature& sig, const NamedCtx& ctx, const SurfaceTerm& t) {
  Elaborator el(sig);
  Scope s(ctx);
  Expr x = el.type(t, s, s.size());
  el.solve();
  el.check_arguments();
  return el.resolve(x);
}

// ---------------------------------------------------------------------------
// printing

namespace {

class SurfacePrinter {
 public:
  explicit SurfacePrinter(const Signature& sig) : sig_(sig) {}

  std::optional<std::string> print(const Expr& x, std::size_t n, const std::vector<std::string>& names) {
    switch (x->kind) {
      case Kind::Q:
        if (n == 0) return std::nullopt;
        return names[n - 1];
      case Kind::SortApp:
      case Kind::OpApp:
        return x->name;
      case Kind::TySubst:
      case Kind::TmSubst: {
        const Expr& head = x->kid(0);
        const Expr& sub = x->kid(1);
        if (sub->kind == Kind::P) {
          if (n == 0) return std::nullopt;
          return print(head, n - 1, names);
        }
        if (head->kind != Kind::SortApp && head->kind != Kind::OpApp) return std::nullopt;
        std::vector<Expr> args;
        Expr s = sub;
        while (s->kind == Kind::Pair) {
          args.push_back(s->kid(1));
          s = s->kid(0);
        }
        if (s->kind != Kind::Bang) return std::nullopt;
        std::reverse(args.begin(), args.end());
        const Declaration* d = sig_.find(head->name);
        if (!d) return std::nullopt;
        Telescope binders = binders_of(*d);
        if (binders.size() != args.size()) return std::nullopt;
        std::vector<std::string> shown;
        for (std::size_t i = 0; i < args.size(); ++i) {
          if (binders[i].implicit) continue;
          auto a = print(args[i], n, names);
          if (!a) return std::nullopt;
          shown.push_back(*a);
        }
        if (shown.empty()) return head->name;
        std::string out = head->name + "(";
        for (std::size_t i = 0; i < shown.size(); ++i) out += (i ? ", " : "") + shown[i];
        return out + ")";
      }
      default:
        return std::nullopt;
    }
  }

 private:
  const Signature& sig_;
};

}  // namespace

std::string print_surface(const Signature& sig, const Expr& x, const std::vector<std::string>& names) {
  if (x->cls == ExprClass::Tm || x->cls == ExprClass::Ty) {
    if (auto s = SurfacePrinter(sig).print(x, names.size(), names)) return *s;
  }
  return print_expr(x, PrintMode::Compact);
}

std::string print_surface(const Signature& sig, const SurfaceTerm& t) {
  std::string out = t.head;
  if (t.call || !t.args.empty()) {
    out += "(";
    for (std::size_t i = 0; i < t.args.size(); ++i) out += (i ? ", " : "") + print_surface(sig, t.args[i]);
    out += ")";
  }
  return out;
}

// ---------------------------------------------------------------------------
// goals

namespace {

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

void free_vars(const Signature& sig, const SurfaceTerm& t, std::vector<std::string>& out) {
  if (!sig.find(t.head) && !t.call) {
    if (std::find(out.begin(), out.end(), t.head) == out.end()) out.push_back(t.head);
  }
  for (const auto& a : t.args) free_vars(sig, a, out);
}

}  // namespace

Goal parse_goal(const Signature& sig, std::string_view text, bool raw) {
  std::string ctx_text, body = std::string(text);
  for (std::string_view turnstile : {"|-", "⊢"}) {
    auto k = body.find(turnstile);
    if (k != std::string::npos) {
      ctx_text = trim(body.substr(0, k));
      body = body.substr(k + turnstile.size());
      break;
    }
  }
  std::string lhs_text = body, rhs_text, ty_text;
  if (auto k = body.rfind(':'); k != std::string::npos) {
    ty_text = trim(body.substr(k + 1));
    lhs_text = body.substr(0, k);
  }
  if (auto k = lhs_text.find('='); k != std::string::npos) {
    rhs_text = trim(lhs_text.substr(k + 1));
    lhs_text = lhs_text.substr(0, k);
  }
  lhs_text = trim(lhs_text);
  if (lhs_text.empty()) fail(ErrorKind::SyntaxError, "goal has no term");

  Goal g;
  bool telescope_ctx = !ctx_text.empty() && (ctx_text[0] == '(' || ctx_text[0] == '{');
  if (telescope_ctx) {
    SurfaceFile f = parse_gat("sort goal " + ctx_text + ";");
    g.ctx = elaborate_telescope(sig, f.decls.at(0).tele);
  } else {
    g.ctx.ctx = ctx_text.empty() ? mk::empty() : parse_expr(ctx_text, sig.resolver());
    if (g.ctx.ctx->cls != ExprClass::Ctx) fail(ErrorKind::SyntaxError, "goal context is not a context: " + ctx_text);
  }
  std::size_t entries = ctx_entries(g.ctx.ctx).size();

  if (raw) {
    if (!telescope_ctx)
      for (std::size_t i = 0; i < entries; ++i) g.ctx.names.push_back("x" + std::to_string(i + 1));
    g.lhs = parse_expr(lhs_text, sig.resolver());
    if (!rhs_text.empty()) g.rhs = parse_expr(rhs_text, sig.resolver());
    if (!ty_text.empty()) g.ty = parse_expr(ty_text, sig.resolver());
    return g;
  }

  SurfaceTerm lhs = parse_surface_term(lhs_text);
  std::optional<SurfaceTerm> rhs, ty;
  if (!rhs_text.empty()) rhs = parse_surface_term(rhs_text);
  if (!ty_text.empty()) ty = parse_surface_term(ty_text);
  if (!telescope_ctx) {
    std::vector<std::string> vars;
    free_vars(sig, lhs, vars);
    if (rhs) free_vars(sig, *rhs, vars);
    if (ty) free_vars(sig, *ty, vars);
    if (vars.size() > entries)
      fail(ErrorKind::UnknownSymbol, "goal mentions " + std::to_string(vars.size()) + " variable(s) but the context has " +
                                         std::to_string(entries) + " entries");
    for (std::size_t i = 0; i < entries; ++i) g.ctx.names.push_back(i < vars.size() ? vars[i] : "_" + std::to_string(i + 1));
  }
  if (ty) g.ty = elaborate_type(sig, g.ctx, *ty);
  g.lhs = elaborate_term(sig, g.ctx, lhs, g.ty);
  if (rhs) g.rhs = elaborate_term(sig, g.ctx, *rhs, g.ty ? g.ty : type_of(sig, g.lhs));
  return g;
}

Derivation check_goal(const Signature& sig, const Goal& g, const CheckerOptions& opts) {
  Checker ck(sig, opts);
  const Expr& ctx = g.ctx.ctx;
  switch (g.lhs->cls) {
    case ExprClass::Ty:
      if (g.ty) fail(ErrorKind::SyntaxError, "a type goal takes no classifier");
      return g.rhs ? ck.conv_ty(ctx, g.lhs, g.rhs) : ck.check_ty(ctx, g.lhs);
    case ExprClass::Sub: {
      Expr tgt = g.ty ? g.ty : ck.infer_sub(ctx, g.lhs).classifier;
      return g.rhs ? ck.conv_sub(ctx, tgt, g.lhs, g.rhs) : ck.check_sub(ctx, g.lhs, tgt);
    }
    case ExprClass::Tm: {
      Expr ty = g.ty ? g.ty : ck.infer_tm(ctx, g.lhs).classifier;
      return g.rhs ? ck.conv_tm(ctx, ty, g.lhs, g.rhs) : ck.check_tm(ctx, g.lhs, ty);
    }
    default:
      if (g.ty) fail(ErrorKind::SyntaxError, "a context goal takes no classifier");
      return g.rhs ? ck.conv_ctx(g.lhs, g.rhs) : ck.check_ctx(g.lhs);
  }
}

}  // namespace gat
