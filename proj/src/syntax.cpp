#include "gat/syntax.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "gat/lexer.hpp"

namespace gat {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IllFormed: return "IllFormed";
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::NormalFormsDiffer: return "NormalFormsDiffer";
    case ErrorKind::FuelExhausted: return "FuelExhausted";
    case ErrorKind::BadInference: return "BadInference";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::InvalidName: return "InvalidName";
    case ErrorKind::InvalidContext: return "InvalidContext";
    case ErrorKind::InvalidType: return "InvalidType";
    case ErrorKind::SideFailsToCheck: return "SideFailsToCheck";
    case ErrorKind::TypeMismatchBetweenSides: return "TypeMismatchBetweenSides";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::ArgumentTypeMismatch: return "ArgumentTypeMismatch";
    case ErrorKind::AmbiguousImplicit: return "AmbiguousImplicit";
    case ErrorKind::Undefined: return "Undefined";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::UnknownExample: return "UnknownExample";
    case ErrorKind::Io: return "Io";
  }
  return "?";
}

std::string_view to_string(ExprClass cls) {
  switch (cls) {
    case ExprClass::Ctx: return "context";
    case ExprClass::Sub: return "substitution";
    case ExprClass::Ty: return "type";
    case ExprClass::Tm: return "term";
  }
  return "?";
}

std::string_view to_string(Kind kind) {
  switch (kind) {
    case Kind::Empty: return "empty";
    case Kind::Ext: return "ext";
    case Kind::Comp: return "comp";
    case Kind::Id: return "id";
    case Kind::Bang: return "bang";
    case Kind::P: return "p";
    case Kind::Pair: return "pair";
    case Kind::TySubst: return "tysubst";
    case Kind::SortApp: return "sort";
    case Kind::TmSubst: return "tmsubst";
    case Kind::Q: return "q";
    case Kind::OpApp: return "op";
    case Kind::Meta: return "meta";
  }
  return "?";
}

bool is_annotation(Kind kind, std::size_t child) {
  switch (kind) {
    case Kind::Id:
    case Kind::Bang:
    case Kind::P:
    case Kind::Q: return child == 0;
    case Kind::Pair: return child == 2;
    default: return false;
  }
}

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

ExprClass class_of(Kind kind, ExprClass meta_cls) {
  switch (kind) {
    case Kind::Empty:
    case Kind::Ext: return ExprClass::Ctx;
    case Kind::Comp:
    case Kind::Id:
    case Kind::Bang:
    case Kind::P:
    case Kind::Pair: return ExprClass::Sub;
    case Kind::TySubst:
    case Kind::SortApp: return ExprClass::Ty;
    case Kind::TmSubst:
    case Kind::Q:
    case Kind::OpApp: return ExprClass::Tm;
    case Kind::Meta: return meta_cls;
  }
  return meta_cls;
}

void expect(const Expr& e, ExprClass cls, std::string_view where) {
  if (!e) fail(ErrorKind::IllFormed, std::string(where) + ": missing subexpression");
  if (e->cls != cls) {
    fail(ErrorKind::IllFormed, std::string(where) + ": expected a " + std::string(to_string(cls)) +
                                   ", got a " + std::string(to_string(e->cls)));
  }
}

// Hash-consing: equal trees share one node, so struct_eq on interned
// expressions is usually a pointer test.
Expr intern(std::shared_ptr<Node> n) {
  static std::mutex mu;
  static std::unordered_multimap<std::size_t, std::weak_ptr<const Node>> table;
  static std::size_t sweep_at = 1 << 16;
  std::lock_guard<std::mutex> lock(mu);
  auto [lo, hi] = table.equal_range(n->hash);
  for (auto it = lo; it != hi; ++it) {
    Expr old = it->second.lock();
    if (!old || old->kind != n->kind || old->cls != n->cls || old->name != n->name ||
        old->kids.size() != n->kids.size()) {
      continue;
    }
    bool same = true;
    for (std::size_t i = 0; i < n->kids.size() && same; ++i) same = old->kids[i].get() == n->kids[i].get();
    if (same) return old;
  }
  if (table.size() >= sweep_at) {
    std::erase_if(table, [](const auto& kv) { return kv.second.expired(); });
    sweep_at = std::max<std::size_t>(1 << 16, 2 * table.size());
  }
  table.emplace(n->hash, n);
  return n;
}

Expr make(Kind kind, std::string name, std::vector<Expr> kids, ExprClass meta_cls = ExprClass::Ctx) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->cls = class_of(kind, meta_cls);
  n->name = std::move(name);
  n->kids = std::move(kids);
  std::size_t h = mix(static_cast<std::size_t>(kind) + 1, std::hash<std::string>{}(n->name));
  if (kind == Kind::Meta) h = mix(h, static_cast<std::size_t>(meta_cls));
  std::size_t size = kind == Kind::Ext ? 0 : 1;
  std::size_t depth = 0;
  for (std::size_t i = 0; i < n->kids.size(); ++i) {
    h = mix(h, n->kids[i]->hash);
    if (!is_annotation(kind, i)) {
      size += n->kids[i]->size;
      depth = std::max(depth, n->kids[i]->depth);
    }
  }
  n->hash = h;
  n->size = size;
  n->depth = depth + 1;
  return intern(std::move(n));
}

}  // namespace

namespace mk {

Expr empty() {
  static const Expr one = make(Kind::Empty, "", {});
  return one;
}
Expr ext(Expr base, Expr ty) {
  expect(base, ExprClass::Ctx, "context extension");
  expect(ty, ExprClass::Ty, "context extension");
  return make(Kind::Ext, "", {std::move(base), std::move(ty)});
}
Expr comp(Expr f, Expr g) {
  expect(f, ExprClass::Sub, "composition");
  expect(g, ExprClass::Sub, "composition");
  return make(Kind::Comp, "", {std::move(f), std::move(g)});
}
Expr id(Expr ctx) {
  expect(ctx, ExprClass::Ctx, "identity");
  return make(Kind::Id, "", {std::move(ctx)});
}
Expr bang(Expr ctx) {
  expect(ctx, ExprClass::Ctx, "empty substitution");
  return make(Kind::Bang, "", {std::move(ctx)});
}
Expr p(Expr ty) {
  expect(ty, ExprClass::Ty, "first projection");
  return make(Kind::P, "", {std::move(ty)});
}
Expr pair(Expr sub, Expr tm, Expr ty) {
  expect(sub, ExprClass::Sub, "extended substitution");
  expect(tm, ExprClass::Tm, "extended substitution");
  expect(ty, ExprClass::Ty, "extended substitution");
  return make(Kind::Pair, "", {std::move(sub), std::move(tm), std::move(ty)});
}
Expr ty_subst(Expr ty, Expr sub) {
  expect(ty, ExprClass::Ty, "type substitution");
  expect(sub, ExprClass::Sub, "type substitution");
  return make(Kind::TySubst, "", {std::move(ty), std::move(sub)});
}
Expr sort(std::string name) { return make(Kind::SortApp, std::move(name), {}); }
Expr tm_subst(Expr tm, Expr sub) {
  expect(tm, ExprClass::Tm, "term substitution");
  expect(sub, ExprClass::Sub, "term substitution");
  return make(Kind::TmSubst, "", {std::move(tm), std::move(sub)});
}
Expr q(Expr ty) {
  expect(ty, ExprClass::Ty, "second projection");
  return make(Kind::Q, "", {std::move(ty)});
}
Expr op(std::string name) { return make(Kind::OpApp, std::move(name), {}); }
Expr meta(std::string name, ExprClass cls) { return make(Kind::Meta, std::move(name), {}, cls); }

Expr subst(Expr x, Expr sub) {
  if (x->cls == ExprClass::Ty) return ty_subst(std::move(x), std::move(sub));
  if (x->cls == ExprClass::Tm) return tm_subst(std::move(x), std::move(sub));
  fail(ErrorKind::IllFormed, "substitution applied to a " + std::string(to_string(x->cls)));
}

Expr rebuild(const Expr& like, std::vector<Expr> kids) {
  switch (like->kind) {
    case Kind::Ext: return ext(kids[0], kids[1]);
    case Kind::Comp: return comp(kids[0], kids[1]);
    case Kind::Id: return id(kids[0]);
    case Kind::Bang: return bang(kids[0]);
    case Kind::P: return p(kids[0]);
    case Kind::Pair: return pair(kids[0], kids[1], kids[2]);
    case Kind::TySubst: return ty_subst(kids[0], kids[1]);
    case Kind::TmSubst: return tm_subst(kids[0], kids[1]);
    case Kind::Q: return q(kids[0]);
    default: return like;
  }
}

}  // namespace mk

bool struct_eq(const Expr& x, const Expr& y) {
  if (x.get() == y.get()) return true;
  if (x->hash != y->hash || x->kind != y->kind || x->cls != y->cls || x->name != y->name ||
      x->kids.size() != y->kids.size()) {
    return false;
  }
  for (std::size_t i = 0; i < x->kids.size(); ++i) {
    if (!struct_eq(x->kids[i], y->kids[i])) return false;
  }
  return true;
}

Measure measure(const Expr& x) { return {x->size, x->depth}; }

std::size_t full_size(const Expr& x) {
  std::size_t n = 1;
  for (const auto& k : x->kids) n += full_size(k);
  return n;
}

void for_each_node(const Expr& x, const std::function<void(const Expr&)>& f) {
  for (const auto& k : x->kids) for_each_node(k, f);
  f(x);
}

bool is_reserved_name(std::string_view name) {
  if (name.empty()) return true;
  if (name == "1" || name == "p" || name == "q" || name == "id" || name == "o") return true;
  for (std::string_view prefix : {"p_", "q_", "id_"}) {
    if (name.substr(0, prefix.size()) == prefix) return true;
  }
  for (char c : name) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') return true;
  }
  // Names must survive tokenization as a single identifier.
  auto toks = tokenize(name);
  return toks.size() != 2 || !toks[0].is_ident() || toks[0].text != name;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

void print_to(std::string& out, const Expr& x, PrintMode mode);

void print_annotation(std::string& out, const Expr& a, PrintMode mode) {
  if (mode == PrintMode::Compact) return;
  out += '_';
  bool atomic = a->kind == Kind::Empty || a->kind == Kind::SortApp || a->kind == Kind::OpApp;
  if (atomic) {
    print_to(out, a, mode);
  } else {
    out += '{';
    print_to(out, a, mode);
    out += '}';
  }
}

void print_to(std::string& out, const Expr& x, PrintMode mode) {
  switch (x->kind) {
    case Kind::Empty: out += '1'; break;
    case Kind::Ext:
      print_to(out, x->kid(0), mode);
      out += '.';
      print_to(out, x->kid(1), mode);
      break;
    case Kind::Comp:
      if (x->kid(0)->kind == Kind::Comp) {
        out += '(';
        print_to(out, x->kid(0), mode);
        out += ')';
      } else {
        print_to(out, x->kid(0), mode);
      }
      out += "∘";
      print_to(out, x->kid(1), mode);
      break;
    case Kind::Id:
      out += "id";
      print_annotation(out, x->kid(0), mode);
      break;
    case Kind::Bang:
      out += "⟨⟩";
      print_annotation(out, x->kid(0), mode);
      break;
    case Kind::P:
      out += 'p';
      print_annotation(out, x->kid(0), mode);
      break;
    case Kind::Q:
      out += 'q';
      print_annotation(out, x->kid(0), mode);
      break;
    case Kind::Pair:
      out += "⟨";
      print_to(out, x->kid(0), mode);
      out += ',';
      print_to(out, x->kid(1), mode);
      out += "⟩";
      print_annotation(out, x->kid(2), mode);
      break;
    case Kind::TySubst:
    case Kind::TmSubst:
      print_to(out, x->kid(0), mode);
      out += '[';
      print_to(out, x->kid(1), mode);
      out += ']';
      break;
    case Kind::SortApp:
    case Kind::OpApp: out += x->name; break;
    case Kind::Meta:
      out += '?';
      out += x->name;
      break;
  }
}

// ---------------------------------------------------------------------------
// Parsing

class KernelParser {
 public:
  KernelParser(std::vector<Token> toks, const SymbolResolver& resolve)
      : toks_(std::move(toks)), resolve_(resolve) {}

  Expr parse_all() {
    Expr e = parse_any();
    if (peek().type != Token::Type::End) error("trailing input");
    return e;
  }

  // Any class; composition binds loosest and associates to the right.
  Expr parse_any() {
    Expr left = parse_postfix();
    if (peek().is("∘") || (peek().is_ident() && peek().text == "o")) {
      ++pos_;
      Expr right = parse_any();
      if (left->cls != ExprClass::Sub || right->cls != ExprClass::Sub) {
        error("composition of non-substitutions");
      }
      return mk::comp(left, right);
    }
    return left;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  [[noreturn]] void error(std::string_view what) const {
    fail(ErrorKind::SyntaxError, at(peek().pos, what));
  }
  void expect_punct(std::string_view p) {
    if (!peek().is(p)) error("expected '" + std::string(p) + "'");
    ++pos_;
  }

  Expr parse_postfix() {
    Expr e = parse_atom();
    while (true) {
      if (peek().is("[")) {
        ++pos_;
        Expr s = parse_any();
        expect_punct("]");
        try {
          e = mk::subst(e, s);
        } catch (const Error& err) {
          error(err.what());
        }
      } else if (peek().is(".") && e->cls == ExprClass::Ctx) {
        ++pos_;
        Expr t = parse_ext_type();
        e = mk::ext(e, t);
      } else {
        return e;
      }
    }
  }

  // The type after '.' in a context: an atom with postfix substitutions only.
  Expr parse_ext_type() {
    Expr e = parse_atom();
    while (peek().is("[")) {
      ++pos_;
      Expr s = parse_any();
      expect_punct("]");
      e = mk::subst(e, s);
    }
    if (e->cls != ExprClass::Ty) error("expected a type after '.'");
    return e;
  }

  Expr parse_annotation(ExprClass want) {
    // Entered with the '_' consumed, or with the remainder of a split ident.
    Expr a;
    if (!pending_.empty()) {
      std::string name = std::move(pending_);
      pending_.clear();
      a = resolve_name(name);
    } else if (peek().is("{")) {
      ++pos_;
      a = parse_any();
      expect_punct("}");
    } else {
      a = parse_atom();
    }
    if (a->cls != want) error("annotation must be a " + std::string(to_string(want)));
    return a;
  }

  Expr resolve_name(const std::string& name) {
    if (name == "1") return mk::empty();
    auto cls = resolve_(name);
    if (!cls) error("unknown symbol '" + name + "'");
    return *cls == ExprClass::Ty ? mk::sort(name) : mk::op(name);
  }

  // Handles p_M, q_M, id_1 arriving as a single identifier token.
  bool split_keyword(const std::string& text, std::string& keyword) {
    for (std::string_view kw : {"id_", "p_", "q_"}) {
      if (text.size() >= kw.size() && text.compare(0, kw.size(), kw) == 0) {
        keyword = std::string(kw.substr(0, kw.size() - 1));
        pending_ = text.substr(kw.size());
        underscore_seen_ = true;
        return true;
      }
    }
    if (text == "id" || text == "p" || text == "q") {
      keyword = text;
      return true;
    }
    return false;
  }

  Expr after_keyword(const std::string& kw) {
    if (!underscore_seen_) expect_punct("_");
    underscore_seen_ = false;
    if (kw == "id") return mk::id(parse_annotation(ExprClass::Ctx));
    if (kw == "p") return mk::p(parse_annotation(ExprClass::Ty));
    return mk::q(parse_annotation(ExprClass::Ty));
  }

  Expr parse_atom() {
    const Token& t = peek();
    if (t.is("(")) {
      ++pos_;
      Expr e = parse_any();
      expect_punct(")");
      return e;
    }
    if (t.is("⟨")) {
      ++pos_;
      if (peek().is("⟩")) {
        ++pos_;
        expect_punct("_");
        return mk::bang(parse_annotation(ExprClass::Ctx));
      }
      Expr s = parse_any();
      expect_punct(",");
      Expr a = parse_any();
      expect_punct("⟩");
      expect_punct("_");
      Expr ty = parse_annotation(ExprClass::Ty);
      if (s->cls != ExprClass::Sub || a->cls != ExprClass::Tm) error("malformed extended substitution");
      return mk::pair(s, a, ty);
    }
    if (t.is("?")) {
      ++pos_;
      error("metavariables are not part of the concrete syntax");
    }
    if (t.is_ident()) {
      std::string text = t.text;
      ++pos_;
      std::string kw;
      if (split_keyword(text, kw)) return after_keyword(kw);
      return resolve_name(text);
    }
    error("expected an expression");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const SymbolResolver& resolve_;
  std::string pending_;
  bool underscore_seen_ = false;
};

}  // namespace

std::string print_expr(const Expr& x, PrintMode mode) {
  std::string out;
  print_to(out, x, mode);
  return out;
}

Expr parse_expr(std::string_view text, const SymbolResolver& resolve) {
  KernelParser parser(tokenize(text), resolve);
  return parser.parse_all();
}

}  // namespace gat
