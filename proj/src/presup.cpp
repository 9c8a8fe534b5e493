#include "gat/presup.hpp"

namespace gat {
namespace {

const Declaration& symbol(const Signature& sig, const Expr& x, DeclKind kind) {
  const Declaration* d = sig.find(x->name);
  if (!d || d->kind != kind) fail(ErrorKind::IllFormed, "undeclared symbol " + x->name);
  return *d;
}

Expr meta_of(std::string_view what, const Expr& x, ExprClass cls) {
  return mk::meta(std::string(what) + "(" + x->name + ")", cls);
}

}  // namespace

Expr ctx_of(const Signature& sig, const Expr& x) {
  switch (x->kind) {
    case Kind::SortApp: return symbol(sig, x, DeclKind::Sort).ctx;
    case Kind::OpApp: return symbol(sig, x, DeclKind::Operator).ctx;
    case Kind::TySubst:
    case Kind::TmSubst: return src(sig, x->kid(1));
    case Kind::Q: return mk::ext(ctx_of(sig, x->kid(0)), x->kid(0));
    case Kind::Meta: return meta_of("ctx", x, ExprClass::Ctx);
    default: break;
  }
  fail(ErrorKind::IllFormed, "ctx_of applied to " + print_expr(x));
}

Expr src(const Signature& sig, const Expr& s) {
  switch (s->kind) {
    case Kind::Comp: return src(sig, s->kid(1));
    case Kind::Id:
    case Kind::Bang: return s->kid(0);
    case Kind::P: return mk::ext(ctx_of(sig, s->kid(0)), s->kid(0));
    case Kind::Pair: return src(sig, s->kid(0));
    case Kind::Meta: return meta_of("src", s, ExprClass::Ctx);
    default: break;
  }
  fail(ErrorKind::IllFormed, "src applied to " + print_expr(s));
}

Expr tgt(const Signature& sig, const Expr& s) {
  switch (s->kind) {
    case Kind::Comp: return tgt(sig, s->kid(0));
    case Kind::Id: return s->kid(0);
    case Kind::Bang: return mk::empty();
    case Kind::P: return ctx_of(sig, s->kid(0));
    case Kind::Pair: return mk::ext(ctx_of(sig, s->kid(2)), s->kid(2));
    case Kind::Meta: return meta_of("tgt", s, ExprClass::Ctx);
    default: break;
  }
  fail(ErrorKind::IllFormed, "tgt applied to " + print_expr(s));
}

Expr type_of(const Signature& sig, const Expr& a) {
  switch (a->kind) {
    case Kind::OpApp: return symbol(sig, a, DeclKind::Operator).ty;
    case Kind::Q: return mk::ty_subst(a->kid(0), mk::p(a->kid(0)));
    case Kind::TmSubst: return mk::ty_subst(type_of(sig, a->kid(0)), a->kid(1));
    case Kind::Meta: return meta_of("type", a, ExprClass::Ty);
    default: break;
  }
  fail(ErrorKind::IllFormed, "type_of applied to " + print_expr(a));
}

}  // namespace gat
