#include "gat/signature.hpp"

#include "gat/checker.hpp"

namespace gat {

std::string_view to_string(DeclKind kind) {
  switch (kind) {
    case DeclKind::Sort: return "sort";
    case DeclKind::Operator: return "op";
    case DeclKind::Equation: return "eq";
  }
  return "?";
}

std::string_view to_string(Orientation orient) {
  switch (orient) {
    case Orientation::LeftToRight: return "ltr";
    case Orientation::RightToLeft: return "rtl";
    case Orientation::Unoriented: return "none";
  }
  return "?";
}

const Declaration* Signature::find(std::string_view name) const {
  auto it = index_->find(name);
  return it == index_->end() ? nullptr : &(*decls_)[it->second];
}

const Declaration& Signature::lookup(std::string_view name) const {
  const Declaration* d = find(name);
  if (!d) fail(ErrorKind::NotFound, "no declaration named " + std::string(name));
  return *d;
}

Signature Signature::prefix(std::size_t n) const {
  Signature out;
  for (std::size_t i = 0; i < n && i < size(); ++i) out = out.unchecked_append((*decls_)[i]);
  return out;
}

std::optional<ExprClass> Signature::symbol_class(std::string_view name) const {
  const Declaration* d = find(name);
  if (!d) return std::nullopt;
  if (d->kind == DeclKind::Sort) return ExprClass::Ty;
  if (d->kind == DeclKind::Operator) return ExprClass::Tm;
  return std::nullopt;
}

SymbolResolver Signature::resolver() const {
  Signature self = *this;
  return [self](std::string_view name) { return self.symbol_class(name); };
}

std::size_t Signature::count(DeclKind kind) const {
  std::size_t n = 0;
  for (const auto& d : *decls_) n += d.kind == kind;
  return n;
}

Signature Signature::unchecked_append(Declaration decl) const {
  Signature out;
  auto decls = std::make_shared<std::vector<Declaration>>(*decls_);
  auto index = std::make_shared<std::map<std::string, std::size_t, std::less<>>>(*index_);
  (*index)[decl.name] = decls->size();
  decls->push_back(std::move(decl));
  out.decls_ = std::move(decls);
  out.index_ = std::move(index);
  return out;
}

Signature empty_signature() { return Signature(); }

const Declaration& lookup(const Signature& sig, std::string_view name) { return sig.lookup(name); }

namespace {

void check_name(const Signature& sig, const std::string& name) {
  if (is_reserved_name(name)) fail(ErrorKind::InvalidName, "'" + name + "' cannot be used as a name");
  if (sig.find(name)) fail(ErrorKind::DuplicateName, "'" + name + "' is already declared");
}

void check_context(Checker& ck, const Expr& ctx) {
  try {
    ck.check_ctx(ctx);
  } catch (const Error& e) {
    fail(ErrorKind::InvalidContext, std::string("invalid context ") + print_expr(ctx) + ": " + e.what());
  }
}

void check_type(Checker& ck, const Expr& ctx, const Expr& ty) {
  try {
    ck.check_ty(ctx, ty);
  } catch (const Error& e) {
    fail(ErrorKind::InvalidType, "invalid type " + print_expr(ty) + " in " + print_expr(ctx) + ": " + e.what());
  }
}

Signature validate_and_append(const Signature& sig, Declaration decl) {
  check_name(sig, decl.name);
  Checker ck(sig);
  check_context(ck, decl.ctx);
  if (decl.kind == DeclKind::Sort) return sig.unchecked_append(std::move(decl));
  check_type(ck, decl.ctx, decl.ty);
  if (decl.kind == DeclKind::Operator) return sig.unchecked_append(std::move(decl));
  try {
    ck.check_tm(decl.ctx, decl.lhs, decl.ty);
  } catch (const Error& e) {
    fail(ErrorKind::SideFailsToCheck, "left side of " + decl.name + " does not check: " + e.what());
  }
  try {
    ck.check_tm(decl.ctx, decl.rhs, decl.ty);
  } catch (const Error& e) {
    ErrorKind kind = e.kind() == ErrorKind::TypeMismatch ? ErrorKind::TypeMismatchBetweenSides
                                                         : ErrorKind::SideFailsToCheck;
    fail(kind, "right side of " + decl.name + " does not check: " + e.what());
  }
  return sig.unchecked_append(std::move(decl));
}

}  // namespace

Signature add_sort(const Signature& sig, const std::string& name, const Expr& ctx) {
  Declaration d;
  d.kind = DeclKind::Sort;
  d.name = name;
  d.ctx = ctx;
  return validate_and_append(sig, std::move(d));
}

Signature add_operator(const Signature& sig, const std::string& name, const Expr& ctx, const Expr& ty) {
  Declaration d;
  d.kind = DeclKind::Operator;
  d.name = name;
  d.ctx = ctx;
  d.ty = ty;
  return validate_and_append(sig, std::move(d));
}

Signature add_equation(const Signature& sig, const std::string& label, const Expr& ctx, const Expr& ty,
                       const Expr& lhs, const Expr& rhs, Orientation orient) {
  Declaration d;
  d.kind = DeclKind::Equation;
  d.name = label;
  d.ctx = ctx;
  d.ty = ty;
  d.lhs = lhs;
  d.rhs = rhs;
  d.orient = orient;
  return validate_and_append(sig, std::move(d));
}

Signature add_declaration(const Signature& sig, Declaration decl) { return validate_and_append(sig, std::move(decl)); }

}  // namespace gat
