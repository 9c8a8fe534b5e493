#ifndef GAT_SIGNATURE_HPP
#define GAT_SIGNATURE_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gat/lexer.hpp"
#include "gat/syntax.hpp"

namespace gat {

// First-order named syntax used by the surface language: a variable or a
// symbol application. Kept here because declarations remember the surface
// telescope they were elaborated from.
struct SurfaceTerm {
  std::string head;
  std::vector<SurfaceTerm> args;
  bool call = false;  // written with parentheses
  SourcePos pos;

  bool operator==(const SurfaceTerm& other) const {
    return head == other.head && args == other.args;
  }
};

struct Binder {
  std::string name;
  SurfaceTerm type;
  bool implicit = false;
};

using Telescope = std::vector<Binder>;

enum class DeclKind { Sort, Operator, Equation };
enum class Orientation { LeftToRight, RightToLeft, Unoriented };

std::string_view to_string(DeclKind kind);
std::string_view to_string(Orientation orient);

struct Declaration {
  DeclKind kind = DeclKind::Sort;
  std::string name;  // symbol name, or equation label
  Expr ctx;
  Expr ty;   // Operator, Equation
  Expr lhs;  // Equation
  Expr rhs;  // Equation
  Orientation orient = Orientation::LeftToRight;
  // Present when the declaration came from named surface syntax.
  std::optional<Telescope> telescope;
  std::optional<SurfaceTerm> surface_type;
};

// An ordered list of declarations, each valid over its strict prefix.
// Values are immutable; the add_* functions return extended copies.
class Signature {
 public:
  Signature() = default;

  const std::vector<Declaration>& decls() const { return *decls_; }
  std::size_t size() const { return decls_->size(); }
  bool empty() const { return decls_->empty(); }

  // nullptr when absent.
  const Declaration* find(std::string_view name) const;
  const Declaration& lookup(std::string_view name) const;  // throws NotFound

  // The first n declarations.
  Signature prefix(std::size_t n) const;

  std::optional<ExprClass> symbol_class(std::string_view name) const;
  SymbolResolver resolver() const;

  std::size_t count(DeclKind kind) const;

  // Appends without validation. Used by the validating add_* functions and
  // by tests that need deliberately broken signatures.
  Signature unchecked_append(Declaration decl) const;

 private:
  std::shared_ptr<const std::vector<Declaration>> decls_ =
      std::make_shared<const std::vector<Declaration>>();
  std::shared_ptr<const std::map<std::string, std::size_t, std::less<>>> index_ =
      std::make_shared<const std::map<std::string, std::size_t, std::less<>>>();
};

Signature empty_signature();

Signature add_sort(const Signature& sig, const std::string& name, const Expr& ctx);
Signature add_operator(const Signature& sig, const std::string& name, const Expr& ctx, const Expr& ty);
Signature add_equation(const Signature& sig, const std::string& label, const Expr& ctx, const Expr& ty,
                       const Expr& lhs, const Expr& rhs, Orientation orient = Orientation::LeftToRight);

// Validates `decl` against `sig` and appends it (dispatches to the above,
// keeping any surface metadata).
Signature add_declaration(const Signature& sig, Declaration decl);

const Declaration& lookup(const Signature& sig, std::string_view name);

}  // namespace gat

#endif
