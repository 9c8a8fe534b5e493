#ifndef GAT_SURFACE_HPP
#define GAT_SURFACE_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gat/checker.hpp"
#include "gat/lexer.hpp"
#include "gat/signature.hpp"
#include "gat/syntax.hpp"

namespace gat {

// One `.gat` declaration before elaboration.
struct SurfaceDecl {
  DeclKind kind = DeclKind::Sort;
  std::string name;
  Telescope tele;
  std::optional<SurfaceTerm> type;  // op result type, eq type
  std::optional<SurfaceTerm> lhs;
  std::optional<SurfaceTerm> rhs;
  Orientation orient = Orientation::LeftToRight;
  SourcePos pos;
};

struct SurfaceFile {
  std::string theory;  // empty when the file has no `theory` line
  std::vector<SurfaceDecl> decls;
};

// Grammar (`;` may be omitted after the last declaration):
//   file   ::= { "theory" NAME ";" | decl ";" }
//   decl   ::= "sort" NAME tele
//            | "op" NAME tele ":" term
//            | "eq" NAME [ "[" ("ltr"|"rtl"|"none") "]" ] tele ":" term "=" term ":" term
//   tele   ::= { "(" entry { "," entry } ")" | "{" entry { "," entry } "}" }
//   entry  ::= NAME { NAME } ":" term
//   term   ::= NAME [ "(" [ term { "," term } ] ")" ]
// Braces mark implicit arguments, inferred at use sites from the types of
// the explicit ones.
SurfaceFile parse_gat(std::string_view text);
SurfaceFile parse_gat_file(const std::string& path);
SurfaceTerm parse_surface_term(std::string_view text);

// Elaborates one declaration over the signature so far. Does not validate;
// pass the result to add_declaration.
Declaration elaborate(const Signature& sig, const SurfaceDecl& decl);

// Elaborates and validates declarations in order.
Signature elaborate_all(const SurfaceFile& file, Signature sig = {});
Signature load_theory(const std::string& path);

// A named context: binder names for the entries of `ctx`, outermost first.
struct NamedCtx {
  Expr ctx;
  std::vector<std::string> names;
};

NamedCtx elaborate_telescope(const Signature& sig, const Telescope& tele);
Expr elaborate_term(const Signature& sig, const NamedCtx& ctx, const SurfaceTerm& t,
                    const Expr& expected_type = nullptr);
Expr elaborate_type(const Signature& sig, const NamedCtx& ctx, const SurfaceTerm& t);

// Named rendering; falls back to compact combinator notation.
std::string print_surface(const Signature& sig, const Expr& x, const std::vector<std::string>& names);
std::string print_surface(const Signature& sig, const SurfaceTerm& t);

// Goals: [CTX "|-"] a ["=" b] [":" T]. CTX is a telescope such as
// "(x y : M)" or a combinator context such as "1.M", whose entries are named
// by the free variables of the goal in order of first appearance. With
// `raw`, a, b and T are combinator syntax.
struct Goal {
  NamedCtx ctx;
  Expr lhs;
  Expr rhs;  // nullptr unless an equation
  Expr ty;   // nullptr when not given
};

Goal parse_goal(const Signature& sig, std::string_view text, bool raw = false);

// a : T or a = b : T (T inferred when absent). Raw goals may also be types,
// or substitutions with the target context in place of T.
Derivation check_goal(const Signature& sig, const Goal& goal, const CheckerOptions& opts = {});

}  // namespace gat

#endif
