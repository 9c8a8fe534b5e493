#ifndef GAT_TESTS_COMMON_HPP
#define GAT_TESTS_COMMON_HPP

#include <optional>
#include <string>

#include "gat/error.hpp"
#include "gat/syntax.hpp"

namespace gat::testing {

// Hand-built monoid syntax, independent of the elaborator.
inline Expr one() { return mk::empty(); }
inline Expr M() { return mk::sort("M"); }
inline Expr e() { return mk::op("e"); }
inline Expr star() { return mk::op("*"); }
inline Expr ctx_M() { return mk::ext(one(), M()); }
inline Expr pM() { return mk::p(M()); }
inline Expr M_p() { return mk::ty_subst(M(), pM()); }
inline Expr ctx_MM() { return mk::ext(ctx_M(), M_p()); }
inline Expr qM() { return mk::q(M()); }
// ⟨⟨⟩_Γ, a⟩_M : Γ → 1.M
inline Expr arg1(Expr gamma, Expr a) { return mk::pair(mk::bang(std::move(gamma)), std::move(a), M()); }
// *(a, b) in context Γ: *[⟨⟨⟨⟩_Γ, a⟩_M, b⟩_{M[p]}]
inline Expr mul(const Expr& gamma, Expr a, Expr b) {
  return mk::tm_subst(star(), mk::pair(arg1(gamma, std::move(a)), std::move(b), M_p()));
}
// *[⟨⟨⟨⟩,e[⟨⟩]⟩,q⟩] at 1.M
inline Expr lunit_lhs() { return mul(ctx_M(), mk::tm_subst(e(), mk::bang(ctx_M())), qM()); }

// The error kind `f` throws, if any.
template <class F>
std::optional<ErrorKind> error_of(F&& f) {
  try {
    f();
  } catch (const Error& err) {
    return err.kind();
  }
  return std::nullopt;
}

}  // namespace gat::testing

#ifdef DOCTEST_LIBRARY_INCLUDED
namespace doctest {
template <>
struct StringMaker<gat::ErrorKind> {
  static String convert(gat::ErrorKind k) { return std::string(gat::to_string(k)).c_str(); }
};
template <>
struct StringMaker<std::optional<gat::ErrorKind>> {
  static String convert(const std::optional<gat::ErrorKind>& k) {
    return k ? std::string(gat::to_string(*k)).c_str() : "no error";
  }
};
}  // namespace doctest
#endif

#endif
