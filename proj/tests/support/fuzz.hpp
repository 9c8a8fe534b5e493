#ifndef GAT_TESTS_FUZZ_HPP
#define GAT_TESTS_FUZZ_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gat/checker.hpp"
#include "gat/derivation.hpp"
#include "gat/signature.hpp"
#include "gat/surface.hpp"

namespace gat::fuzz {

// A generated expression with its presuppositions:
//   term  ctx ⊢ x : cls
//   sub   ctx ⊢ x : cls   (cls is the target context)
//   type  ctx ⊢ x         (cls null)
//   ctx   x ⊢             (ctx, cls null)
struct Typed {
  Expr ctx;
  Expr x;
  Expr cls;
};

// Random well-typed combinator expressions over one signature.
//
// Levels are the prefixes Γ_0 = 1, Γ_1, …, Γ_n of a fixed telescope. Each
// level has a pool of base terms and types, found by elaborating random
// named terms over that prefix and keeping the ones that check. Everything
// else is built from the pools with the cwf combinators, so outputs carry
// plenty of cwf redexes. Outputs are well typed by construction; tests still
// run them through the checker.
class Fuzzer {
 public:
  Fuzzer(Signature sig, const std::string& telescope, std::uint64_t seed);

  const Signature& sig() const { return sig_; }
  Checker& checker() { return checker_; }
  std::mt19937_64& rng() { return rng_; }

  std::size_t levels() const { return levels_.size(); }
  const Expr& level(std::size_t i) const { return levels_[i].ctx; }
  std::size_t random_level();

  // Each returns nullopt when the budget or the pools run out; callers retry.
  std::optional<Expr> sub(std::size_t from, std::size_t to, int budget);
  std::optional<Typed> term(std::size_t at, int budget);
  std::optional<Expr> term_of_type(std::size_t at, const Expr& ty, int budget);
  std::optional<Expr> type(std::size_t at, int budget);
  // ⟨γ, a⟩_A from level `from` into Γ_to.A for a random A over Γ_to.
  std::optional<Typed> pair(std::size_t from, std::size_t to, int budget);

  // Retrying wrappers that respect measure(x).size <= max_size.
  Typed any_term(std::size_t max_size);
  Typed any_sub(std::size_t max_size);
  Typed any_type(std::size_t max_size);
  // A random class.
  Typed any(std::size_t max_size);

  // Base material, for tests that want it directly.
  const std::vector<Typed>& base_terms(std::size_t at) const { return levels_[at].terms; }
  const std::vector<Expr>& base_types(std::size_t at) const { return levels_[at].types; }

 private:
  struct Level {
    Expr ctx;
    NamedCtx named;
    std::vector<Typed> terms;
    std::vector<Expr> types;
  };

  Signature sig_;
  Checker checker_;
  std::mt19937_64 rng_;
  std::vector<Level> levels_;

  std::size_t below(std::size_t n);
  bool coin(double p);
  bool convertible(const Expr& ctx, const Expr& ty, const Expr& ty2);
  std::optional<SurfaceTerm> surface_term(const std::vector<std::string>& vars, int depth);
  std::optional<SurfaceTerm> surface_type(const std::vector<std::string>& vars, int depth);
  void fill(Level& level);
};

// One instance of a conversion schema. `form` is the equality form.
struct SchemaInstance {
  Form form;
  Expr ctx;  // Γ, or the source Δ for substitutions
  Expr lhs;
  Expr rhs;
  Expr cls;  // type or target context
};

// A random instance of conversion rule `rule` with lhs of size <= max_size.
// The nullary id_1 = ⟨⟩_1 is placed under a random substitution or term so
// instances differ.
std::optional<SchemaInstance> schema_instance(Fuzzer& f, Rule rule, std::size_t max_size);

// conv_* on an instance, in the given orientation.
Derivation convert_instance(Checker& ck, const SchemaInstance& s, bool flipped);

// A random chain of rewrite steps (any redex, any rule) from x; returns the
// last term reached.
Expr random_rewrites(Rewriter& rw, std::mt19937_64& rng, const Expr& x, std::size_t steps);

}  // namespace gat::fuzz

#endif
