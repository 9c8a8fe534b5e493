#ifndef GAT_CORPUS_HPP
#define GAT_CORPUS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "gat/semantics.hpp"
#include "gat/signature.hpp"

namespace gat {

struct DeclCounts {
  std::size_t sorts = 0;
  std::size_t ops = 0;
  std::size_t eqs = 0;
  bool operator==(const DeclCounts&) const = default;
};

DeclCounts count_decls(const Signature& sig);

// A goal in CLI syntax that must check over the example's signature.
struct GoldenJudgment {
  std::string goal;
  bool equation = false;
};

struct NamedExample {
  std::string name;
  std::string summary;
  Signature sig;
  DeclCounts counts;  // audited counts the signature must reproduce
  std::vector<Model> models;
  std::vector<GoldenJudgment> golden;
};

// Registered names, in dependency order.
std::vector<std::string> corpus_names();

// Elaborates and validates the example; throws UnknownExample.
NamedExample build(const std::string& name);

// Source text of the registered theories and models (compiled in).
std::string theory_source(const std::string& name);
std::string model_source(const std::string& name);
std::vector<std::string> model_names();

// Σ₁…Σ₆: the monoid signature after each of its six declarations.
std::vector<Signature> monoid_stages();

}  // namespace gat

#endif
