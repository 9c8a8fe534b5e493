#ifndef GAT_SERIALIZE_HPP
#define GAT_SERIALIZE_HPP

#include <string>
#include <string_view>
#include <vector>

#include "gat/derivation.hpp"
#include "gat/signature.hpp"
#include "gat/syntax.hpp"

namespace gat {

// Tagged-tree JSON, one tag per constructor:
//   ["Pair", sub, tm, ty]   ["OpApp", "e"]   ["Empty"]
// Shared subtrees are written once: in a table, kids are indices into it.
std::string dump_expr(const Expr& x);
Expr load_expr(std::string_view json_text);

// A derivation file (.gatpf). Expressions and derivation nodes are stored as
// tables so shared subderivations stay shared. Reading only rebuilds the
// tree; nothing is checked until audit.
struct ProofFile {
  std::string theory;  // informational
  std::string goal;    // informational
  Derivation derivation;
  std::vector<std::string> trace;  // normalization steps, informational
};

std::string write_proof(const ProofFile& proof);
ProofFile read_proof(std::string_view json_text);

struct AuditResult {
  bool ok = false;
  Judgment conclusion;  // when ok
  std::string error;    // when not
  std::size_t nodes = 0;
};

// Re-checks every node with check_derivation.
AuditResult audit(const Signature& sig, const ProofFile& proof);

// Declarations as tagged trees, for tooling.
std::string dump_signature(const Signature& sig);

}  // namespace gat

#endif
