#include "gat/corpus.hpp"

#include <map>
#include <mutex>

#include "gat/error.hpp"
#include "gat/surface.hpp"

namespace gat {

namespace corpus_data {
// Generated from theories/ and models/ at configure time.
const std::map<std::string, std::string>& theories();
const std::map<std::string, std::string>& models();
}  // namespace corpus_data

namespace {

struct Entry {
  std::string name;
  std::string summary;
  std::string theory;  // source file
  std::string last;    // last declaration taken from it; empty for all
  DeclCounts counts;
  std::vector<std::string> models;
  std::vector<GoldenJudgment> golden;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {"monoid",
       "monoids: one sort, unit, multiplication",
       "monoid",
       "",
       {1, 2, 3},
       {"z2", "z3"},
       {{"(y : M) |- *(e, y) = y : M", true},
        {"(x y : M) |- *(*(e, x), *(y, e)) = *(x, y) : M", true},
        {"(x y z w : M) |- *(*(*(x, y), z), w) = *(x, *(y, *(z, w))) : M", true},
        {"|- *(e, e) : M", false}}},
      {"category",
       "categories with implicit objects on composition",
       "category",
       "",
       {2, 2, 3},
       {"category-2"},
       {{"(Δ Γ : obj) (γ : hom(Δ, Γ)) |- comp(ident(Γ), comp(γ, ident(Δ))) = γ : hom(Δ, Γ)", true},
        {"(Θ Ξ Δ Γ : obj) (γ : hom(Δ, Γ)) (δ : hom(Ξ, Δ)) (ξ : hom(Θ, Ξ)) "
         "|- comp(comp(γ, ident(Δ)), comp(δ, ξ)) = comp(comp(γ, δ), ξ) : hom(Θ, Γ)",
         true}}},
      {"internal-cwf",
       "categories with families as a theory",
       "internal-cwf",
       "",
       {4, 10, 13},
       {},
       {{"(Γ : ctx) (A : ty(Γ)) |- tysub(A, comp(ident(Γ), ident(Γ))) = A : ty(Γ)", true},
        {"(Γ Δ : ctx) (A : ty(Γ)) (γ : hom(Δ, Γ)) (a : tm(Δ, tysub(A, γ))) "
         "|- comp(bang(Γ), comp(wk, pair(γ, a))) = bang(Δ) : hom(Δ, one)",
         true}}},
      {"cwf-pi",
       "internal cwf with Π",
       "cwf-pi-n-u0",
       "eta",
       {4, 13, 18},
       {},
       {}},
      {"cwf-pi-n",
       "internal cwf with Π and N",
       "cwf-pi-n-u0",
       "R_succ",
       {4, 17, 24},
       {},
       {}},
      {"cwf-pi-n-u0",
       "internal cwf with Π, N and a universe U0 closed under both",
       "cwf-pi-n-u0",
       "",
       {4, 21, 30},
       {},
       {{"(Γ : ctx) |- T0(N0(Γ)) = N(Γ) : ty(Γ)", true},
        {"(Γ : ctx) (a : tm(Γ, U0(Γ))) (b : tm(ext(Γ, T0(a)), U0(ext(Γ, T0(a))))) "
         "|- T0(Pi0(a, b)) = Pi(T0(a), T0(b)) : ty(Γ)",
         true},
        {"(Γ Δ : ctx) (γ : hom(Δ, Γ)) |- T0(tmsub(N0(Γ), γ)) = N(Δ) : ty(Δ)", true}}},
  };
  return entries;
}

const Entry& entry(const std::string& name) {
  for (const auto& e : registry())
    if (e.name == name) return e;
  fail(ErrorKind::UnknownExample, "no example named '" + name + "'");
}

const std::string& lookup_text(const std::map<std::string, std::string>& m, const std::string& name,
                               const char* what) {
  auto it = m.find(name);
  if (it == m.end()) fail(ErrorKind::UnknownExample, std::string("no ") + what + " named '" + name + "'");
  return it->second;
}

Signature elaborate_entry(const Entry& e) {
  SurfaceFile f = parse_gat(theory_source(e.theory));
  if (!e.last.empty()) {
    std::size_t n = 0;
    while (n < f.decls.size() && f.decls[n].name != e.last) ++n;
    if (n == f.decls.size()) fail(ErrorKind::NotFound, e.theory + " has no declaration " + e.last);
    f.decls.resize(n + 1);
  }
  return elaborate_all(f);
}

}  // namespace

DeclCounts count_decls(const Signature& sig) {
  return {sig.count(DeclKind::Sort), sig.count(DeclKind::Operator), sig.count(DeclKind::Equation)};
}

std::vector<std::string> corpus_names() {
  std::vector<std::string> out;
  for (const auto& e : registry()) out.push_back(e.name);
  return out;
}

std::string theory_source(const std::string& name) { return lookup_text(corpus_data::theories(), name, "theory"); }
std::string model_source(const std::string& name) { return lookup_text(corpus_data::models(), name, "model"); }

std::vector<std::string> model_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : corpus_data::models()) out.push_back(k);
  return out;
}

NamedExample build(const std::string& name) {
  const Entry& e = entry(name);
  // Elaboration of the larger theories takes seconds; signatures are values,
  // so one per name is enough.
  static std::mutex mu;
  static std::map<std::string, Signature> built;
  Signature sig;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = built.find(name);
    if (it != built.end()) sig = it->second;
  }
  if (sig.empty()) {
    sig = elaborate_entry(e);
    std::lock_guard<std::mutex> lock(mu);
    built.emplace(name, sig);
  }
  NamedExample ex{e.name, e.summary, sig, e.counts, {}, e.golden};
  for (const auto& m : e.models) ex.models.push_back(load_model(model_source(m)));
  return ex;
}

std::vector<Signature> monoid_stages() {
  Signature full = build("monoid").sig;
  std::vector<Signature> out;
  for (std::size_t k = 1; k <= full.size(); ++k) out.push_back(full.prefix(k));
  return out;
}

}  // namespace gat
