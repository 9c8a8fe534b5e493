#include "gat/rewrite.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>
#include <unordered_map>

#include "gat/presup.hpp"

namespace gat {
namespace {

std::atomic<std::size_t> next_rule_set_id{1};

Expr M(const char* name, ExprClass cls) { return mk::meta(name, cls); }

RewriteRule law(Rule rule, RuleOrigin origin, std::string name, Expr lhs, Expr rhs) {
  RewriteRule r;
  r.origin = origin;
  r.law = rule;
  r.name = std::move(name);
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  return r;
}

bool is_wildcard(const std::string& name) { return !name.empty() && name[0] == '_'; }
bool is_loose(const std::string& name) { return !name.empty() && name[0] == '~'; }

// "src(x)" → ("src", "x"); plain names give an empty function part.
std::pair<std::string, std::string> split_function_meta(const std::string& name) {
  auto open = name.find('(');
  if (open == std::string::npos || name.back() != ')') return {{}, name};
  return {name.substr(0, open), name.substr(open + 1, name.size() - open - 2)};
}

}  // namespace

RuleSet::RuleSet(Signature sig, std::vector<RewriteRule> rules, std::vector<std::string> skipped)
    : sig_(std::move(sig)), rules_(std::move(rules)), skipped_(std::move(skipped)), id_(next_rule_set_id++) {}

const std::vector<RewriteRule>& cwf_law_rules() {
  static const std::vector<RewriteRule> rules = [] {
    using C = ExprClass;
    auto A = M("A", C::Ty), B = M("B", C::Ty), a = M("a", C::Tm);
    auto g = M("g", C::Sub), d = M("d", C::Sub), x = M("x", C::Sub), G = M("G", C::Ctx);
    auto one = mk::empty();
    auto W = RuleOrigin::CwfLaw;
    auto U = RuleOrigin::UnitOne;
    return std::vector<RewriteRule>{
        law(Rule::TyId, W, "A[id]→A", mk::ty_subst(A, mk::id(G)), A),
        law(Rule::TmId, W, "a[id]→a", mk::tm_subst(a, mk::id(G)), a),
        law(Rule::TyComp, W, "A[γ][δ]→A[γ∘δ]", mk::ty_subst(mk::ty_subst(A, g), d), mk::ty_subst(A, mk::comp(g, d))),
        law(Rule::TmComp, W, "a[γ][δ]→a[γ∘δ]", mk::tm_subst(mk::tm_subst(a, g), d), mk::tm_subst(a, mk::comp(g, d))),
        law(Rule::IdL, W, "id∘γ→γ", mk::comp(mk::id(G), g), g),
        law(Rule::IdR, W, "γ∘id→γ", mk::comp(g, mk::id(G)), g),
        law(Rule::Assoc, W, "(γ∘δ)∘ξ→γ∘(δ∘ξ)", mk::comp(mk::comp(g, d), x), mk::comp(g, mk::comp(d, x))),
        law(Rule::IdEmpty, W, "id_1→⟨⟩_1", mk::id(one), mk::bang(one)),
        law(Rule::BangComp, W, "⟨⟩∘γ→⟨⟩", mk::comp(mk::bang(G), g), mk::bang(M("src(g)", C::Ctx))),
        law(Rule::PPair, W, "p∘⟨γ,a⟩→γ", mk::comp(mk::p(B), mk::pair(g, a, A)), g),
        law(Rule::QPair, W, "q[⟨γ,a⟩]→a", mk::tm_subst(mk::q(B), mk::pair(g, a, A)), a),
        law(Rule::PairComp, W, "⟨γ,a⟩∘δ→⟨γ∘δ,a[δ]⟩", mk::comp(mk::pair(g, a, A), d),
            mk::pair(mk::comp(g, d), mk::tm_subst(a, d), A)),
        law(Rule::TyId, U, "A[⟨⟩_1]→A", mk::ty_subst(A, mk::bang(one)), A),
        law(Rule::TmId, U, "a[⟨⟩_1]→a", mk::tm_subst(a, mk::bang(one)), a),
        law(Rule::IdR, U, "γ∘⟨⟩_1→γ", mk::comp(g, mk::bang(one)), g),
    };
  }();
  return rules;
}

RuleSet cwf_rule_set(const Signature& sig) { return RuleSet(sig, cwf_law_rules()); }

Expr generic_substitution(const Expr& ctx, const Expr& delta, const std::vector<Expr>& terms) {
  std::vector<Expr> types;
  for (Expr c = ctx; c->kind == Kind::Ext; c = c->kid(0)) types.push_back(c->kid(1));
  std::reverse(types.begin(), types.end());
  if (types.size() != terms.size()) fail(ErrorKind::IllFormed, "generic substitution: length mismatch");
  Expr s = mk::bang(delta);
  for (std::size_t i = 0; i < types.size(); ++i) s = mk::pair(s, terms[i], types[i]);
  return s;
}

namespace {

std::size_t ctx_length(const Expr& ctx) {
  std::size_t n = 0;
  for (Expr c = ctx; c->kind == Kind::Ext; c = c->kid(0)) ++n;
  return n;
}

Expr wildcard_annotations(const Expr& x, std::size_t& counter) {
  if (x->kids.empty()) return x;
  std::vector<Expr> kids;
  kids.reserve(x->kids.size());
  bool changed = false;
  for (std::size_t i = 0; i < x->kids.size(); ++i) {
    Expr k = is_annotation(x->kind, i) ? mk::meta("_" + std::to_string(counter++), x->kid(i)->cls)
                                       : wildcard_annotations(x->kid(i), counter);
    changed = changed || k != x->kid(i);
    kids.push_back(std::move(k));
  }
  return changed ? mk::rebuild(x, std::move(kids)) : x;
}

// Implicit arguments of an operator are determined by the explicit ones, but
// only up to conversion, so their slots must not constrain a match: a bare
// variable there binds loosely and anything else becomes a wildcard.
Expr loosen_implicits(const Signature& sig, const Expr& x, std::size_t& counter) {
  if (x->kids.empty()) return x;
  std::vector<Expr> kids = x->kids;
  std::vector<bool> done(kids.size(), false);
  if ((x->kind == Kind::TySubst || x->kind == Kind::TmSubst) &&
      (x->kid(0)->kind == Kind::SortApp || x->kid(0)->kind == Kind::OpApp)) {
    const Declaration* d = sig.find(x->kid(0)->name);
    if (d && d->telescope && d->telescope->size() == ctx_length(d->ctx)) {
      const Telescope& tele = *d->telescope;
      std::vector<Expr> chain;
      Expr s = x->kid(1);
      for (; s->kind == Kind::Pair; s = s->kid(0)) chain.push_back(s);
      if (chain.size() == tele.size()) {
        // chain runs innermost last; rebuild it from the inside out
        Expr cur = s;
        for (std::size_t i = 0; i < tele.size(); ++i) {
          const Expr& pair = chain[tele.size() - 1 - i];
          Expr arg = pair->kid(1);
          if (!tele[i].implicit) {
            arg = loosen_implicits(sig, arg, counter);
          } else if (arg->kind == Kind::Meta && !is_wildcard(arg->name) && !is_loose(arg->name) &&
                     split_function_meta(arg->name).first.empty()) {
            arg = mk::meta("~" + arg->name, arg->cls);
          } else {
            arg = mk::meta("_" + std::to_string(counter++), arg->cls);
          }
          cur = mk::pair(cur, arg, pair->kid(2));
        }
        kids[1] = cur;
        done[1] = true;
      }
    }
  }
  bool changed = false;
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (!done[i]) kids[i] = loosen_implicits(sig, x->kid(i), counter);
    changed = changed || kids[i] != x->kid(i);
  }
  return changed ? mk::rebuild(x, std::move(kids)) : x;
}

void skeleton_metas(const Expr& x, std::set<std::string>& out) {
  if (x->kind == Kind::Meta) {
    if (!is_wildcard(x->name)) out.insert(is_loose(x->name) ? x->name.substr(1) : x->name);
    return;
  }
  for (std::size_t i = 0; i < x->kids.size(); ++i) {
    if (!is_annotation(x->kind, i)) skeleton_metas(x->kid(i), out);
  }
}

void all_metas(const Expr& x, std::set<std::string>& out) {
  for_each_node(x, [&](const Expr& n) {
    if (n->kind == Kind::Meta) out.insert(split_function_meta(n->name).second);
  });
}

}  // namespace

std::optional<RewriteRule> compile_equation(const Signature& sig, const Declaration& decl, bool reversed,
                                            std::string* why) {
  auto reject = [&](std::string reason) -> std::optional<RewriteRule> {
    if (why) *why = decl.name + ": " + reason;
    return std::nullopt;
  };
  std::size_t n = ctx_length(decl.ctx);
  std::vector<Expr> vars;
  for (std::size_t i = 1; i <= n; ++i) vars.push_back(mk::meta("x" + std::to_string(i), ExprClass::Tm));
  Expr sigma = generic_substitution(decl.ctx, mk::meta(kRedexCtx, ExprClass::Ctx), vars);
  Expr l = mk::tm_subst(reversed ? decl.rhs : decl.lhs, sigma);
  Expr r = mk::tm_subst(reversed ? decl.lhs : decl.rhs, sigma);
  Rewriter cwf(cwf_rule_set(sig));
  Expr ln, rn;
  try {
    ln = cwf.reduce(l);
    rn = cwf.reduce(r);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::FuelExhausted) throw;
    return reject("pattern normalization ran out of fuel");
  }
  if (ln->kind == Kind::Meta) return reject("left side is a bare variable");
  std::size_t counter = 0;
  Expr lhs = loosen_implicits(sig, wildcard_annotations(ln, counter), counter);
  std::set<std::string> bound, used;
  skeleton_metas(lhs, bound);
  bound.insert(kRedexCtx);
  all_metas(rn, used);
  for (const auto& m : used) {
    if (!bound.count(m)) return reject("right side uses " + m + ", which the left side does not bind");
  }
  RewriteRule rule;
  rule.origin = RuleOrigin::SigEquation;
  rule.law = Rule::EqAxiom;
  rule.label = decl.name;
  rule.name = decl.name + (reversed ? " (←)" : "");
  rule.reversed = reversed;
  rule.lhs = lhs;
  rule.rhs = rn;
  rule.modulo_terminal = true;
  return rule;
}

namespace {

bool same_expr(const Expr& x, const Expr& y) { return x && y ? struct_eq(x, y) : !x && !y; }

bool same_decl(const Declaration& a, const Declaration& b) {
  return a.kind == b.kind && a.name == b.name && a.orient == b.orient && same_expr(a.ctx, b.ctx) &&
         same_expr(a.ty, b.ty) && same_expr(a.lhs, b.lhs) && same_expr(a.rhs, b.rhs);
}

// An equation compiles the same way over any signature that agrees with this
// one up to and including it, so compiled rules are kept per prefix.
struct CompiledEq {
  std::vector<Declaration> prefix;
  std::optional<RewriteRule> rule;
  std::string why;
};

std::mutex compiled_mu;
std::unordered_multimap<std::size_t, CompiledEq> compiled;

std::size_t decl_hash(std::size_t h, const Declaration& d) {
  auto m = [&](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  m(std::hash<std::string>{}(d.name));
  m(static_cast<std::size_t>(d.kind) * 3 + static_cast<std::size_t>(d.orient));
  for (const Expr& e : {d.ctx, d.ty, d.lhs, d.rhs}) m(e ? e->hash : 0);
  return h;
}

}  // namespace

RuleSet signature_rule_set(const Signature& sig) {
  std::vector<RewriteRule> rules = cwf_law_rules();
  std::vector<std::string> skipped;
  const auto& decls = sig.decls();
  std::size_t h = 0;
  for (std::size_t i = 0; i < decls.size(); ++i) {
    const Declaration& d = decls[i];
    h = decl_hash(h, d);
    if (d.kind != DeclKind::Equation || d.orient == Orientation::Unoriented) continue;
    std::optional<RewriteRule> r;
    std::string why;
    bool hit = false;
    {
      std::lock_guard<std::mutex> lock(compiled_mu);
      auto [lo, end] = compiled.equal_range(h);
      for (auto it = lo; it != end && !hit; ++it) {
        const auto& pre = it->second.prefix;
        if (pre.size() != i + 1) continue;
        bool same = true;
        for (std::size_t j = 0; j <= i && same; ++j) same = same_decl(pre[j], decls[j]);
        if (same) {
          r = it->second.rule;
          why = it->second.why;
          hit = true;
        }
      }
    }
    if (!hit) {
      r = compile_equation(sig, d, d.orient == Orientation::RightToLeft, &why);
      std::lock_guard<std::mutex> lock(compiled_mu);
      compiled.emplace(h, CompiledEq{{decls.begin(), decls.begin() + i + 1}, r, why});
    }
    if (r) {
      rules.push_back(std::move(*r));
    } else {
      skipped.push_back(why);
    }
  }
  return RuleSet(sig, std::move(rules), std::move(skipped));
}

namespace {

// Names bound only by loose occurrences so far; a strict occurrence
// replaces such a binding instead of being checked against it.
using LooseSet = std::set<std::string>;

bool bind(Bindings& b, LooseSet& loose, const Expr& meta, const Expr& term, bool annotation) {
  if (meta->cls != term->cls) return false;
  if (is_loose(meta->name)) {
    std::string name = meta->name.substr(1);
    if (b.emplace(name, term).second) loose.insert(name);
    return true;
  }
  auto it = b.find(meta->name);
  if (it == b.end()) {
    b.emplace(meta->name, term);
    return true;
  }
  if (loose.erase(meta->name)) {
    it->second = term;
    return true;
  }
  return annotation || is_wildcard(meta->name) || struct_eq(it->second, term);
}

bool targets_one(const Signature& sig, const Expr& s) {
  try {
    return tgt(sig, s)->kind == Kind::Empty;
  } catch (const Error&) {
    return false;
  }
}

bool match_rec(const RewriteRule& rule, const Signature& sig, const Expr& pat, const Expr& term, Bindings& b,
               LooseSet& loose, bool annotation) {
  if (pat->kind == Kind::Meta) return bind(b, loose, pat, term, annotation);
  if (rule.modulo_terminal && pat->kind == Kind::Bang && term->kind != Kind::Bang && term->cls == ExprClass::Sub) {
    return targets_one(sig, term);
  }
  if (pat->kind != term->kind) {
    if (rule.modulo_terminal && (pat->kind == Kind::TySubst || pat->kind == Kind::TmSubst) &&
        pat->kid(1)->kind == Kind::Bang && pat->kid(0)->kind != Kind::Meta) {
      return match_rec(rule, sig, pat->kid(0), term, b, loose, annotation);
    }
    return false;
  }
  if (pat->name != term->name || pat->kids.size() != term->kids.size()) return false;
  for (std::size_t i = 0; i < pat->kids.size(); ++i) {
    if (!match_rec(rule, sig, pat->kid(i), term->kid(i), b, loose, annotation || is_annotation(pat->kind, i)))
      return false;
  }
  return true;
}

}  // namespace

bool match(const RewriteRule& rule, const Signature& sig, const Expr& pattern, const Expr& term, Bindings& b) {
  LooseSet loose;
  return match_rec(rule, sig, pattern, term, b, loose, false);
}

Expr instantiate(const Signature& sig, const Expr& pattern, const Bindings& b) {
  if (pattern->kind == Kind::Meta) {
    auto it = b.find(pattern->name);
    if (it != b.end()) return it->second;
    auto [fn, base] = split_function_meta(pattern->name);
    if (fn.empty()) return pattern;
    auto jt = b.find(base);
    if (jt == b.end()) return pattern;
    const Expr& v = jt->second;
    if (fn == "src") return src(sig, v);
    if (fn == "tgt") return tgt(sig, v);
    if (fn == "ctx") return ctx_of(sig, v);
    if (fn == "type") return type_of(sig, v);
    return pattern;
  }
  if (pattern->kids.empty()) return pattern;
  std::vector<Expr> kids;
  kids.reserve(pattern->kids.size());
  bool changed = false;
  for (const auto& k : pattern->kids) {
    kids.push_back(instantiate(sig, k, b));
    changed = changed || kids.back() != k;
  }
  return changed ? mk::rebuild(pattern, std::move(kids)) : pattern;
}

std::optional<std::pair<Expr, Bindings>> apply_at_root(const RuleSet& rules, std::size_t r, const Expr& x) {
  const RewriteRule& rule = rules.rules()[r];
  if (rule.lhs->cls != x->cls) return std::nullopt;
  Bindings b;
  if (!match(rule, rules.sig(), rule.lhs, x, b)) return std::nullopt;
  try {
    if (rule.origin == RuleOrigin::SigEquation) b[kRedexCtx] = ctx_of(rules.sig(), x);
    Expr out = instantiate(rules.sig(), rule.rhs, b);
    return std::make_pair(out, std::move(b));
  } catch (const Error&) {
    // Presuppositions of ill-formed input cannot be computed; not a redex.
    return std::nullopt;
  }
}

Expr subterm(const Expr& x, const Path& path) {
  Expr cur = x;
  for (std::size_t i : path) cur = cur->kid(i);
  return cur;
}

Expr replace_at(const Expr& x, const Path& path, std::size_t depth, const Expr& replacement) {
  if (depth == path.size()) return replacement;
  std::vector<Expr> kids = x->kids;
  kids[path[depth]] = replace_at(x->kid(path[depth]), path, depth + 1, replacement);
  return mk::rebuild(x, std::move(kids));
}

bool Rewriter::find(const Expr& x, Path& path, Redex& out) {
  if (normal_.count(x.get())) return false;
  for (std::size_t r = 0; r < rules_.rules().size(); ++r) {
    if (auto hit = apply_at_root(rules_, r, x)) {
      out.path = path;
      out.rule = r;
      out.bindings = std::move(hit->second);
      out.replacement = std::move(hit->first);
      return true;
    }
  }
  for (std::size_t i = 0; i < x->kids.size(); ++i) {
    path.push_back(i);
    if (find(x->kid(i), path, out)) return true;
    path.pop_back();
  }
  normal_.insert(x.get());
  keep_.push_back(x);
  return false;
}

std::optional<Redex> Rewriter::first_redex(const Expr& x) {
  Path path;
  Redex out;
  if (find(x, path, out)) return out;
  return std::nullopt;
}

void Rewriter::collect(const Expr& x, Path& path, std::vector<Redex>& out) {
  for (std::size_t r = 0; r < rules_.rules().size(); ++r) {
    if (auto hit = apply_at_root(rules_, r, x)) out.push_back({path, r, std::move(hit->second), std::move(hit->first)});
  }
  for (std::size_t i = 0; i < x->kids.size(); ++i) {
    path.push_back(i);
    collect(x->kid(i), path, out);
    path.pop_back();
  }
}

std::vector<Redex> Rewriter::all_redexes(const Expr& x) {
  std::vector<Redex> out;
  Path path;
  collect(x, path, out);
  return out;
}

NormalizeResult Rewriter::normalize(const Expr& x, std::size_t fuel) {
  NormalizeResult res;
  res.trace.start = x;
  Expr cur = x;
  while (auto redex = first_redex(cur)) {
    if (res.trace.steps.size() >= fuel) {
      res.exhausted = true;
      break;
    }
    cur = replace_at(cur, redex->path, 0, redex->replacement);
    res.trace.steps.push_back({std::move(redex->path), redex->rule, std::move(redex->bindings), cur});
  }
  res.nf = cur;
  return res;
}

Expr Rewriter::normal_form(const Expr& x, std::size_t fuel) {
  auto res = normalize(x, fuel);
  if (res.exhausted) fail(ErrorKind::FuelExhausted, "normalization exceeded " + std::to_string(fuel) + " steps");
  return res.nf;
}

Expr Rewriter::reduce(const Expr& x, std::size_t fuel) {
  std::size_t left = fuel;
  return reduce_rec(x, left);
}

Expr Rewriter::reduce_rec(const Expr& x, std::size_t& fuel) {
  auto it = reduced_.find(x);
  if (it != reduced_.end()) return it->second;
  Expr cur = x;
  for (;;) {
    bool stepped = false;
    for (std::size_t r = 0; r < rules_.rules().size() && !stepped; ++r) {
      auto hit = apply_at_root(rules_, r, cur);
      if (!hit) continue;
      if (fuel == 0) fail(ErrorKind::FuelExhausted, "normalization exceeded its step budget");
      --fuel;
      cur = hit->first;
      stepped = true;
    }
    if (stepped) continue;
    std::vector<Expr> kids;
    bool changed = false;
    for (const auto& k : cur->kids) {
      kids.push_back(reduce_rec(k, fuel));
      changed |= kids.back() != k;
    }
    if (!changed) break;
    cur = mk::rebuild(cur, std::move(kids));
  }
  reduced_.emplace(x, cur);
  return cur;
}

std::vector<Expr> Rewriter::all_normal_forms(const Expr& x, std::size_t limit, bool* complete) {
  std::unordered_set<Expr, ExprHash, ExprEq> seen;
  std::unordered_set<Expr, ExprHash, ExprEq> nfs;
  std::vector<Expr> stack{x};
  seen.insert(x);
  bool ok = true;
  while (!stack.empty()) {
    Expr cur = stack.back();
    stack.pop_back();
    auto redexes = all_redexes(cur);
    if (redexes.empty()) {
      nfs.insert(cur);
      continue;
    }
    for (auto& r : redexes) {
      Expr next = replace_at(cur, r.path, 0, r.replacement);
      if (seen.count(next)) continue;
      if (seen.size() >= limit) {
        ok = false;
        continue;
      }
      seen.insert(next);
      stack.push_back(next);
    }
  }
  if (complete) *complete = ok;
  return {nfs.begin(), nfs.end()};
}

NormalizeResult normalize(const RuleSet& rules, const Expr& x, std::size_t fuel) {
  Rewriter rw(rules);
  return rw.normalize(x, fuel);
}

std::optional<Joinable> joinable(const RuleSet& rules, const Expr& x, const Expr& y, std::size_t fuel) {
  Rewriter rw(rules);
  auto nx = rw.normalize(x, fuel);
  auto ny = rw.normalize(y, fuel);
  if (nx.exhausted || ny.exhausted) fail(ErrorKind::FuelExhausted, "joinability check exceeded fuel");
  if (!struct_eq(nx.nf, ny.nf)) return std::nullopt;
  return Joinable{std::move(nx.trace), std::move(ny.trace)};
}

namespace {

// Syntactic unification over metavariables, for overlap computation.
class Unifier {
 public:
  std::unordered_map<std::string, Expr> subst;

  Expr resolve(const Expr& x) const {
    if (x->kind == Kind::Meta) {
      auto it = subst.find(x->name);
      if (it != subst.end()) return resolve(it->second);
      return x;
    }
    if (x->kids.empty()) return x;
    std::vector<Expr> kids;
    for (const auto& k : x->kids) kids.push_back(resolve(k));
    return mk::rebuild(x, std::move(kids));
  }

  bool occurs(const std::string& name, const Expr& x) const {
    if (x->kind == Kind::Meta) {
      if (x->name == name) return true;
      auto it = subst.find(x->name);
      return it != subst.end() && occurs(name, it->second);
    }
    for (const auto& k : x->kids) {
      if (occurs(name, k)) return true;
    }
    return false;
  }

  bool unify(const Expr& a0, const Expr& b0) {
    Expr a = walk(a0), b = walk(b0);
    if (a->cls != b->cls) return false;
    if (a->kind == Kind::Meta && b->kind == Kind::Meta && a->name == b->name) return true;
    if (a->kind == Kind::Meta) return assign(a, b);
    if (b->kind == Kind::Meta) return assign(b, a);
    if (a->kind != b->kind || a->name != b->name || a->kids.size() != b->kids.size()) return false;
    for (std::size_t i = 0; i < a->kids.size(); ++i) {
      if (!unify(a->kid(i), b->kid(i))) return false;
    }
    return true;
  }

 private:
  Expr walk(const Expr& x) const {
    Expr cur = x;
    while (cur->kind == Kind::Meta) {
      auto it = subst.find(cur->name);
      if (it == subst.end()) break;
      cur = it->second;
    }
    return cur;
  }

  bool assign(const Expr& meta, const Expr& value) {
    if (occurs(meta->name, value)) return false;
    subst[meta->name] = value;
    return true;
  }
};

// Also drops loose marks, so overlaps treat every occurrence as binding.
Expr rename(const Expr& x, const std::string& suffix) {
  if (x->kind == Kind::Meta) {
    auto [fn, base] = split_function_meta(is_loose(x->name) ? x->name.substr(1) : x->name);
    return mk::meta(fn.empty() ? base + suffix : fn + "(" + base + suffix + ")", x->cls);
  }
  if (x->kids.empty()) return x;
  std::vector<Expr> kids;
  for (const auto& k : x->kids) kids.push_back(rename(k, suffix));
  return mk::rebuild(x, std::move(kids));
}

void positions(const Expr& x, Path& path, std::vector<Path>& out) {
  if (x->kind == Kind::Meta) return;
  out.push_back(path);
  for (std::size_t i = 0; i < x->kids.size(); ++i) {
    path.push_back(i);
    positions(x->kid(i), path, out);
    path.pop_back();
  }
}

Bindings bindings_of(const Unifier& u, const Expr& pattern) {
  Bindings b;
  for_each_node(pattern, [&](const Expr& n) {
    if (n->kind == Kind::Meta) b[n->name] = u.resolve(n);
  });
  return b;
}

}  // namespace

std::vector<CriticalPair> critical_pairs(const RuleSet& rules) {
  std::vector<CriticalPair> out;
  const auto& rs = rules.rules();
  for (std::size_t i = 0; i < rs.size(); ++i) {
    std::vector<Path> ps;
    Path scratch;
    Expr outer_lhs = rename(rs[i].lhs, "");
    positions(outer_lhs, scratch, ps);
    for (const auto& p : ps) {
      Expr site = subterm(outer_lhs, p);
      for (std::size_t j = 0; j < rs.size(); ++j) {
        if (i == j && p.empty()) continue;
        Expr inner_lhs = rename(rs[j].lhs, "'");
        Expr inner_rhs = rename(rs[j].rhs, "'");
        if (inner_lhs->cls != site->cls) continue;
        Unifier u;
        if (!u.unify(site, inner_lhs)) continue;
        try {
          Expr peak = u.resolve(outer_lhs);
          Expr left = instantiate(rules.sig(), rs[i].rhs, bindings_of(u, outer_lhs));
          Expr right = replace_at(peak, p, 0, instantiate(rules.sig(), inner_rhs, bindings_of(u, inner_lhs)));
          out.push_back({i, j, p, peak, left, right});
        } catch (const Error&) {
          // An overlap whose presuppositions cannot be computed is not a
          // well-formed peak.
        }
      }
    }
  }
  return out;
}

std::string print_trace(const RuleSet& rules, const Trace& trace) {
  std::ostringstream out;
  out << "   " << print_expr(trace.start) << "\n";
  std::size_t n = 0;
  for (const auto& s : trace.steps) {
    out << ++n << ". [";
    for (std::size_t k = 0; k < s.path.size(); ++k) out << (k ? "." : "") << s.path[k];
    out << "] " << rules.rules()[s.rule].name << "\n   " << print_expr(s.result) << "\n";
  }
  return out.str();
}

}  // namespace gat
