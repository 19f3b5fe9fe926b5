#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "w22hv/verma.hpp"

namespace w22hv {

/// W(n) acting on a Heisenberg-Virasoro module with central character
/// (c_L, 0, c_{L,I}):
///
///   W(n) = -2 c_{L,I} (n+1) I(n) + sum_i :I(-i) I(n+i):
///
/// with the normal ordering that applies the larger-index factor first
/// (creation modes left). On a graded vector the sum truncates on its own;
/// both orderings agree since the I-modes commute at level zero.
inline ModuleVector w_mode(int n, const ModuleVector& x, const QuotientModel& host) {
  if (host.spec().kind != AlgebraKind::HV)
    throw std::invalid_argument("w_mode: host must be a Heisenberg-Virasoro module");
  if (x.zero()) return {};
  ModuleVector out;
  for (const auto& [lvl, part] : x.split_levels()) {
    ModuleVector res = host.apply(igen(n), part);
    res *= Rational(-2 * (n + 1)) * host.spec().charges.c_li;
    for (int i = -lvl; i <= lvl - n; ++i) {
      const int a = -i, b = n + i;
      const int first = std::max(a, b), second = std::min(a, b);
      ModuleVector t = host.apply(igen(first), part);
      if (t.zero()) continue;
      t = host.apply(igen(second), t);
      res += t;
    }
    out += res;
  }
  return out;
}

/// The W(2,2) action on a fixed Heisenberg-Virasoro host induced by the
/// vertex algebra embedding, with per-monomial and per-(mode, level)
/// caching. The host must outlive the action; caches are filled on first
/// use and read-only afterwards.
class PsiAction {
 public:
  explicit PsiAction(const QuotientModel& host) : host_(&host) {}

  const QuotientModel& host() const { return *host_; }

  ModuleVector w(int n, const ModuleVector& x) {
    ModuleVector out;
    for (const auto& [mono, c] : x.terms()) {
      ModuleVector t = w_mono(n, mono);
      t *= c;
      out += t;
    }
    return out;
  }
  ModuleVector l(int n, const ModuleVector& x) const { return host_->apply(vir(n), x); }

  const ModuleVector& w_mono(int n, const PBWMonomial& mono) {
    auto key = std::make_pair(n, mono.str('I'));
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    ModuleVector r = w_mode(n, ModuleVector::unit(mono), *host_);
    return memo_.emplace(std::move(key), std::move(r)).first->second;
  }

  /// Matrix of W(n) from host level `level` to level `level - n`.
  const LevelMatrix& w_matrix(int n, int level) {
    auto key = std::make_pair(n, level);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    LevelMatrix lm;
    lm.from_level = level;
    lm.to_level = level - n;
    lm.domain_basis = host_->basis(level);
    lm.codomain_basis = lm.to_level < 0 ? std::vector<PBWMonomial>{} : host_->basis(lm.to_level);
    lm.mat = MatQ(lm.codomain_basis.size(), lm.domain_basis.size());
    for (size_t j = 0; j < lm.domain_basis.size(); ++j) {
      ModuleVector img = w_mono(n, lm.domain_basis[j]);
      if (lm.to_level < 0) continue;
      auto c = host_->coords(img, lm.to_level);
      for (size_t r = 0; r < c.size(); ++r) lm.mat.at(r, j) = c[r];
    }
    return cache_.emplace(key, std::move(lm)).first->second;
  }

 private:
  const QuotientModel* host_;
  std::map<std::pair<int, std::string>, ModuleVector> memo_;
  std::map<std::pair<int, int>, LevelMatrix> cache_;
};

/// Negative W(2,2) action on an HV host: degree j applies W(-j) (through the
/// embedding) and L(-j). One memo is shared across all calls.
inline NegativeAction psi_action(const QuotientModel& host) {
  auto psi = std::make_shared<PsiAction>(host);
  return [psi, &host](int j, const ModuleVector& v) {
    return std::vector<ModuleVector>{psi->w(-j, v), host.apply(vir(-j), v)};
  };
}

/// Annihilators certifying W(2,2)-singularity on an HV host:
/// {L(1), L(2), W(1), W(2)} with the W modes taken through the embedding.
inline std::vector<LoweringOp> w22_killers(const QuotientModel& host) {
  auto psi = std::make_shared<PsiAction>(host);
  std::vector<LoweringOp> ops;
  ops.push_back(LoweringOp{1, [&host](const ModuleVector& v) { return host.apply(vir(1), v); }});
  ops.push_back(LoweringOp{2, [&host](const ModuleVector& v) { return host.apply(vir(2), v); }});
  ops.push_back(LoweringOp{1, [psi](const ModuleVector& v) { return psi->w(1, v); }});
  ops.push_back(LoweringOp{2, [psi](const ModuleVector& v) { return psi->w(2, v); }});
  return ops;
}

struct RelationFailure {
  int n{0}, m{0}, level{0};
  std::string relation;
  ModuleVector witness;  // basis vector on which the identity fails
};

struct RelationReport {
  bool ok{true};
  std::vector<RelationFailure> failures;
};

/// Checks the W(2,2) relations as exact identities on every graded piece of
/// the host up to level N, for |n|, |m| <= mode_bound:
///   [L(n), W(m)] = (n-m) W(n+m) + d_{n,-m} (n^3-n)/12 c_W,
///   [W(n), W(m)] = 0.
/// c_w_used overrides the central value (to witness failure for a wrong c_W).
inline RelationReport verify_w22_relations(const QuotientModel& host, int N, int mode_bound = 3,
                                           std::optional<Rational> c_w_used = std::nullopt) {
  RelationReport rep;
  PsiAction psi(host);
  const Rational c_w = c_w_used.value_or(host.spec().charges.c_w);
  auto record = [&rep](int n, int m, int lvl, const char* rel, const ModuleVector& x) {
    rep.ok = false;
    rep.failures.push_back(RelationFailure{n, m, lvl, rel, x});
  };
  for (int lvl = 0; lvl <= N; ++lvl) {
    for (const auto& mono : host.basis(lvl)) {
      const ModuleVector x = ModuleVector::unit(mono);
      std::map<int, ModuleVector> wx, lx;
      for (int k = -mode_bound; k <= mode_bound; ++k) {
        wx[k] = psi.w(k, x);
        lx[k] = host.apply(vir(k), x);
      }
      for (int n = -mode_bound; n <= mode_bound; ++n) {
        for (int m = -mode_bound; m <= mode_bound; ++m) {
          // [L(n), W(m)]
          ModuleVector lhs = host.apply(vir(n), wx[m]);
          lhs -= psi.w(m, lx[n]);
          ModuleVector rhs = psi.w(n + m, x);
          rhs *= rat(n - m);
          if (n == -m) rhs += (detail::vir_cocycle(n) * c_w) * x;
          if (lhs != rhs) record(n, m, lvl, "[L(n),W(m)]", x);
          if (m >= n) {  // [W(n), W(m)] = 0, symmetric in (n, m)
            ModuleVector comm = psi.w(n, wx[m]);
            comm -= psi.w(m, wx[n]);
            if (!comm.zero()) record(n, m, lvl, "[W(n),W(m)]", x);
          }
        }
      }
    }
  }
  return rep;
}

/// Image of a W(2,2) Verma vector in the HV Verma module under the module
/// homomorphism induced by the embedding: L(-m) factors act as themselves,
/// W(-m) factors act through w_mode, the highest weight vector maps to the
/// highest weight vector. Requires h_W = h_I (h_I - 2 c_{L,I}) and matching
/// central charges.
inline ModuleVector psi_map(const ModuleVector& y, const HighestWeightSpec& source,
                            const HighestWeightSpec& target) {
  if (source.kind != AlgebraKind::W22 || target.kind != AlgebraKind::HV)
    throw std::invalid_argument("psi_map: expects a W(2,2) source and an HV target");
  if (source.charges.c_l != target.charges.c_l || source.charges.c_w != target.charges.c_w)
    throw std::invalid_argument("psi_map: central charges do not match");
  if (source.h != target.h || source.second != target.w22_second())
    throw std::invalid_argument("psi_map: weights incompatible with the embedding");
  QuotientModel host = verma_module(target);
  ModuleVector out;
  for (const auto& [mono, c] : y.terms()) {
    ModuleVector v = ModuleVector::unit(unit_mono(mono.base));
    for (auto it = mono.lpart.rbegin(); it != mono.lpart.rend(); ++it)
      v = host.apply(vir(-*it), v);
    for (auto it = mono.xpart.rbegin(); it != mono.xpart.rend(); ++it) v = w_mode(-*it, v, host);
    v *= c;
    out += v;
  }
  return out;
}

/// Structure of an irreducible HV highest weight module as a W(2,2)-module.
struct BranchReport {
  AtypicalityReport cls;
  int max_level{0};
  std::vector<long long> host_dims;      // levels 0..N
  std::vector<long long> sub_dims;       // proper W(2,2)-submodule piece
  std::vector<long long> quot_dims;      // host minus submodule
  std::vector<long long> singular_dims;  // W-singular space dims, levels 1..N
  std::vector<ModuleVector> w_singular;  // the located W-singular vectors
  bool nonsplit_certified{false};
  int certificate_level{-1};
  bool ok{true};
  std::vector<std::string> log;
};

/// Branching of the irreducible module L^HV(h, h_I) over W(2,2).
/// Typical weight: certifies that no W-singular vectors exist at levels
/// 1..N and that the graded dimensions equal those of the irreducible
/// W(2,2) module of the matched weight. Atypical weight: locates the
/// W-singular vector at level rp (plus branch), computes the proper
/// submodule piece and the quotient piece, checks both against irreducible
/// W(2,2) characters, and certifies non-splitness:
///   plus branch  - the W(2,2)-closure of the highest weight vector is the
///                  whole host while the submodule is nonzero;
///   minus branch - the W-singular space at level rp lies inside the proper
///                  piece (here: is empty), so no complement can exist.
inline BranchReport branch(const HighestWeightSpec& spec, int N) {
  if (spec.kind != AlgebraKind::HV) throw std::invalid_argument("branch: expects an HV spec");
  BranchReport rep;
  rep.cls = classify(spec);
  rep.max_level = N;
  QuotientModel host = irreducible_module(spec, N);
  for (int n = 0; n <= N; ++n) rep.host_dims.push_back(host.dim(n));

  auto killers = w22_killers(host);
  for (int n = 1; n <= N; ++n) {
    auto sing = singular_space(host, n, killers);
    rep.singular_dims.push_back(static_cast<long long>(sing.size()));
    for (auto& v : sing) rep.w_singular.push_back(v);
  }
  auto fail = [&rep](const std::string& msg) {
    rep.ok = false;
    rep.log.push_back("FAIL: " + msg);
  };

  if (!rep.cls.atypical) {
    for (int n = 1; n <= N; ++n)
      if (rep.singular_dims[n - 1] != 0) fail("W-singular vector at level " + std::to_string(n));
    auto w22_dims = irr_graded_dims(spec.w22_counterpart(), N);
    if (rep.host_dims != w22_dims) fail("host dims differ from irreducible W(2,2) dims");
    rep.sub_dims.assign(static_cast<size_t>(N) + 1, 0);
    rep.quot_dims = rep.host_dims;
    if (rep.ok) rep.log.push_back("typical: host is irreducible over W(2,2) up to level " +
                                  std::to_string(N));
    return rep;
  }

  const int p = *rep.cls.p, r = *rep.cls.r, rp = p * r;
  const HighestWeightSpec w22_top = spec.w22_counterpart();
  const HighestWeightSpec w22_sub = HighestWeightSpec::w22(spec.charges, spec.h + rp, w22_top.second);
  auto top_dims = irr_graded_dims(w22_top, N);
  auto sub_dims_abs = [&] {
    auto d = irr_graded_dims(w22_sub, N >= rp ? N - rp : 0);
    std::vector<long long> out(static_cast<size_t>(N) + 1, 0);
    for (int n = rp; n <= N; ++n) out[n] = d[n - rp];
    return out;
  }();

  if (*rep.cls.branch == Branch::plus) {
    for (int n = 1; n <= N; ++n) {
      long long expect = n == rp ? 1 : 0;
      if (rep.singular_dims[n - 1] != expect)
        fail("W-singular space at level " + std::to_string(n) + " has dim " +
             std::to_string(rep.singular_dims[n - 1]));
    }
    if (rep.w_singular.size() == 1) {
      ClosureResult sub = submodule_closure(host, {rep.w_singular[0]}, psi_action(host), N);
      rep.sub_dims = sub.dims;
    } else {
      fail("expected exactly one W-singular vector");
      rep.sub_dims.assign(static_cast<size_t>(N) + 1, 0);
    }
    ClosureResult full = submodule_closure(
        host, {ModuleVector::unit(unit_mono("hw"))}, psi_action(host), N);
    rep.nonsplit_certified = (full.dims == rep.host_dims);
    rep.certificate_level = N;
    if (!rep.nonsplit_certified) fail("closure of hw is not the whole host (split?)");
  } else {
    for (int n = 1; n <= N; ++n)
      if (rep.singular_dims[n - 1] != 0)
        fail("unexpected W-singular vector at level " + std::to_string(n));
    ClosureResult sub = submodule_closure(
        host, {ModuleVector::unit(unit_mono("hw"))}, psi_action(host), N);
    rep.sub_dims = sub.dims;
    // a splitting would put a W-singular vector at level rp outside the
    // proper piece; the singular space there is empty
    rep.nonsplit_certified = rp > N || rep.singular_dims[rp - 1] == 0;
    rep.certificate_level = rp;
  }

  rep.quot_dims.resize(static_cast<size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) rep.quot_dims[n] = rep.host_dims[n] - rep.sub_dims[n];

  const auto& expect_sub = *rep.cls.branch == Branch::plus ? sub_dims_abs : top_dims;
  const auto& expect_quot = *rep.cls.branch == Branch::plus ? top_dims : sub_dims_abs;
  if (rep.sub_dims != expect_sub) fail("submodule piece dims do not match the W(2,2) character");
  if (rep.quot_dims != expect_quot) fail("quotient piece dims do not match the W(2,2) character");
  if (rep.ok)
    rep.log.push_back(std::string("atypical (") + (*rep.cls.branch == Branch::plus ? "+" : "-") +
                      "): non-split extension certified at level " +
                      std::to_string(rep.certificate_level));
  return rep;
}

struct ContragredientReport {
  std::vector<long long> dims;
  std::vector<long long> dual_dims;
  bool ok{false};
};

/// Graded dimensions of L(h, h_I) and L(h, 2c_{L,I} - h_I) agree at all
/// levels <= N (trivially so over W(2,2), where the dual weight is equal).
inline ContragredientReport contragredient_check(const HighestWeightSpec& spec, int N) {
  ContragredientReport rep;
  rep.dims = irr_graded_dims(spec, N);
  rep.dual_dims = irr_graded_dims(spec.dual(), N);
  rep.ok = rep.dims == rep.dual_dims;
  return rep;
}

struct DecompositionReport {
  int p{0};
  int max_level{0};
  std::vector<int> chain_levels;                  // i*p for each closure
  std::vector<ModuleVector> chain_vectors;        // v_{ip}
  std::vector<std::vector<long long>> closure_dims;
  std::vector<long long> dim_sums;                // per level, sum over closures
  bool w_singular_ok{true};
  bool independent{true};
  bool ok{false};
  std::vector<std::string> log;
};

/// Direct-sum decomposition of the typical minus-branch Verma module
/// V^HV(h, (1-p) c_{L,I}) into W(2,2)-closures of the singular chain
/// v_0 = hw, v_p, v_{2p}, ...: each v_{ip} is checked to be W-singular, the
/// closures must be pairwise independent, and their per-level dimensions
/// must sum to P2(n). Atypical input is rejected (see branch()).
inline DecompositionReport verma_branch_decomposition(const Rational& h, int p,
                                                      const CentralCharges& cc, int N) {
  if (p < 1) throw std::invalid_argument("verma_branch_decomposition: p must be positive");
  HighestWeightSpec spec = HighestWeightSpec::hv(cc, h, (1 - rat(p)) * cc.c_li);
  AtypicalityReport cls = classify(spec);
  if (cls.atypical)
    throw std::invalid_argument(
        "verma_branch_decomposition: atypical weight; use branch() instead");
  DecompositionReport rep;
  rep.p = p;
  rep.max_level = N;
  QuotientModel host = verma_module(spec);
  auto killers = w22_killers(host);
  std::vector<ClosureResult> closures;
  for (int i = 0; i * p <= N; ++i) {
    ModuleVector v = i == 0 ? ModuleVector::unit(unit_mono("hw")) : [&] {
      auto sing = find_singular(spec, i * p);
      if (sing.size() != 1)
        throw std::logic_error("verma_branch_decomposition: singular chain is not unique");
      return sing[0];
    }();
    if (i > 0)
      for (const auto& k : killers)
        if (!k.op(v).zero()) {
          rep.w_singular_ok = false;
          rep.log.push_back("FAIL: v_" + std::to_string(i * p) + " is not W(2,2)-singular");
        }
    rep.chain_levels.push_back(i * p);
    rep.chain_vectors.push_back(v);
    closures.push_back(submodule_closure(host, {v}, psi_action(host), N));
    rep.closure_dims.push_back(closures.back().dims);
  }
  auto p2 = p2_table(N);
  rep.dim_sums.assign(static_cast<size_t>(N) + 1, 0);
  for (int n = 0; n <= N; ++n) {
    RowSpace joint(host.basis(n).size());
    long long sum = 0;
    for (const auto& cl : closures) {
      sum += cl.dims[n];
      for (const auto& b : cl.bases[n])
        if (!joint.add(host.coords(b, n))) rep.independent = false;
    }
    rep.dim_sums[n] = sum;
    if (sum != p2[n] || static_cast<long long>(joint.rank()) != p2[n]) {
      rep.independent = rep.independent && static_cast<long long>(joint.rank()) == sum;
      rep.log.push_back("FAIL: closures do not fill level " + std::to_string(n));
    }
  }
  rep.ok = rep.w_singular_ok && rep.independent && rep.log.empty();
  return rep;
}

/// The explicit singular vector
///   v_r^- = prod_{i=0}^{r-1} ( L(-1) + (1-r+2i)/(2 c_{L,I}) I(-1) ) hw
/// in V^HV((1-r)/2, 0), expanded to PBW form. The factors do not commute;
/// the i = 0 factor acts first (the annihilation property fails for the
/// opposite order).
inline ModuleVector v_r_minus(int r, const CentralCharges& cc) {
  if (r < 1) throw std::invalid_argument("v_r_minus: r must be positive");
  HighestWeightSpec spec = HighestWeightSpec::hv(cc, rat(1 - r, 2), Rational(0));
  ModuleSpec mspec = spec.to_module_spec();
  ModuleVector v = ModuleVector::unit(unit_mono("hw"));
  for (int i = 0; i <= r - 1; ++i) {
    ModuleVector t = apply_mode(igen(-1), v, mspec);
    t *= rat(1 - r + 2 * i) / (2 * cc.c_li);
    v = apply_mode(vir(-1), v, mspec) + t;
  }
  return v;
}

}  // namespace w22hv
