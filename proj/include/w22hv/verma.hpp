#pragma once

#include <cassert>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "w22hv/algebra.hpp"
#include "w22hv/characters.hpp"
#include "w22hv/linalg.hpp"
#include "w22hv/pbw.hpp"
#include "w22hv/rational.hpp"

namespace w22hv {

/// Highest weight data: (h, h_I) for Heisenberg-Virasoro, (h, h_W) for
/// W(2,2), together with the central charges.
struct HighestWeightSpec {
  AlgebraKind kind{AlgebraKind::HV};
  CentralCharges charges;
  Rational h;
  Rational second;  // h_I (HV) or h_W (W22)

  static HighestWeightSpec hv(const CentralCharges& cc, Rational h, Rational h_i) {
    return HighestWeightSpec{AlgebraKind::HV, cc, std::move(h), std::move(h_i)};
  }
  static HighestWeightSpec w22(const CentralCharges& cc, Rational h, Rational h_w) {
    return HighestWeightSpec{AlgebraKind::W22, cc, std::move(h), std::move(h_w)};
  }

  /// h_W = h_I (h_I - 2 c_{L,I}) for an HV spec.
  Rational w22_second() const {
    if (kind != AlgebraKind::HV) return second;
    return second * (second - 2 * charges.c_li);
  }

  /// The W(2,2) weight spec matched to this HV spec under the embedding.
  HighestWeightSpec w22_counterpart() const {
    if (kind != AlgebraKind::HV)
      throw std::invalid_argument("w22_counterpart: spec is already over W(2,2)");
    return w22(charges, h, w22_second());
  }

  /// The HV spec matched to a W22 spec for a chosen h_I; rejects h_I that
  /// does not satisfy h_W = h_I (h_I - 2 c_{L,I}).
  HighestWeightSpec hv_counterpart(const Rational& h_i) const {
    if (kind != AlgebraKind::W22)
      throw std::invalid_argument("hv_counterpart: spec is already over HV");
    if (h_i * (h_i - 2 * charges.c_li) != second)
      throw std::invalid_argument("hv_counterpart: h_W != h_I (h_I - 2 c_{L,I})");
    return hv(charges, h, h_i);
  }

  /// Contragredient weight: (h, 2 c_{L,I} - h_I) over HV, unchanged over W22.
  HighestWeightSpec dual() const {
    if (kind == AlgebraKind::W22) return *this;
    return hv(charges, h, 2 * charges.c_li - second);
  }

  ModuleSpec to_module_spec(const std::string& base = "hw") const {
    ModuleSpec spec;
    spec.kind = kind;
    spec.charges = charges;
    spec.bases[base] = BaseRule{h, second, {}};
    return spec;
  }
};

/// h_{p,r} = (1-p^2)(c_L - 2)/24 + p(p-1) + p(1-r)/2.
inline Rational h_pr(int p, int r, const Rational& c_l) {
  if (p < 1 || r < 1) throw std::invalid_argument("h_pr: p, r must be positive");
  return rat(1 - p * p) * (c_l - 2) / 24 + rat(p * (p - 1)) + rat(p) * rat(1 - r, 2);
}

enum class Branch : uint8_t { plus, minus };

/// Outcome of the atypicality test. `p` is present whenever the Verma module
/// is reducible (second-weight condition holds); `r` only when the weight is
/// atypical, i.e. additionally h = h_{p,r}; `branch` only over HV.
struct AtypicalityReport {
  bool atypical{false};
  std::optional<int> p;
  std::optional<int> r;
  std::optional<Branch> branch;

  bool reducible_verma() const { return p.has_value(); }
};

namespace detail {

inline std::optional<int> solve_r(const Rational& h, int p, const Rational& c_l) {
  // h = h_{p,r} is linear in r: r = 1 + 2 (h_{p,1} - h)/p.
  Rational r = 1 + 2 * (h_pr(p, 1, c_l) - h) / rat(p);
  if (!is_integer(r) || r < 1) return std::nullopt;
  return static_cast<int>(r.get_num().get_si());
}

}  // namespace detail

/// Solves the reducibility and atypicality conditions exactly:
/// HV:  h_I = (1 +/- p) c_{L,I};  W22:  h_W = (1-p^2) c_W / 24;
/// then h = h_{p,r} for a positive integer r.
inline AtypicalityReport classify(const HighestWeightSpec& spec) {
  AtypicalityReport rep;
  if (spec.kind == AlgebraKind::HV) {
    Rational t = spec.second / spec.charges.c_li - 1;
    if (!is_integer(t) || t == 0) return rep;
    mpz_class p_abs = abs(t.get_num());
    rep.p = static_cast<int>(p_abs.get_si());
    rep.branch = t > 0 ? Branch::plus : Branch::minus;
  } else {
    // p^2 = 1 - 24 h_W / c_W must be the square of a positive integer.
    Rational s = 1 - 24 * spec.second / spec.charges.c_w;
    if (!is_integer(s) || s < 1) return rep;
    mpz_class sz = s.get_num();
    if (!mpz_perfect_square_p(sz.get_mpz_t())) return rep;
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), sz.get_mpz_t());
    rep.p = static_cast<int>(root.get_si());
  }
  if (auto r = detail::solve_r(spec.h, *rep.p, spec.charges.c_l)) {
    rep.r = r;
    rep.atypical = true;
  }
  return rep;
}

/// A graded module realized as a quotient of the free module over its
/// ModuleSpec by the submodule generated by the given homogeneous vectors.
/// With no generators this is the free (Verma or induced) module itself and
/// supports arbitrary levels; otherwise reduction data is precomputed up to
/// max_level. Vectors of the quotient are represented by their canonical
/// complement representatives.
class QuotientModel {
 public:
  explicit QuotientModel(ModuleSpec spec)
      : spec_(std::move(spec)), max_level_(-1) {}

  QuotientModel(ModuleSpec spec, const std::vector<ModuleVector>& generators, int max_level)
      : spec_(std::move(spec)), max_level_(max_level) {
    if (max_level < 0) throw std::invalid_argument("QuotientModel: negative max level");
    if (generators.empty()) {
      max_level_ = -1;
      return;
    }
    const int N = max_level;
    sub_.reserve(N + 1);
    for (int n = 0; n <= N; ++n) sub_.emplace_back(ambient_basis(n).size());
    std::vector<std::vector<ModuleVector>> pending(N + 1);
    for (const auto& g : generators) {
      if (g.zero()) continue;
      int lvl = g.homogeneous_level();
      if (lvl > N) throw std::invalid_argument("QuotientModel: generator above max level");
      if (auto row = sub_[lvl].add(ambient_coords(g, lvl)))
        pending[lvl].push_back(vector_from(*row, lvl));
    }
    const Family xf = spec_.xfam();
    for (int n = 0; n <= N; ++n) {
      for (size_t k = 0; k < pending[n].size(); ++k) {
        // copy: pending[n+j] may reallocate while we iterate pending[n]
        const ModuleVector v = pending[n][k];
        for (int j = 1; n + j <= N; ++j) {
          for (Mode m : {Mode{xf, -j}, vir(-j)}) {
            ModuleVector w = apply_mode(m, v, spec_);
            if (w.zero()) continue;
            if (auto row = sub_[n + j].add(ambient_coords(w, n + j)))
              pending[n + j].push_back(vector_from(*row, n + j));
          }
        }
      }
    }
    comp_.resize(N + 1);
    for (int n = 0; n <= N; ++n) {
      auto amb = ambient_basis(n);
      const auto& piv = sub_[n].pivots();
      for (size_t i = 0; i < amb.size(); ++i)
        if (!piv.count(i)) comp_[n].push_back(amb[i]);
    }
  }

  const ModuleSpec& spec() const { return spec_; }
  bool is_free() const { return max_level_ < 0; }
  int max_level() const { return max_level_; }

  std::vector<PBWMonomial> ambient_basis(int n) const { return graded_basis(spec_, n); }
  long long ambient_dim(int n) const { return static_cast<long long>(ambient_basis(n).size()); }

  /// Basis of the level-n graded piece of the quotient (complement
  /// monomials); for a free module this is the full ambient basis.
  std::vector<PBWMonomial> basis(int n) const {
    if (is_free()) return ambient_basis(n);
    check_level(n);
    return comp_[n];
  }

  long long dim(int n) const { return static_cast<long long>(basis(n).size()); }

  long long submodule_dim(int n) const {
    if (is_free()) return 0;
    check_level(n);
    return static_cast<long long>(sub_[n].rank());
  }

  std::vector<ModuleVector> submodule_basis(int n) const {
    if (is_free()) return {};
    check_level(n);
    std::vector<ModuleVector> out;
    for (const auto& row : sub_[n].rows()) out.push_back(vector_from(row, n));
    return out;
  }

  /// Canonical representative of v + submodule, supported on complement
  /// monomials. Identity on free modules.
  ModuleVector reduce(const ModuleVector& v) const {
    if (is_free() || v.zero()) return v;
    ModuleVector out;
    for (const auto& [lvl, part] : v.split_levels()) {
      check_level(lvl);
      auto coords = sub_[lvl].reduce(ambient_coords(part, lvl));
      out += vector_from(coords, lvl);
    }
    return out;
  }

  bool in_submodule(const ModuleVector& v) const { return reduce(v).zero(); }

  ModuleVector apply(Mode m, const ModuleVector& v) const {
    return reduce(apply_mode(m, v, spec_));
  }

  std::vector<Rational> ambient_coords(const ModuleVector& v, int n) const {
    auto amb = ambient_basis(n);
    std::map<PBWMonomial, size_t> index;
    for (size_t i = 0; i < amb.size(); ++i) index.emplace(amb[i], i);
    std::vector<Rational> c(amb.size(), Rational(0));
    for (const auto& [mono, coeff] : v.terms()) {
      auto it = index.find(mono);
      if (it == index.end()) throw std::logic_error("ambient_coords: monomial off level");
      c[it->second] = coeff;
    }
    return c;
  }

  /// Coordinates of reduce(v) over basis(n).
  std::vector<Rational> coords(const ModuleVector& v, int n) const {
    ModuleVector r = reduce(v);
    auto b = basis(n);
    std::map<PBWMonomial, size_t> index;
    for (size_t i = 0; i < b.size(); ++i) index.emplace(b[i], i);
    std::vector<Rational> c(b.size(), Rational(0));
    for (const auto& [mono, coeff] : r.terms()) {
      auto it = index.find(mono);
      if (it == index.end()) throw std::logic_error("coords: monomial not in quotient basis");
      c[it->second] = coeff;
    }
    return c;
  }

  ModuleVector from_coords(const std::vector<Rational>& c, int n) const {
    auto b = basis(n);
    if (c.size() != b.size()) throw std::invalid_argument("from_coords: size mismatch");
    ModuleVector v;
    for (size_t i = 0; i < b.size(); ++i) v.add(b[i], c[i]);
    return v;
  }

 private:
  void check_level(int n) const {
    if (n < 0 || n > max_level_)
      throw std::out_of_range("QuotientModel: level " + std::to_string(n) +
                              " outside precomputed range");
  }

  ModuleVector vector_from(const std::vector<Rational>& ambient, int n) const {
    auto amb = ambient_basis(n);
    ModuleVector v;
    for (size_t i = 0; i < amb.size(); ++i) v.add(amb[i], ambient[i]);
    return v;
  }

  ModuleSpec spec_;
  int max_level_;
  std::vector<RowSpace> sub_;
  std::vector<std::vector<PBWMonomial>> comp_;
};

/// Free Verma module over a highest weight spec.
inline QuotientModel verma_module(const HighestWeightSpec& spec) {
  return QuotientModel(spec.to_module_spec());
}

/// Quotient of the Verma module by the submodule generated by the given
/// homogeneous vectors, with per-level reduction data up to max_level.
inline QuotientModel verma_quotient(const HighestWeightSpec& spec,
                                    const std::vector<ModuleVector>& generators, int max_level) {
  return QuotientModel(spec.to_module_spec(), generators, max_level);
}

/// One negative-degree lowering/raising operator with its level shift.
struct LoweringOp {
  int degree;  // maps level n to level n - degree
  std::function<ModuleVector(const ModuleVector&)> op;
};

/// Annihilator generating sets for the singular-vector solver:
/// {L(1), L(2), I(1)} over HV and {L(1), L(2), W(1), W(2)} over W(2,2).
inline std::vector<LoweringOp> algebra_killers(const QuotientModel& host) {
  std::vector<LoweringOp> ops;
  auto push = [&](Mode m) {
    ops.push_back(LoweringOp{m.index, [&host, m](const ModuleVector& v) { return host.apply(m, v); }});
  };
  push(vir(1));
  push(vir(2));
  if (host.spec().kind == AlgebraKind::HV) {
    push(igen(1));
  } else {
    push(wgen(1));
    push(wgen(2));
  }
  return ops;
}

/// Basis of the level-n vectors of the host annihilated by every given
/// operator, as the exact nullspace of the stacked operator matrices. Each
/// basis vector is normalized so its leading monomial has coefficient one.
inline std::vector<ModuleVector> singular_space(const QuotientModel& host, int n,
                                                const std::vector<LoweringOp>& killers) {
  if (n < 1) throw std::invalid_argument("singular_space: level must be positive");
  auto dom = host.basis(n);
  if (dom.empty()) return {};
  size_t total_rows = 0;
  std::vector<std::vector<std::vector<Rational>>> blocks;
  for (const auto& k : killers) {
    int target = n - k.degree;
    std::vector<std::vector<Rational>> block;
    for (const auto& mono : dom) {
      ModuleVector img = k.op(ModuleVector::unit(mono));
      if (target < 0) {
        if (!img.zero()) throw std::logic_error("singular_space: image below level zero");
        block.emplace_back();
      } else {
        block.push_back(host.coords(img, target));
      }
    }
    size_t rows = target < 0 ? 0 : static_cast<size_t>(host.dim(target));
    total_rows += rows;
    blocks.push_back(std::move(block));
  }
  MatQ m(total_rows, dom.size());
  size_t row0 = 0;
  for (size_t b = 0; b < blocks.size(); ++b) {
    size_t rows = blocks[b].empty() ? 0 : blocks[b][0].size();
    for (size_t j = 0; j < dom.size(); ++j)
      for (size_t r = 0; r < blocks[b][j].size(); ++r) m.at(row0 + r, j) = blocks[b][j][r];
    row0 += rows;
  }
  std::vector<ModuleVector> out;
  for (const auto& nv : nullspace(std::move(m))) {
    ModuleVector v;
    for (size_t j = 0; j < dom.size(); ++j) v.add(dom[j], nv[j]);
    out.push_back(v.normalized());
  }
  return out;
}

/// Singular vectors of the Verma module at level n: the exact basis of the
/// space annihilated by the positive subalgebra.
inline std::vector<ModuleVector> find_singular(const HighestWeightSpec& spec, int n) {
  QuotientModel host = verma_module(spec);
  return singular_space(host, n, algebra_killers(host));
}

namespace detail {

// The singular vector at level k*p lying in C[X(-1),...,X(-kp)] hw (the
// canonical chain generator). Computed as the intersection of the singular
// space with the span of pure-X monomials; expected one-dimensional.
inline ModuleVector pure_x_singular(const HighestWeightSpec& spec, int level) {
  auto sing = find_singular(spec, level);
  if (sing.empty()) throw std::logic_error("pure_x_singular: no singular vector at level");
  std::vector<ModuleVector> pure;
  for (const auto& v : sing) {
    bool ok = true;
    for (const auto& [mono, c] : v.terms())
      if (!mono.lpart.empty()) ok = false;
    if (ok) pure.push_back(v);
  }
  if (pure.size() == 1) return pure[0];
  if (pure.empty() && sing.size() == 1) return sing[0];
  // Solve for pure-X combinations of the singular basis.
  QuotientModel host = verma_module(spec);
  auto amb = host.ambient_basis(level);
  MatQ m(amb.size(), sing.size());
  for (size_t j = 0; j < sing.size(); ++j) {
    auto c = host.ambient_coords(sing[j], level);
    for (size_t i = 0; i < amb.size(); ++i) m.at(i, j) = amb[i].lpart.empty() ? Rational(0) : c[i];
  }
  auto combos = nullspace(std::move(m));
  if (combos.size() != 1)
    throw std::logic_error("pure_x_singular: chain generator is not unique");
  ModuleVector v;
  for (size_t j = 0; j < sing.size(); ++j) {
    ModuleVector t = sing[j];
    t *= combos[0][j];
    v += t;
  }
  return v.normalized();
}

}  // namespace detail

/// Cosingular vectors of an atypical W(2,2) Verma module at level n: lifts
/// of the singular classes of the quotient by the canonical chain submodule.
/// For parameters (p, r) these occur at levels (r-i)p, i = 0..floor((r-1)/2);
/// the level-rp lift carries the L(-p)^r monomial. Over HV the result is
/// always empty. Typical specs are rejected.
inline std::vector<ModuleVector> find_cosingular(const HighestWeightSpec& spec, int n) {
  AtypicalityReport cls = classify(spec);
  if (!cls.atypical) throw std::invalid_argument("find_cosingular: spec is typical");
  const int p = *cls.p, r = *cls.r;
  if (n < 1 || n % p != 0) return {};
  const int i = r - n / p;
  if (i < 0 || 2 * i > r - 1) return {};
  ModuleVector chain = detail::pure_x_singular(spec, (i + 1) * p);
  QuotientModel q = verma_quotient(spec, {chain}, n);
  std::vector<ModuleVector> classes = singular_space(q, n, algebra_killers(q));
  if (i == 0) {
    PBWMonomial lead{{}, std::vector<int>(static_cast<size_t>(r), p), "hw"};
    for (const auto& v : classes)
      if (v.coeff(lead) == 0)
        throw std::logic_error("find_cosingular: missing L(-p)^r component at level rp");
  }
  return classes;
}

/// Exact rational matrix of an operator between graded pieces of (possibly
/// different) modules.
struct LevelMatrix {
  int from_level{0};
  int to_level{0};
  std::vector<PBWMonomial> domain_basis;
  std::vector<PBWMonomial> codomain_basis;
  MatQ mat;  // rows indexed by codomain, columns by domain
};

/// Contravariant pairing data at one level: over W(2,2) the symmetric Gram
/// matrix, over HV the pairing of the dual-weight Verma module
/// V(h, 2c_{L,I} - h_I) against V(h, h_I). The adjoint rules are
///   <L(n) m', m> = <m', L(-n) m>,
///   <I(n) m', m> = <m', (-I(-n) + d_{n,0} 2 c_{L,I}) m>,
///   <W(n) m', m> = <m', W(-n) m>.
/// The right radical spans the level piece of the maximal proper submodule.
struct GramData {
  int level{0};
  LevelMatrix matrix;
  size_t rank{0};
  std::vector<ModuleVector> right_radical;
};

inline GramData gram_matrix(const HighestWeightSpec& spec, int n) {
  if (n < 0) throw std::invalid_argument("gram_matrix: negative level");
  ModuleSpec mspec = spec.to_module_spec();
  auto basis = graded_basis(mspec, "hw", n);
  const bool hv = spec.kind == AlgebraKind::HV;
  const PBWMonomial hw = unit_mono("hw");

  GramData g;
  g.level = n;
  g.matrix.from_level = n;
  g.matrix.to_level = n;
  g.matrix.domain_basis = basis;
  g.matrix.codomain_basis = basis;
  g.matrix.mat = MatQ(basis.size(), basis.size());

  for (size_t i = 0; i < basis.size(); ++i) {
    // <row_i, col_j> = coefficient of hw in (adjoint word of row_i) col_j;
    // the adjoint of the leftmost row factor acts first.
    for (size_t j = 0; j < basis.size(); ++j) {
      ModuleVector v = ModuleVector::unit(basis[j]);
      for (int mag : basis[i].xpart) {
        v = apply_mode(Mode{mspec.xfam(), mag}, v, mspec);
        if (hv) v *= Rational(-1);
        if (v.zero()) break;
      }
      if (!v.zero())
        for (int mag : basis[i].lpart) {
          v = apply_mode(vir(mag), v, mspec);
          if (v.zero()) break;
        }
      g.matrix.mat.at(i, j) = v.coeff(hw);
    }
  }
  g.rank = rank(g.matrix.mat);
  for (const auto& nv : nullspace(g.matrix.mat)) {
    ModuleVector v;
    for (size_t j = 0; j < basis.size(); ++j) v.add(basis[j], nv[j]);
    g.right_radical.push_back(v.normalized());
  }
  return g;
}

/// Expected graded dimensions of the irreducible quotient from the character
/// formulas, by classification.
inline std::vector<long long> expected_irr_dims(const HighestWeightSpec& spec, int N) {
  AtypicalityReport cls = classify(spec);
  if (!cls.reducible_verma()) return verma_dims(N);
  if (spec.kind == AlgebraKind::W22 && cls.atypical)
    return atypical_irr_dims(*cls.p, *cls.r, N);
  return quotient_dims(*cls.p, N);
}

/// Per-level dimensions of the irreducible quotient, computed as Gram ranks
/// and checked against the character-formula coefficients.
inline std::vector<long long> irr_graded_dims(const HighestWeightSpec& spec, int N) {
  std::vector<long long> expected = expected_irr_dims(spec, N);
  std::vector<long long> dims;
  for (int n = 0; n <= N; ++n) {
    long long rk = static_cast<long long>(gram_matrix(spec, n).rank);
    if (rk != expected[n])
      throw std::logic_error("irr_graded_dims: Gram rank disagrees with character at level " +
                             std::to_string(n));
    dims.push_back(rk);
  }
  return dims;
}

/// Action of the negative part of an algebra (or of W(2,2) through the
/// embedding) on a host: degree j yields the list of images of a vector
/// under the degree-j negative generators.
using NegativeAction = std::function<std::vector<ModuleVector>(int, const ModuleVector&)>;

inline NegativeAction algebra_action(const QuotientModel& host) {
  const Family xf = host.spec().xfam();
  return [&host, xf](int j, const ModuleVector& v) {
    return std::vector<ModuleVector>{host.apply(Mode{xf, -j}, v), host.apply(vir(-j), v)};
  };
}

struct ClosureResult {
  int max_level{0};
  std::vector<long long> dims;                    // per level 0..max_level
  std::vector<std::vector<ModuleVector>> bases;   // reduced bases per level
};

/// Span of U(negative part) applied to the generators inside the host,
/// computed level by level with exact row reduction.
inline ClosureResult submodule_closure(const QuotientModel& host,
                                       const std::vector<ModuleVector>& generators,
                                       const NegativeAction& action, int N) {
  ClosureResult res;
  res.max_level = N;
  std::vector<RowSpace> spans;
  spans.reserve(N + 1);
  for (int n = 0; n <= N; ++n) spans.emplace_back(host.basis(n).size());
  std::vector<std::vector<ModuleVector>> pending(N + 1);
  for (const auto& g : generators) {
    ModuleVector rg = host.reduce(g);
    if (rg.zero()) continue;
    int lvl = rg.homogeneous_level();
    if (lvl > N) throw std::invalid_argument("submodule_closure: generator above max level");
    if (auto row = spans[lvl].add(host.coords(rg, lvl)))
      pending[lvl].push_back(host.from_coords(*row, lvl));
  }
  for (int n = 0; n <= N; ++n) {
    for (size_t k = 0; k < pending[n].size(); ++k) {
      const ModuleVector v = pending[n][k];
      for (int j = 1; n + j <= N; ++j)
        for (const auto& w : action(j, v)) {
          if (w.zero()) continue;
          if (auto row = spans[n + j].add(host.coords(w, n + j)))
            pending[n + j].push_back(host.from_coords(*row, n + j));
        }
    }
  }
  for (int n = 0; n <= N; ++n) {
    res.dims.push_back(static_cast<long long>(spans[n].rank()));
    std::vector<ModuleVector> basis;
    for (const auto& row : spans[n].rows()) basis.push_back(host.from_coords(row, n));
    res.bases.push_back(std::move(basis));
  }
  return res;
}

/// The irreducible highest weight module as a quotient model: the maximal
/// submodule is generated by the level-p singular vector, plus the level-rp
/// cosingular lift in the atypical W(2,2) case.
inline QuotientModel irreducible_module(const HighestWeightSpec& spec, int max_level) {
  AtypicalityReport cls = classify(spec);
  std::vector<ModuleVector> gens;
  if (cls.reducible_verma() && *cls.p <= max_level) {
    for (const auto& v : find_singular(spec, *cls.p)) gens.push_back(v);
    if (spec.kind == AlgebraKind::W22 && cls.atypical && *cls.p * *cls.r <= max_level)
      for (const auto& v : find_cosingular(spec, *cls.p * *cls.r)) gens.push_back(v);
  }
  return verma_quotient(spec, gens, max_level);
}

}  // namespace w22hv
