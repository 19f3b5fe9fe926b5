#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "w22hv/embedding.hpp"
#include "w22hv/verma.hpp"

namespace w22hv {

/// The two-generator induced module over the Heisenberg-Virasoro algebra:
/// base vectors v0, v1 of L(0)-weight one with I(0) v1 = v0, I(0) v0 = 0 and
/// the positive part acting trivially.
inline ModuleSpec ext_module_spec(const CentralCharges& cc) {
  ModuleSpec spec;
  spec.kind = AlgebraKind::HV;
  spec.charges = cc;
  spec.bases["v0"] = BaseRule{Rational(1), Rational(0), {}};
  spec.bases["v1"] = BaseRule{Rational(1), std::nullopt, {{"v0", Rational(1)}}};
  return spec;
}

/// The quotient of the induced module by the submodule generated by the
/// singular vector (L(-1) + I(-1)/c_{L,I}) v0, graded by monomial level
/// (L(0) acts by level+1). Built with per-level bases up to max_level.
inline QuotientModel build_ext_module(const CentralCharges& cc, int max_level) {
  ModuleSpec spec = ext_module_spec(cc);
  ModuleVector g;
  g.add(PBWMonomial{{}, {1}, "v0"}, Rational(1));
  g.add(PBWMonomial{{1}, {}, "v0"}, Rational(1) / cc.c_li);
  return QuotientModel(std::move(spec), {g}, max_level);
}

/// Screening-operator calculus on the vacuum module L^HV(c_L, c_{L,I}),
/// realized as V^HV(0,0)/<L(-1) hw> with base tag "1". The operators S_0(m),
/// S_1(m) map weight-n vacuum vectors to the weight-(n-m) piece of the
/// extension quotient U and are evaluated by structural recursion on PBW
/// monomials through the commutators
///
///   [L(n), S_i(m)] = -m S_i(n+m),
///   [I(n), S_1(m)] = S_0(n+m),      [I(n), S_0(m)] = 0,
///
/// with base values S_i(m) 1 = L(-1)^{-m-1} v^i / (-m-1)! for m <= -1 and
/// zero otherwise. Results are memoized per (operator, mode, monomial).
class ScreeningContext {
 public:
  ScreeningContext(const CentralCharges& cc, int max_level)
      : cc_(cc),
        max_level_(max_level),
        vacuum_(make_vacuum(cc, max_level)),
        ext_(build_ext_module(cc, max_level)) {}

  const CentralCharges& charges() const { return cc_; }
  int max_level() const { return max_level_; }
  const QuotientModel& vacuum() const { return vacuum_; }
  const QuotientModel& ext_module() const { return ext_; }

  /// S_which(m) applied to a PBW vector over the vacuum; the result lives in
  /// the extension quotient U (grade = weight - 1).
  ModuleVector s_apply(int which, int m, const ModuleVector& x) {
    ModuleVector out;
    for (const auto& [mono, c] : x.terms()) {
      ModuleVector t = s_on_monomial(which, m, mono);
      t *= c;
      out += t;
    }
    return out;
  }

  /// Same recursion on an explicit mode word acting on the vacuum vector;
  /// used to check confluence of the evaluation order.
  ModuleVector s_apply_word(int which, int m, const std::vector<Mode>& word) {
    if (word.empty()) return s_base(which, m);
    Mode f = word.front();
    std::vector<Mode> rest(word.begin() + 1, word.end());
    ModuleVector out = ext_.apply(f, s_apply_word(which, m, rest));
    if (f.family == Family::Vir) {
      ModuleVector t = s_apply_word(which, m + f.index, rest);
      t *= rat(m);
      out += t;
    } else if (which == 1) {
      out -= s_apply_word(0, m + f.index, rest);
    }
    return out;
  }

  /// Matrix of S_which(m) from vacuum level n to U grade n - m - 1.
  LevelMatrix s_matrix(int which, int m, int n) {
    LevelMatrix lm;
    lm.from_level = n;
    lm.to_level = n - m - 1;
    lm.domain_basis = vacuum_.basis(n);
    lm.codomain_basis = lm.to_level < 0 ? std::vector<PBWMonomial>{} : ext_.basis(lm.to_level);
    lm.mat = MatQ(lm.codomain_basis.size(), lm.domain_basis.size());
    for (size_t j = 0; j < lm.domain_basis.size(); ++j) {
      ModuleVector img = s_apply(which, m, ModuleVector::unit(lm.domain_basis[j]));
      if (lm.to_level < 0) {
        if (!img.zero()) throw std::logic_error("s_matrix: image below grade zero");
        continue;
      }
      auto c = ext_.coords(img, lm.to_level);
      for (size_t r = 0; r < c.size(); ++r) lm.mat.at(r, j) = c[r];
    }
    return lm;
  }

  /// Per-level nullspace dimensions of S_1(0) on the vacuum module.
  std::vector<long long> kernel_dims(int N) {
    std::vector<long long> out;
    for (int n = 0; n <= N; ++n) {
      LevelMatrix lm = s_matrix(1, 0, n);
      out.push_back(static_cast<long long>(lm.domain_basis.size() - rank(lm.mat)));
    }
    return out;
  }

  /// Basis of the level-n kernel of S_1(0), leading coefficient one.
  std::vector<ModuleVector> kernel_basis(int n) {
    LevelMatrix lm = s_matrix(1, 0, n);
    std::vector<ModuleVector> out;
    for (const auto& nv : nullspace(lm.mat)) {
      ModuleVector v;
      for (size_t j = 0; j < lm.domain_basis.size(); ++j) v.add(lm.domain_basis[j], nv[j]);
      out.push_back(v.normalized());
    }
    return out;
  }

  static QuotientModel make_vacuum(const CentralCharges& cc, int max_level) {
    HighestWeightSpec spec = HighestWeightSpec::hv(cc, Rational(0), Rational(0));
    ModuleSpec mspec = spec.to_module_spec("1");
    ModuleVector gen = ModuleVector::unit(PBWMonomial{{}, {1}, "1"});
    return QuotientModel(std::move(mspec), {gen}, max_level);
  }

 private:
  ModuleVector s_base(int which, int m) const {
    if (m >= 0) return {};
    const int k = -m - 1;
    PBWMonomial mono{{}, std::vector<int>(static_cast<size_t>(k), 1), which == 0 ? "v0" : "v1"};
    return ext_.reduce(ModuleVector::unit(std::move(mono), Rational(1) / factorial(k)));
  }

  ModuleVector s_on_monomial(int which, int m, const PBWMonomial& mono) {
    if (mono.factors_empty()) return s_base(which, m);
    auto key = std::make_tuple(which, m, mono.str('I'));
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    Mode f;
    PBWMonomial rest = mono;
    if (!mono.xpart.empty()) {
      f = igen(-mono.xpart.front());
      rest.xpart.erase(rest.xpart.begin());
    } else {
      f = vir(-mono.lpart.front());
      rest.lpart.erase(rest.lpart.begin());
    }
    // S_i(m) F u = F S_i(m) u - [F, S_i(m)] u
    ModuleVector out = ext_.apply(f, s_on_monomial(which, m, rest));
    if (f.family == Family::Vir) {
      ModuleVector t = s_on_monomial(which, m + f.index, rest);
      t *= rat(m);
      out += t;
    } else if (which == 1) {
      out -= s_on_monomial(0, m + f.index, rest);
    }
    memo_.emplace(std::move(key), out);
    return out;
  }

  CentralCharges cc_;
  int max_level_;
  QuotientModel vacuum_;
  QuotientModel ext_;
  std::map<std::tuple<int, int, std::string>, ModuleVector> memo_;
};

struct ScreeningFailure {
  std::string relation;
  int n{0}, m{0}, level{0};
  ModuleVector witness;
};

struct ScreeningReport {
  bool ok{true};
  std::vector<ScreeningFailure> failures;
};

/// Checks the screening commutators as identities on every vacuum graded
/// piece up to level N, for |n|, |m| <= mode_bound:
///   [L(n), S_i(m)] = -m S_i(n+m),
///   [W(n), S_0(m)] = 0,
///   [W(n), S_1(m)] = 2 m c_{L,I} S_0(n+m),
///   [I(n), S_1(m)] = S_0(n+m),
/// with the W modes taken through the embedding on both sides.
inline ScreeningReport verify_screening_commutators(ScreeningContext& ctx, int N,
                                                    int mode_bound = 2) {
  ScreeningReport rep;
  const QuotientModel& vac = ctx.vacuum();
  const QuotientModel& ext = ctx.ext_module();
  const Rational c2 = 2 * ctx.charges().c_li;
  auto record = [&rep](const char* rel, int n, int m, int lvl, const ModuleVector& x) {
    rep.ok = false;
    rep.failures.push_back(ScreeningFailure{rel, n, m, lvl, x});
  };
  for (int lvl = 0; lvl <= N; ++lvl) {
    for (const auto& mono : vac.basis(lvl)) {
      const ModuleVector x = ModuleVector::unit(mono);
      for (int n = -mode_bound; n <= mode_bound; ++n) {
        const ModuleVector ln_x = vac.apply(vir(n), x);
        const ModuleVector in_x = vac.apply(igen(n), x);
        const ModuleVector wn_x = w_mode(n, x, vac);
        for (int m = -mode_bound; m <= mode_bound; ++m) {
          for (int i = 0; i <= 1; ++i) {
            ModuleVector lhs = ext.apply(vir(n), ctx.s_apply(i, m, x));
            lhs -= ctx.s_apply(i, m, ln_x);
            ModuleVector rhs = ctx.s_apply(i, n + m, x);
            rhs *= rat(-m);
            if (lhs != rhs) record(i == 0 ? "[L(n),S0(m)]" : "[L(n),S1(m)]", n, m, lvl, x);
          }
          {
            ModuleVector lhs = w_mode(n, ctx.s_apply(0, m, x), ext);
            lhs -= ctx.s_apply(0, m, wn_x);
            if (!lhs.zero()) record("[W(n),S0(m)]", n, m, lvl, x);
          }
          {
            ModuleVector lhs = w_mode(n, ctx.s_apply(1, m, x), ext);
            lhs -= ctx.s_apply(1, m, wn_x);
            ModuleVector rhs = ctx.s_apply(0, n + m, x);
            rhs *= rat(m) * c2;
            if (lhs != rhs) record("[W(n),S1(m)]", n, m, lvl, x);
          }
          {
            ModuleVector lhs = ext.apply(igen(n), ctx.s_apply(1, m, x));
            lhs -= ctx.s_apply(1, m, in_x);
            ModuleVector rhs = ctx.s_apply(0, n + m, x);
            if (lhs != rhs) record("[I(n),S1(m)]", n, m, lvl, x);
          }
        }
      }
    }
  }
  return rep;
}

}  // namespace w22hv
