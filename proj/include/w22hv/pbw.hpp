#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "w22hv/algebra.hpp"
#include "w22hv/rational.hpp"

namespace w22hv {

namespace detail {

// Orders two weakly-decreasing part vectors so that the lexicographically
// larger one comes first ([3] before [2,1] before [1,1,1]).
inline std::strong_ordering lex_desc(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare_three_way(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace detail

/// Canonical normal-ordered word of negative modes attached to a base vector:
///
///   X(-m_s) ... X(-m_1) L(-n_t) ... L(-n_1) base,   m_s >= ... >= m_1 >= 1,
///                                                   n_t >= ... >= n_1 >= 1,
///
/// where X is W for W(2,2) and I for Heisenberg-Virasoro. Parts are stored
/// as positive magnitudes in weakly decreasing (left-to-right) order.
struct PBWMonomial {
  std::vector<int> xpart;
  std::vector<int> lpart;
  std::string base{"hw"};

  int xlevel() const { return std::accumulate(xpart.begin(), xpart.end(), 0); }
  int level() const { return xlevel() + std::accumulate(lpart.begin(), lpart.end(), 0); }
  bool factors_empty() const { return xpart.empty() && lpart.empty(); }
  size_t length() const { return xpart.size() + lpart.size(); }

  friend bool operator==(const PBWMonomial&, const PBWMonomial&) = default;

  // Canonical total order: level, then x-heavier monomials first, then
  // lexicographically larger part vectors first, then base tag. This is the
  // enumeration order of graded bases; the *leading* monomial of a vector is
  // the greatest one (pure-L monomials sort last within a level).
  friend std::strong_ordering operator<=>(const PBWMonomial& a, const PBWMonomial& b) {
    if (auto c = a.level() <=> b.level(); c != 0) return c;
    if (auto c = b.xlevel() <=> a.xlevel(); c != 0) return c;
    if (auto c = detail::lex_desc(a.xpart, b.xpart); c != 0) return c;
    if (auto c = detail::lex_desc(a.lpart, b.lpart); c != 0) return c;
    return a.base <=> b.base;
  }

  /// Unique textual key; xletter is 'W' or 'I' depending on the algebra.
  std::string str(char xletter) const {
    std::ostringstream os;
    auto run = [&os](const std::vector<int>& parts, char letter) {
      for (size_t i = 0; i < parts.size();) {
        size_t j = i;
        while (j < parts.size() && parts[j] == parts[i]) ++j;
        os << letter << "(-" << parts[i] << ")";
        if (j - i > 1) os << "^" << (j - i);
        i = j;
      }
    };
    run(xpart, xletter);
    if (!xpart.empty() && !lpart.empty()) os << " ";
    run(lpart, 'L');
    if (!factors_empty()) os << " ";
    os << base;
    return os.str();
  }
};

inline PBWMonomial unit_mono(std::string base) { return PBWMonomial{{}, {}, std::move(base)}; }

/// Finite linear combination of PBW monomials with exact rational
/// coefficients. Zero coefficients are never stored.
class ModuleVector {
 public:
  ModuleVector() = default;

  static ModuleVector unit(PBWMonomial m, Rational c = Rational(1)) {
    ModuleVector v;
    if (c != 0) v.terms_.emplace(std::move(m), std::move(c));
    return v;
  }

  bool zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  const std::map<PBWMonomial, Rational>& terms() const { return terms_; }

  Rational coeff(const PBWMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add(const PBWMonomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  ModuleVector& operator+=(const ModuleVector& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  ModuleVector& operator-=(const ModuleVector& o) {
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  ModuleVector& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend ModuleVector operator+(ModuleVector a, const ModuleVector& b) { return a += b; }
  friend ModuleVector operator-(ModuleVector a, const ModuleVector& b) { return a -= b; }
  friend ModuleVector operator*(const Rational& s, ModuleVector v) { return v *= s; }

  friend bool operator==(const ModuleVector&, const ModuleVector&) = default;

  /// Greatest monomial in canonical order; nullptr on the zero vector.
  const PBWMonomial* leading() const { return terms_.empty() ? nullptr : &terms_.rbegin()->first; }

  /// Rescaled so the leading monomial has coefficient one.
  ModuleVector normalized() const {
    if (terms_.empty()) return {};
    ModuleVector v = *this;
    v *= Rational(1) / terms_.rbegin()->second;
    return v;
  }

  /// Level of a homogeneous vector; throws on mixed levels or zero.
  int homogeneous_level() const {
    if (terms_.empty()) throw std::logic_error("homogeneous_level of zero vector");
    int lvl = terms_.begin()->first.level();
    for (const auto& [m, c] : terms_)
      if (m.level() != lvl) throw std::logic_error("vector is not homogeneous");
    return lvl;
  }

  std::map<int, ModuleVector> split_levels() const {
    std::map<int, ModuleVector> out;
    for (const auto& [m, c] : terms_) out[m.level()].add(m, c);
    return out;
  }

  /// Terms printed leading-first, e.g. "(L(-1) + 2 I(-1)) hw".
  std::string str(char xletter) const {
    if (terms_.empty()) return "0";
    bool one_base = true;
    const std::string& b0 = terms_.begin()->first.base;
    bool all_unit_base = true;
    for (const auto& [m, c] : terms_) {
      if (m.base != b0) one_base = false;
      if (!m.factors_empty()) all_unit_base = false;
    }
    std::ostringstream os;
    auto term = [&](const PBWMonomial& m, const Rational& c, bool first, bool with_base) {
      Rational mag = c < 0 ? Rational(-c) : c;
      if (first)
        os << (c < 0 ? "-" : "");
      else
        os << (c < 0 ? " - " : " + ");
      std::string factors;
      if (with_base) {
        factors = m.str(xletter);
      } else {
        PBWMonomial stripped = m;
        stripped.base.clear();
        factors = stripped.str(xletter);
        while (!factors.empty() && factors.back() == ' ') factors.pop_back();
      }
      if (mag != 1 || factors.empty()) {
        os << rat_str(mag);
        if (!factors.empty()) os << " ";
      }
      os << factors;
    };
    if (one_base && !all_unit_base && terms_.size() > 1) {
      os << "(";
      bool first = true;
      for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        term(it->first, it->second, first, false);
        first = false;
      }
      os << ") " << b0;
    } else {
      bool first = true;
      for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        term(it->first, it->second, first, true);
        first = false;
      }
    }
    return os.str();
  }

 private:
  std::map<PBWMonomial, Rational> terms_;
};

/// Action of the zero and positive modes on one base vector. Positive modes
/// annihilate every base vector in scope; L(0) acts by `weight`; the zero
/// mode of the second family acts either by an eigenvalue or by an explicit
/// combination of base vectors (e.g. I(0) v1 = v0).
struct BaseRule {
  Rational weight;
  std::optional<Rational> x0_eigen;
  std::map<std::string, Rational> x0_vector;
};

/// A highest-weight-type module presentation: algebra kind, central charges
/// and base-vector rules. Quotient structure is layered on top of this by
/// QuotientModel.
struct ModuleSpec {
  AlgebraKind kind{AlgebraKind::HV};
  CentralCharges charges;
  std::map<std::string, BaseRule> bases;

  Family xfam() const { return x_family(kind); }
  char xletter() const { return kind == AlgebraKind::W22 ? 'W' : 'I'; }

  const BaseRule& base_rule(const std::string& tag) const {
    auto it = bases.find(tag);
    if (it == bases.end()) throw std::invalid_argument("unknown base vector '" + tag + "'");
    return it->second;
  }
};

inline ModuleVector apply_mode(Mode m, const ModuleVector& v, const ModuleSpec& spec);

/// Applies one mode to a canonical monomial, returning the result in PBW
/// form. This is the normal-ordering rewriter: a negative mode that fits the
/// canonical order is prepended, everything else is commuted past the
/// leftmost factor via the bracket tables and resolved on the base vector.
inline ModuleVector apply_mode(Mode m, const PBWMonomial& mono, const ModuleSpec& spec) {
  if (!mode_in_algebra(m, spec.kind))
    throw std::invalid_argument("apply_mode: mode " + m.str() + " not in algebra");
  if (m.index < 0) {
    const int mag = -m.index;
    if (m.family != Family::Vir) {
      if (mono.xpart.empty() || mag >= mono.xpart.front()) {
        PBWMonomial r = mono;
        r.xpart.insert(r.xpart.begin(), mag);
        return ModuleVector::unit(std::move(r));
      }
    } else {
      if (mono.xpart.empty() && (mono.lpart.empty() || mag >= mono.lpart.front())) {
        PBWMonomial r = mono;
        r.lpart.insert(r.lpart.begin(), mag);
        return ModuleVector::unit(std::move(r));
      }
    }
  }
  if (mono.factors_empty()) {
    const BaseRule& rule = spec.base_rule(mono.base);
    if (m.index > 0) return {};
    if (m.family == Family::Vir) return ModuleVector::unit(mono, rule.weight);
    if (rule.x0_eigen) return ModuleVector::unit(mono, *rule.x0_eigen);
    ModuleVector out;
    for (const auto& [tag, c] : rule.x0_vector) out.add(unit_mono(tag), c);
    return out;
  }
  // m F rest = F (m rest) + [m, F] rest
  Mode f;
  PBWMonomial rest = mono;
  if (!mono.xpart.empty()) {
    f = Mode{spec.xfam(), -mono.xpart.front()};
    rest.xpart.erase(rest.xpart.begin());
  } else {
    f = vir(-mono.lpart.front());
    rest.lpart.erase(rest.lpart.begin());
  }
  ModuleVector out = apply_mode(f, apply_mode(m, rest, spec), spec);
  BracketResult br = bracket(spec.kind, m, f, spec.charges);
  for (const auto& [c, bm] : br.linear) {
    ModuleVector t = apply_mode(bm, rest, spec);
    t *= c;
    out += t;
  }
  if (br.central != 0) out.add(rest, br.central);
  return out;
}

inline ModuleVector apply_mode(Mode m, const ModuleVector& v, const ModuleSpec& spec) {
  ModuleVector out;
  for (const auto& [mono, c] : v.terms()) {
    ModuleVector t = apply_mode(m, mono, spec);
    t *= c;
    out += t;
  }
  return out;
}

/// Module action of an arbitrary mode word on a base vector, reduced to
/// canonical PBW form. The word acts operator-style: the rightmost mode is
/// applied first.
inline ModuleVector normal_order(std::span<const Mode> word, const std::string& base,
                                 const ModuleSpec& spec) {
  ModuleVector v = ModuleVector::unit(unit_mono(base));
  for (auto it = word.rbegin(); it != word.rend(); ++it) v = apply_mode(*it, v, spec);
  return v;
}

inline ModuleVector normal_order(std::initializer_list<Mode> word, const std::string& base,
                                 const ModuleSpec& spec) {
  return normal_order(std::span<const Mode>(word.begin(), word.size()), base, spec);
}

namespace detail {

// All weakly-decreasing partitions of n, lexicographically largest first.
inline void partitions_desc(int n, int maxpart, std::vector<int>& cur,
                            std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(n, maxpart); p >= 1; --p) {
    cur.push_back(p);
    partitions_desc(n - p, p, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<int>> partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  partitions_desc(n, n, cur, out);
  return out;
}

}  // namespace detail

/// All PBW monomials of level n over one base vector, in canonical order.
inline std::vector<PBWMonomial> graded_basis(const ModuleSpec& spec, const std::string& base,
                                             int n) {
  if (n < 0) throw std::invalid_argument("graded_basis: negative level");
  std::vector<PBWMonomial> out;
  for (int xlev = n; xlev >= 0; --xlev)
    for (const auto& xp : detail::partitions(xlev))
      for (const auto& lp : detail::partitions(n - xlev)) out.push_back(PBWMonomial{xp, lp, base});
  std::sort(out.begin(), out.end());
  (void)spec;
  return out;
}

/// Level-n monomials over every base vector of the spec, canonical order.
inline std::vector<PBWMonomial> graded_basis(const ModuleSpec& spec, int n) {
  std::vector<PBWMonomial> out;
  for (const auto& [tag, rule] : spec.bases) {
    auto part = graded_basis(spec, tag, n);
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace w22hv
