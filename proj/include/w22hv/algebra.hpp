#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "w22hv/rational.hpp"

namespace w22hv {

/// The two Lie algebras in scope. W22 is the W(2,2) algebra with modes
/// L(n), W(n); HV is the twisted Heisenberg-Virasoro algebra at level zero
/// with modes L(n), I(n).
enum class AlgebraKind : uint8_t { W22, HV };

enum class Family : uint8_t { Vir, Wgen, Igen };

/// One Lie algebra generator: (Vir, n) is L(n), (Wgen, n) is W(n),
/// (Igen, n) is I(n). Central elements are never represented as modes;
/// their action is folded into scalars at bracket time.
struct Mode {
  Family family{Family::Vir};
  int index{0};

  friend bool operator==(const Mode&, const Mode&) = default;

  std::string str() const {
    const char* letter = family == Family::Vir ? "L" : (family == Family::Wgen ? "W" : "I");
    return std::string(letter) + "(" + std::to_string(index) + ")";
  }
};

inline Mode vir(int n) { return Mode{Family::Vir, n}; }
inline Mode wgen(int n) { return Mode{Family::Wgen, n}; }
inline Mode igen(int n) { return Mode{Family::Igen, n}; }

inline Family x_family(AlgebraKind k) {
  return k == AlgebraKind::W22 ? Family::Wgen : Family::Igen;
}

inline bool mode_in_algebra(Mode m, AlgebraKind k) {
  return m.family == Family::Vir || m.family == x_family(k);
}

inline std::string algebra_name(AlgebraKind k) { return k == AlgebraKind::W22 ? "w22" : "hv"; }

/// Central charge data shared by every module in scope. c_W is always the
/// derived value -24*c_{L,I}^2 and C_I acts by zero (level zero).
struct CentralCharges {
  Rational c_l;
  Rational c_li;
  Rational c_w;
  Rational c_i;
};

inline CentralCharges make_charges(const Rational& c_l, const Rational& c_li) {
  if (c_li == 0) throw std::domain_error("c_{L,I} must be nonzero");
  CentralCharges cc;
  cc.c_l = c_l;
  cc.c_li = c_li;
  cc.c_w = Rational(-24) * c_li * c_li;
  cc.c_i = 0;
  return cc;
}

/// Result of a bracket [a, b]: a linear part (at most one mode for the two
/// algebras in scope) and a central part already evaluated against the
/// central charges.
struct BracketResult {
  std::vector<std::pair<Rational, Mode>> linear;
  Rational central{0};
};

namespace detail {

// (n^3 - n)/12, the Virasoro cocycle coefficient.
inline Rational vir_cocycle(long n) { return rat(n * n * n - n, 12); }

}  // namespace detail

/// [a, b] in W(2,2):
///   [L(n), L(m)] = (n-m) L(n+m) + d_{n,-m} (n^3-n)/12 c_L
///   [L(n), W(m)] = (n-m) W(n+m) + d_{n,-m} (n^3-n)/12 c_W
///   [W(n), W(m)] = 0
inline BracketResult bracket_w22(Mode a, Mode b, const CentralCharges& cc) {
  if (a.family == Family::Igen || b.family == Family::Igen)
    throw std::invalid_argument("bracket_w22: Heisenberg mode in W(2,2) bracket");
  BracketResult out;
  const long n = a.index, m = b.index;
  if (a.family == Family::Vir && b.family == Family::Vir) {
    if (n != m) out.linear.emplace_back(rat(n - m), vir(static_cast<int>(n + m)));
    if (n == -m) out.central = detail::vir_cocycle(n) * cc.c_l;
  } else if (a.family == Family::Vir && b.family == Family::Wgen) {
    if (n != m) out.linear.emplace_back(rat(n - m), wgen(static_cast<int>(n + m)));
    if (n == -m) out.central = detail::vir_cocycle(n) * cc.c_w;
  } else if (a.family == Family::Wgen && b.family == Family::Vir) {
    out = bracket_w22(b, a, cc);
    for (auto& [c, mode] : out.linear) c = -c;
    out.central = -out.central;
  }
  // [W, W] = 0: nothing to do.
  return out;
}

/// [a, b] in the twisted Heisenberg-Virasoro algebra at level zero:
///   [L(n), L(m)] = (n-m) L(n+m) + d_{n,-m} (n^3-n)/12 c_L
///   [L(n), I(m)] = -m I(n+m) - d_{n,-m} (n^2+n) c_{L,I}
///   [I(n), I(m)] = n d_{n,-m} c_I  (zero, since c_I = 0)
inline BracketResult bracket_hv(Mode a, Mode b, const CentralCharges& cc) {
  if (a.family == Family::Wgen || b.family == Family::Wgen)
    throw std::invalid_argument("bracket_hv: W(2,2) mode in Heisenberg-Virasoro bracket");
  BracketResult out;
  const long n = a.index, m = b.index;
  if (a.family == Family::Vir && b.family == Family::Vir) {
    if (n != m) out.linear.emplace_back(rat(n - m), vir(static_cast<int>(n + m)));
    if (n == -m) out.central = detail::vir_cocycle(n) * cc.c_l;
  } else if (a.family == Family::Vir && b.family == Family::Igen) {
    if (m != 0) out.linear.emplace_back(rat(-m), igen(static_cast<int>(n + m)));
    if (n == -m) out.central = rat(-(n * n + n)) * cc.c_li;
  } else if (a.family == Family::Igen && b.family == Family::Vir) {
    out = bracket_hv(b, a, cc);
    for (auto& [c, mode] : out.linear) c = -c;
    out.central = -out.central;
  } else {
    // [I(n), I(m)] = n d_{n,-m} C_I with C_I acting by zero.
    if (n == -m) out.central = rat(n) * cc.c_i;
  }
  return out;
}

inline BracketResult bracket(AlgebraKind k, Mode a, Mode b, const CentralCharges& cc) {
  return k == AlgebraKind::W22 ? bracket_w22(a, b, cc) : bracket_hv(a, b, cc);
}

}  // namespace w22hv
