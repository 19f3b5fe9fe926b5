#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "w22hv/characters.hpp"
#include "w22hv/pbw.hpp"
#include "w22hv/verma.hpp"

using namespace w22hv;

namespace {

ModuleSpec hv_spec(const Rational& h, const Rational& h_i) {
  return HighestWeightSpec::hv(make_charges(rat(1), rat(1)), h, h_i).to_module_spec();
}

ModuleSpec w22_spec(const Rational& h, const Rational& h_w) {
  return HighestWeightSpec::w22(make_charges(rat(1), rat(1)), h, h_w).to_module_spec();
}

// Straightens an arbitrary word by always commuting at a chosen violation;
// independent route used for the confluence check.
ModuleVector straighten_wordwise(std::vector<Mode> word, const ModuleSpec& spec, bool leftmost);

bool is_violation(Mode a, Mode b, const ModuleSpec&) {
  // true if "a b" may not stand adjacent in a straightened word: nonnegative
  // modes belong on the right, negative modes in canonical PBW order
  if (a.index >= 0) return b.index < 0;
  if (b.index >= 0) return false;
  if (a.family == Family::Vir && b.family != Family::Vir) return true;
  if (a.family == b.family) return -a.index < -b.index;
  return false;  // x-family left of Vir
}

ModuleVector straighten_wordwise(std::vector<Mode> word, const ModuleSpec& spec, bool leftmost) {
  // find violations
  std::vector<size_t> spots;
  for (size_t i = 0; i + 1 < word.size(); ++i)
    if (is_violation(word[i], word[i + 1], spec)) spots.push_back(i);
  if (spots.empty()) {
    // canonical word, possibly ending in zero/positive modes acting on hw
    ModuleVector v = ModuleVector::unit(unit_mono("hw"));
    for (auto it = word.rbegin(); it != word.rend(); ++it) v = apply_mode(*it, v, spec);
    return v;
  }
  size_t i = leftmost ? spots.front() : spots.back();
  std::vector<Mode> swapped = word;
  std::swap(swapped[i], swapped[i + 1]);
  ModuleVector out = straighten_wordwise(swapped, spec, leftmost);
  BracketResult br = bracket(spec.kind, word[i], word[i + 1], spec.charges);
  std::vector<Mode> shorter(word.begin(), word.begin() + i);
  std::vector<Mode> tail(word.begin() + i + 2, word.end());
  for (const auto& [c, m] : br.linear) {
    std::vector<Mode> w2 = shorter;
    w2.push_back(m);
    w2.insert(w2.end(), tail.begin(), tail.end());
    ModuleVector t = straighten_wordwise(w2, spec, leftmost);
    t *= c;
    out += t;
  }
  if (br.central != 0) {
    std::vector<Mode> w2 = shorter;
    w2.insert(w2.end(), tail.begin(), tail.end());
    ModuleVector t = straighten_wordwise(w2, spec, leftmost);
    t *= br.central;
    out += t;
  }
  return out;
}

}  // namespace

TEST_CASE("monomial canonical order matches the graded enumeration") {
  ModuleSpec spec = hv_spec(rat(0), rat(0));
  auto b2 = graded_basis(spec, "hw", 2);
  REQUIRE(b2.size() == 5);
  CHECK(b2[0] == PBWMonomial{{2}, {}, "hw"});
  CHECK(b2[1] == PBWMonomial{{1, 1}, {}, "hw"});
  CHECK(b2[2] == PBWMonomial{{1}, {1}, "hw"});
  CHECK(b2[3] == PBWMonomial{{}, {2}, "hw"});
  CHECK(b2[4] == PBWMonomial{{}, {1, 1}, "hw"});
  CHECK(graded_basis(spec, "hw", 0).size() == 1);
  CHECK(graded_basis(spec, "hw", 1).size() == 2);
}

TEST_CASE("graded basis dimensions equal P2(n) for n <= 10") {
  ModuleSpec spec = hv_spec(rat(2, 7), rat(5, 3));
  auto p2 = p2_table(10);
  for (int n = 0; n <= 10; ++n)
    CHECK(static_cast<long long>(graded_basis(spec, "hw", n).size()) == p2[n]);
}

TEST_CASE("normal ordering: spec examples") {
  SECTION("L(1) L(-1) hw = 2h hw") {
    ModuleSpec spec = hv_spec(rat(5, 7), rat(0));
    ModuleVector v = normal_order({vir(1), vir(-1)}, "hw", spec);
    REQUIRE(v.size() == 1);
    CHECK(v.coeff(unit_mono("hw")) == rat(10, 7));
  }
  SECTION("L(-2) I(-1) hw = I(-1)L(-2) hw + I(-3) hw") {
    ModuleSpec spec = hv_spec(rat(0), rat(0));
    ModuleVector v = normal_order({vir(-2), igen(-1)}, "hw", spec);
    REQUIRE(v.size() == 2);
    CHECK(v.coeff(PBWMonomial{{1}, {2}, "hw"}) == 1);
    CHECK(v.coeff(PBWMonomial{{3}, {}, "hw"}) == 1);
  }
  SECTION("W(0) L(-1) hw = h_W L(-1) hw + W(-1) hw") {
    Rational h_w = rat(-3, 4);
    ModuleSpec spec = w22_spec(rat(2), h_w);
    ModuleVector v = normal_order({wgen(0), vir(-1)}, "hw", spec);
    REQUIRE(v.size() == 2);
    CHECK(v.coeff(PBWMonomial{{}, {1}, "hw"}) == h_w);
    CHECK(v.coeff(PBWMonomial{{1}, {}, "hw"}) == 1);
  }
}

TEST_CASE("apply_mode: spec examples") {
  SECTION("L(0) scales a level-n monomial by h+n") {
    Rational h = rat(3, 5);
    ModuleSpec spec = hv_spec(h, rat(1, 2));
    PBWMonomial m{{2, 1}, {3, 1, 1}, "hw"};  // level 8
    ModuleVector v = apply_mode(vir(0), ModuleVector::unit(m), spec);
    REQUIRE(v.size() == 1);
    CHECK(v.coeff(m) == h + 8);
  }
  SECTION("I(1) I(-1) hw = 0 at level zero") {
    ModuleSpec spec = hv_spec(rat(4), rat(9, 2));
    ModuleVector v = apply_mode(igen(1), ModuleVector::unit(PBWMonomial{{1}, {}, "hw"}), spec);
    CHECK(v.zero());
  }
  SECTION("W(2) W(-1) hw = 0") {
    ModuleSpec spec = w22_spec(rat(4), rat(9, 2));
    ModuleVector v = apply_mode(wgen(2), ModuleVector::unit(PBWMonomial{{1}, {}, "hw"}), spec);
    CHECK(v.zero());
  }
  SECTION("unknown base vector is rejected") {
    ModuleSpec spec = hv_spec(rat(0), rat(0));
    CHECK_THROWS_AS(apply_mode(vir(1), ModuleVector::unit(unit_mono("nope")), spec),
                    std::invalid_argument);
  }
}

TEST_CASE("apply_mode is linear") {
  ModuleSpec spec = hv_spec(rat(5, 7), rat(-2, 3));
  std::mt19937 rng(20240611);
  auto b3 = graded_basis(spec, "hw", 3);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(b3.size()) - 1);
  std::uniform_int_distribution<int> coeff(-4, 4);
  for (int trial = 0; trial < 20; ++trial) {
    ModuleVector u = ModuleVector::unit(b3[pick(rng)], rat(coeff(rng)));
    ModuleVector v = ModuleVector::unit(b3[pick(rng)], rat(coeff(rng)));
    Rational a = rat(coeff(rng)), b = rat(coeff(rng));
    for (Mode m : {vir(1), igen(-2), vir(-1), igen(2), vir(0)}) {
      ModuleVector lhs = apply_mode(m, a * u + b * v, spec);
      ModuleVector rhs = a * apply_mode(m, u, spec) + b * apply_mode(m, v, spec);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("confluence: leftmost and rightmost strategies agree with the rewriter") {
  std::mt19937 rng(987123);
  std::uniform_int_distribution<int> idx(-4, 4);
  std::uniform_int_distribution<int> len(1, 6);
  std::uniform_int_distribution<int> fam(0, 1);
  for (AlgebraKind kind : {AlgebraKind::HV, AlgebraKind::W22}) {
    ModuleSpec spec = kind == AlgebraKind::HV ? hv_spec(rat(5, 7), rat(-2, 3))
                                              : w22_spec(rat(5, 7), rat(-2, 3));
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<Mode> word;
      int L = len(rng);
      for (int i = 0; i < L; ++i)
        word.push_back(Mode{fam(rng) ? Family::Vir : x_family(kind), idx(rng)});
      ModuleVector direct = normal_order(std::span<const Mode>(word), "hw", spec);
      ModuleVector left = straighten_wordwise(word, spec, true);
      ModuleVector right = straighten_wordwise(word, spec, false);
      CHECK(direct == left);
      CHECK(direct == right);
    }
  }
}

TEST_CASE("vector printing") {
  ModuleSpec spec = hv_spec(rat(2), rat(0));
  ModuleVector v;
  v.add(PBWMonomial{{}, {1}, "hw"}, rat(1));
  v.add(PBWMonomial{{1}, {}, "hw"}, rat(2));
  CHECK(v.str(spec.xletter()) == "(L(-1) + 2 I(-1)) hw");
  ModuleVector single = ModuleVector::unit(PBWMonomial{{1}, {}, "hw"});
  CHECK(single.str('W') == "W(-1) hw");
  ModuleVector z;
  CHECK(z.str('I') == "0");
  ModuleVector powers = ModuleVector::unit(PBWMonomial{{1, 1}, {2}, "hw"}, rat(-3, 4));
  CHECK(powers.str('I') == "-3/4 I(-1)^2 L(-2) hw");
}
