#include <catch2/catch_amalgamated.hpp>

#include "w22hv/embedding.hpp"

using namespace w22hv;

namespace {

const CentralCharges kCC = make_charges(rat(1), rat(1));
const std::vector<CentralCharges> kChargeSets{
    make_charges(rat(1), rat(1)), make_charges(rat(26), rat(1, 2)),
    make_charges(rat(-7, 3), rat(2, 5))};

}  // namespace

TEST_CASE("w_mode point values") {
  SECTION("W(0) hw = h_I (h_I - 2c) hw") {
    auto spec = HighestWeightSpec::hv(kCC, rat(3, 4), rat(7, 5));
    auto host = verma_module(spec);
    ModuleVector hw = ModuleVector::unit(unit_mono("hw"));
    ModuleVector r = w_mode(0, hw, host);
    REQUIRE(r.size() == 1);
    CHECK(r.coeff(unit_mono("hw")) == rat(7, 5) * (rat(7, 5) - 2 * kCC.c_li));
  }
  SECTION("W(-2) 1 = (I(-1)^2 + 2c I(-2)) 1 on the vacuum weight") {
    for (const auto& cc : kChargeSets) {
      auto spec = HighestWeightSpec::hv(cc, rat(0), rat(0));
      auto host = verma_module(spec);
      ModuleVector r = w_mode(-2, ModuleVector::unit(unit_mono("hw")), host);
      REQUIRE(r.size() == 2);
      CHECK(r.coeff(PBWMonomial{{1, 1}, {}, "hw"}) == 1);
      CHECK(r.coeff(PBWMonomial{{2}, {}, "hw"}) == 2 * cc.c_li);
    }
  }
  SECTION("W(-1) hw = 2 h_I I(-1) hw") {
    auto spec = HighestWeightSpec::hv(kCC, rat(2), rat(5, 3));
    auto host = verma_module(spec);
    ModuleVector r = w_mode(-1, ModuleVector::unit(unit_mono("hw")), host);
    REQUIRE(r.size() == 1);
    CHECK(r.coeff(PBWMonomial{{1}, {}, "hw"}) == rat(10, 3));
  }
  SECTION("grading: level(W(n) x) = level(x) - n") {
    auto spec = HighestWeightSpec::hv(kCC, rat(1, 2), rat(1, 3));
    auto host = verma_module(spec);
    ModuleVector x = ModuleVector::unit(PBWMonomial{{2}, {1}, "hw"});  // level 3
    for (int n : {-3, -1, 0, 1, 2}) {
      ModuleVector r = w_mode(n, x, host);
      if (!r.zero()) CHECK(r.homogeneous_level() == 3 - n);
    }
  }
}

TEST_CASE("W(2,2) relations hold through the embedding and fail when c_W is perturbed") {
  for (const auto& cc : kChargeSets) {
    auto spec = HighestWeightSpec::hv(cc, rat(5, 7), rat(1, 3));
    auto host = verma_module(spec);
    auto rep = verify_w22_relations(host, 3, 3);
    CHECK(rep.ok);
    auto bad = verify_w22_relations(host, 2, 2, cc.c_w + 1);
    CHECK_FALSE(bad.ok);
    REQUIRE_FALSE(bad.failures.empty());
    // the witness pins a concrete graded vector and mode pair
    CHECK(bad.failures[0].n == -bad.failures[0].m);
  }
}

TEST_CASE("embedding commutator point checks") {
  auto spec = HighestWeightSpec::hv(kCC, rat(2, 3), rat(4, 5));
  auto host = verma_module(spec);
  Rational h_w = spec.w22_second();
  ModuleVector hw = ModuleVector::unit(unit_mono("hw"));
  SECTION("[L(2), W(-2)] hw = (4 h_W + c_W/2) hw") {
    ModuleVector lhs = host.apply(vir(2), w_mode(-2, hw, host));
    lhs -= w_mode(-2, host.apply(vir(2), hw), host);
    REQUIRE(lhs.size() == 1);
    CHECK(lhs.coeff(unit_mono("hw")) == 4 * h_w + kCC.c_w / 2);
  }
  SECTION("[L(0), W(-n)] x = n W(-n) x") {
    ModuleVector x = ModuleVector::unit(PBWMonomial{{1}, {1}, "hw"});
    for (int n : {1, 2, 3}) {
      ModuleVector lhs = host.apply(vir(0), w_mode(-n, x, host));
      lhs -= w_mode(-n, host.apply(vir(0), x), host);
      ModuleVector rhs = w_mode(-n, x, host);
      rhs *= rat(n);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("psi_map") {
  SECTION("hw maps to hw; weights validated") {
    auto target = HighestWeightSpec::hv(kCC, rat(1, 2), rat(3));
    auto source = target.w22_counterpart();
    ModuleVector hw = ModuleVector::unit(unit_mono("hw"));
    CHECK(psi_map(hw, source, target) == hw);
    auto bad_target = HighestWeightSpec::hv(kCC, rat(1, 2), rat(4));
    CHECK_THROWS_AS(psi_map(hw, source, bad_target), std::invalid_argument);
  }
  SECTION("V^W22(0,0) -> V^HV(0,0): u'_1 = W(-1)hw dies, u_1 = L(-1)hw survives") {
    auto target = HighestWeightSpec::hv(kCC, rat(0), rat(0));
    auto source = target.w22_counterpart();
    REQUIRE(source.second == 0);
    ModuleVector w1 = ModuleVector::unit(PBWMonomial{{1}, {}, "hw"});
    CHECK(psi_map(w1, source, target).zero());
    ModuleVector l1 = ModuleVector::unit(PBWMonomial{{}, {1}, "hw"});
    ModuleVector img = psi_map(l1, source, target);
    CHECK(img == l1);
    // and the image is an HV-singular vector
    auto sing = find_singular(target, 1);
    REQUIRE(sing.size() == 1);
    CHECK(sing[0] == img);
  }
  SECTION("plus-atypical: the cosingular image keeps L(-p)^r and avoids the maximal submodule") {
    auto target = HighestWeightSpec::hv(kCC, rat(0), 2 * kCC.c_li);
    auto source = target.w22_counterpart();
    auto cos = find_cosingular(source, 1);
    REQUIRE(cos.size() == 1);
    ModuleVector img = psi_map(cos[0], source, target);
    CHECK(img.coeff(PBWMonomial{{}, {1}, "hw"}) == 1);
    auto host = verma_module(target);
    auto cl = submodule_closure(host, find_singular(target, 1), algebra_action(host), 1);
    RowSpace span(host.basis(1).size());
    for (const auto& v : cl.bases[1]) span.add(host.coords(v, 1));
    CHECK_FALSE(span.contains(host.coords(img, 1)));
  }
  SECTION("minus branch: the W22 maximal submodule maps into the HV maximal submodule") {
    auto target = HighestWeightSpec::hv(kCC, rat(0), rat(0));
    auto source = target.w22_counterpart();
    auto host = verma_module(target);
    auto hv_max = submodule_closure(host, find_singular(target, 1), algebra_action(host), 4);
    auto w22_host = verma_module(source);
    std::vector<ModuleVector> w22_gens;
    for (int n = 1; n <= 4; ++n)
      for (const auto& v : find_singular(source, n)) w22_gens.push_back(v);
    for (const auto& v : find_cosingular(source, 1)) w22_gens.push_back(v);
    auto w22_max = submodule_closure(w22_host, w22_gens, algebra_action(w22_host), 4);
    for (int n = 1; n <= 4; ++n) {
      RowSpace span(host.basis(n).size());
      for (const auto& v : hv_max.bases[n]) span.add(host.coords(v, n));
      for (const auto& v : w22_max.bases[n]) {
        ModuleVector img = psi_map(v, source, target);
        if (img.zero()) continue;
        CHECK(span.contains(host.coords(img, n)));
      }
    }
  }
}

TEST_CASE("branch: typical host is irreducible over W(2,2)") {
  auto spec = HighestWeightSpec::hv(kCC, rat(1, 3), kCC.c_li / 3);
  auto rep = branch(spec, 5);
  CHECK(rep.ok);
  CHECK_FALSE(rep.cls.atypical);
  CHECK(rep.host_dims == std::vector<long long>{1, 2, 5, 10, 20, 36});
  for (long long d : rep.singular_dims) CHECK(d == 0);
}

TEST_CASE("branch: plus-atypical host (0, 2c)") {
  auto spec = HighestWeightSpec::hv(kCC, rat(0), 2 * kCC.c_li);
  auto rep = branch(spec, 5);
  CHECK(rep.ok);
  REQUIRE(rep.cls.atypical);
  CHECK(rep.cls.branch == Branch::plus);
  CHECK(rep.host_dims == std::vector<long long>{1, 1, 3, 5, 10, 16});
  CHECK(rep.sub_dims == std::vector<long long>{0, 1, 1, 3, 5, 10});
  CHECK(rep.quot_dims == std::vector<long long>{1, 0, 2, 2, 5, 6});
  CHECK(rep.singular_dims == std::vector<long long>{1, 0, 0, 0, 0});
  CHECK(rep.nonsplit_certified);
  CHECK(rep.certificate_level == 5);
}

TEST_CASE("branch: minus-atypical host (0, 0) realizes the non-split sequence") {
  auto spec = HighestWeightSpec::hv(kCC, rat(0), rat(0));
  auto rep = branch(spec, 5);
  CHECK(rep.ok);
  REQUIRE(rep.cls.atypical);
  CHECK(rep.cls.branch == Branch::minus);
  CHECK(rep.host_dims == std::vector<long long>{1, 1, 3, 5, 10, 16});
  CHECK(rep.sub_dims == std::vector<long long>{1, 0, 2, 2, 5, 6});
  CHECK(rep.quot_dims == std::vector<long long>{0, 1, 1, 3, 5, 10});
  for (long long d : rep.singular_dims) CHECK(d == 0);
  CHECK(rep.nonsplit_certified);
  CHECK(rep.certificate_level == 1);
}

TEST_CASE("contragredient duality of irreducible dimensions") {
  SECTION("atypical pairs (h, (1 +/- p) c)") {
    for (int p : {1, 2, 3}) {
      auto spec = HighestWeightSpec::hv(kCC, rat(5, 7), (1 + rat(p)) * kCC.c_li);
      auto rep = contragredient_check(spec, 4);
      CHECK(rep.ok);
    }
  }
  SECTION("typical pair has full Verma dimensions on both sides") {
    auto spec = HighestWeightSpec::hv(kCC, rat(-3, 2), kCC.c_li / 3);
    auto rep = contragredient_check(spec, 4);
    CHECK(rep.ok);
    CHECK(rep.dims == std::vector<long long>{1, 2, 5, 10, 20});
  }
  SECTION("W22 self-duality is trivial") {
    auto spec = HighestWeightSpec::w22(kCC, rat(5, 7), rat(1, 3));
    CHECK(contragredient_check(spec, 3).ok);
  }
}

TEST_CASE("direct-sum decomposition of the typical minus-branch Verma module") {
  for (int p : {1, 2}) {
    auto rep = verma_branch_decomposition(rat(1, 3), p, kCC, 5);
    CHECK(rep.ok);
    CHECK(rep.w_singular_ok);
    CHECK(rep.independent);
    auto p2 = p2_table(5);
    for (int n = 0; n <= 5; ++n) CHECK(rep.dim_sums[n] == p2[n]);
    // each closure matches the shifted irreducible W22 character
    auto q = quotient_dims(p, 5);
    for (size_t i = 0; i < rep.closure_dims.size(); ++i) {
      int shift = rep.chain_levels[i];
      for (int n = 0; n <= 5; ++n) {
        long long expect = n < shift ? 0 : q[n - shift];
        CHECK(rep.closure_dims[i][n] == expect);
      }
    }
  }
}

TEST_CASE("decomposition rejects atypical input") {
  CHECK_THROWS_AS(verma_branch_decomposition(rat(0), 1, kCC, 4), std::invalid_argument);
}

TEST_CASE("atypical contrast: closures nest instead of summing") {
  // host V^HV(0,0): <v_1>_W (v_1 = L(-1)hw) sits inside <hw>_W
  auto spec = HighestWeightSpec::hv(kCC, rat(0), rat(0));
  auto host = verma_module(spec);
  auto sing = find_singular(spec, 1);
  REQUIRE(sing.size() == 1);
  auto inner = submodule_closure(host, sing, psi_action(host), 4);
  auto outer = submodule_closure(host, {ModuleVector::unit(unit_mono("hw"))},
                                 psi_action(host), 4);
  for (int n = 0; n <= 4; ++n) {
    RowSpace span(host.basis(n).size());
    for (const auto& v : outer.bases[n]) span.add(host.coords(v, n));
    for (const auto& v : inner.bases[n]) CHECK(span.contains(host.coords(v, n)));
  }
}

TEST_CASE("v_r_minus products") {
  SECTION("r = 1 is L(-1) hw") {
    CHECK(v_r_minus(1, kCC) == ModuleVector::unit(PBWMonomial{{}, {1}, "hw"}));
  }
  SECTION("r = 2 expands and matches the level-2 singular vector") {
    auto v = v_r_minus(2, kCC);
    auto spec = HighestWeightSpec::hv(kCC, rat(-1, 2), rat(0));
    auto sing = find_singular(spec, 2);
    REQUIRE(sing.size() == 1);
    CHECK(v == sing[0]);
  }
  SECTION("every v_r^-, r <= 4, passes the annihilation oracle") {
    for (int r = 1; r <= 4; ++r) {
      for (const auto& cc : kChargeSets) {
        auto spec = HighestWeightSpec::hv(cc, rat(1 - r, 2), rat(0));
        ModuleSpec mspec = spec.to_module_spec();
        ModuleVector v = v_r_minus(r, cc);
        CHECK(v.coeff(PBWMonomial{{}, std::vector<int>(r, 1), "hw"}) == 1);
        for (Mode m : {vir(1), vir(2), igen(1)}) CHECK(apply_mode(m, v, mspec).zero());
      }
    }
  }
}

TEST_CASE("every HV-singular vector in the grid is W(2,2)-singular") {
  for (int p : {1, 2}) {
    for (Branch br : {Branch::plus, Branch::minus}) {
      Rational h_i = Rational(br == Branch::plus ? rat(1 + p) : rat(1 - p)) * kCC.c_li;
      auto spec = HighestWeightSpec::hv(kCC, rat(5, 7), h_i);
      auto host = verma_module(spec);
      auto killers = w22_killers(host);
      for (int n = 1; n <= 4; ++n)
        for (const auto& v : find_singular(spec, n))
          for (const auto& k : killers) CHECK(k.op(v).zero());
    }
  }
}
