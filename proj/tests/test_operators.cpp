#include "siegel/operators.hpp"

#include <gtest/gtest.h>

using namespace siegel;

namespace {

DirichletChar chi13() {
  return DirichletChar::from_generators(13, 6, {{2, CycNum::make(6, {Rational(0), Rational(-1)})}}, "chi13");
}

}  // namespace

TEST(WlDecomposition, Examples) {
  auto d = wl_decomposition(13, 2);
  EXPECT_EQ(d.x, 1);
  EXPECT_EQ(d.y, 1);
  EXPECT_EQ(d.z, 6);
  EXPECT_EQ(d.w, 1);
  auto d3 = wl_decomposition(13, 3);
  EXPECT_EQ(d3.z, 4);
  EXPECT_EQ(d3.x * 13 * d3.w - d3.y * 3 * d3.z, 1);
  EXPECT_EQ(wl_decomposition(3, 2).z, 1);
  EXPECT_THROW(wl_decomposition(13, 26), OperatorError);
}

TEST(ALScalar, Level13) {
  auto chi = chi13();
  auto ctx2 = ALContext::make(13, 2, chi, {1, 0, 2});
  auto wlp = al_scalar_wlprime(ctx2);
  EXPECT_EQ(wlp.value, chi(7));
  EXPECT_EQ(wlp.character_argument, 7);

  auto wl = al_scalar_wl(ctx2);
  EXPECT_EQ(wl.value, CycNum(169) * chi(7));
  EXPECT_EQ(wl.character_argument, 7);

  auto ctx3 = ALContext::make(13, 2, chi, {2, 1, 2});
  auto wlp3 = al_scalar_wlprime(ctx3);
  EXPECT_EQ(wlp3.value, chi(9));
  EXPECT_EQ(wlp3.lhat, 1);

  EXPECT_EQ(fricke_factor(ctx2).value, CycNum(Rational(1, 169)));
  EXPECT_EQ(fricke_combined(ctx2).value, CycNum(Rational(1, 28561)) * chi(7).inv());
  EXPECT_EQ(al_scalar(ctx2, ScalarKind::FRICKE_COMBINED).provenance, ScalarKind::FRICKE_COMBINED);
}

TEST(ALScalar, WlAgreesOnSignedBezoutRepresentatives) {
  // chi(l' z^2) is unchanged by (x, y, z, w) -> (-x, -y, -z, -w) and by shifting z by multiples of l.
  auto chi = chi13();
  auto ctx = ALContext::make(13, 2, chi, {1, 0, 2});
  auto base = al_scalar_wl(ctx).value;
  for (std::int64_t y : {1, -1}) {
    for (std::int64_t z = -40; z <= 40; ++z) {
      std::int64_t num = 1 + y * 2 * z;
      if (num % 13 != 0) continue;
      std::int64_t xw = num / 13;
      for (std::int64_t x : {std::int64_t{1}, std::int64_t{-1}}) {
        WlDecomposition d{x, y, z, x * xw};
        ASSERT_EQ(d.x * 13 * d.w - d.y * 2 * d.z, 1);
        EXPECT_EQ(al_scalar_wl(ctx, d).value, base) << "y=" << y << " z=" << z;
      }
    }
  }
}

TEST(ALScalar, WlprimeInvariantUnderEquivalentSending) {
  auto chi = chi13();
  SendingMatrix s{1, 0, 2};
  auto base = al_scalar_wlprime(ALContext::make(13, 2, chi, s)).value;
  for (const Unimodular& u : {Unimodular{1, 1, 0, 1}, Unimodular{0, 1, 1, 0}, Unimodular{2, 1, 1, 1}}) {
    SendingMatrix t = act(s, u);
    EXPECT_EQ(al_scalar_wlprime(ALContext::make(13, 2, chi, t)).value, base) << t.label();
  }
}

TEST(ALScalar, TrivialCharacter) {
  auto ctx = ALContext::make(9, 2, DirichletChar::trivial(9), {1, 0, 2});
  EXPECT_EQ(al_scalar_wlprime(ctx).value, CycNum(1));
  EXPECT_EQ(al_scalar_wl(ctx).value, CycNum(81));
}

TEST(ALContext, Validation) {
  auto chi = chi13();
  EXPECT_THROW(ALContext::make(13, 2, chi, {13, 0, 1}), OperatorError);
  EXPECT_THROW(ALContext::make(26, 2, chi, {1, 0, 1}), OperatorError);
  EXPECT_THROW(ALContext::make(13, 0, chi, {1, 0, 2}), OperatorError);
  EXPECT_THROW(ALContext::make(13, 2, chi, {1, 1, 1}), OperatorError);
}
