#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "qwf/bounds.hpp"
#include "qwf/error.hpp"
#include "qwf/qfim_analytic.hpp"

using namespace qwf;

namespace {

ParamMatrix sym2(double a, double b, double c, std::int64_t t = 1) {
  return ParamMatrix({"theta", "alpha"}, {a, b, b, c}, t, Regime::FiniteT);
}
ParamMatrix anti2(double d, std::int64_t t = 1) {
  return ParamMatrix({"theta", "alpha"}, {0.0, d, -d, 0.0}, t, Regime::FiniteT, Symmetry::Antisymmetric);
}

}  // namespace

TEST_CASE("symmetric bound of a diagonal matrix") {
  CHECK(symmetric_bound(sym2(1.65685, 0.0, 1.17157)) == doctest::Approx(1.45711).epsilon(1e-5));
  CHECK(symmetric_bound(sym2(2.0, 0.0, 4.0), WeightMatrix(3.0, 0.0, 1.0)) == doctest::Approx(1.75));
}

TEST_CASE("symmetric bound matches a dense inverse") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    Eigen::Matrix2d a;
    a << ud(rng), ud(rng), ud(rng), ud(rng);
    const Eigen::Matrix2d f = a * a.transpose() + 0.1 * Eigen::Matrix2d::Identity();
    Eigen::Matrix2d w;
    w << 2.0, 0.3, 0.3, 1.0;
    const double ref = (f.inverse() * w).trace();
    CHECK(symmetric_bound(sym2(f(0, 0), f(0, 1), f(1, 1)), WeightMatrix(2.0, 0.3, 1.0)) ==
          doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("singular Fisher names the parameter") {
  try {
    (void)symmetric_bound(sym2(1.0, 0.0, 0.0));
    FAIL("expected SingularFisher");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularFisher);
    CHECK(std::string(e.what()).find("alpha") != std::string::npos);
  }
  CHECK_THROWS_AS(WeightMatrix(1.0, 2.0, 1.0), Error);
}

TEST_CASE("incompatibility R") {
  CHECK(incompatibility_R(sym2(2.0, 0.0, 3.0), anti2(0.0)) == 0.0);
  // R = |d| / sqrt(det F)
  CHECK(incompatibility_R(sym2(2.0, 0.5, 3.0), anti2(1.2)) == doctest::Approx(1.2 / std::sqrt(5.75)));
  // pure state saturating the bound: |d| = sqrt(det F) gives R = 1
  CHECK(incompatibility_R(sym2(4.0, 0.0, 4.0), anti2(4.0 * (1.0 + 1e-12))) == 1.0);
  // against an eigensolver on a random pair
  Eigen::Matrix2d f;
  f << 3.0, 0.4, 0.4, 1.5;
  Eigen::Matrix2cd m = std::complex<double>(0.0, 1.0) * f.inverse() * (Eigen::Matrix2d() << 0.0, 0.7, -0.7, 0.0).finished();
  const double ref = m.eigenvalues().cwiseAbs().maxCoeff();
  CHECK(incompatibility_R(sym2(3.0, 0.4, 1.5), anti2(0.7)) == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("Holevo certificate and closed form") {
  const WalkerState init = make_initial(Entangled{0, 1});
  for (double th : {kPi / 4.0, 3.0 * kPi / 8.0}) {
    const AsymptoticQfim a = qfim_asymptotic(CoinParams(th, 0.0, 0.0), init, 10);
    const HolevoReport r = holevo_compatible(a.fisher, WeightMatrix::identity(), a.uhlmann, th);
    CHECK(r.certified);
    CHECK(r.incompatibility == 0.0);
    CHECK(r.holevo == doctest::Approx(*r.closed_form).epsilon(1e-9));
    CHECK(r.holevo * 100.0 == doctest::Approx(holevo_g(th)).epsilon(1e-9));
  }
  CHECK(holevo_g(kPi / 4.0) == doctest::Approx(1.45711).epsilon(1e-5));
  CHECK(holevo_g(3.0 * kPi / 8.0) == doctest::Approx(3.8048658462).epsilon(1e-10));
  try {
    (void)holevo_compatible(sym2(2.0, 0.0, 3.0), WeightMatrix::identity(), anti2(0.1));
    FAIL("expected IncompatibleModel");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IncompatibleModel);
  }
  const HolevoReport s = holevo_sandwich(sym2(2.0, 0.0, 3.0), WeightMatrix::identity(), anti2(0.1));
  CHECK_FALSE(s.certified);
  CHECK(s.upper == doctest::Approx((1.0 + s.incompatibility) * s.symmetric));
}
