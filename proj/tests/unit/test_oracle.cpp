#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <random>

#include "arp/oracle.hpp"
#include "arp/problems.hpp"
#include "test_support.hpp"

using namespace arp;
using arp::testing::PolyObjective1d;

namespace {

Vector v1(double a) { return Vector::Constant(1, a); }

Oracle poly_oracle(std::vector<double> c, OracleMode m = OracleMode::Explicit) {
  return Oracle(std::make_shared<PolyObjective1d>(std::move(c)), m);
}

}  // namespace

TEST(Oracle, ModeStrings) {
  for (auto m : {OracleMode::Explicit, OracleMode::TensorFree, OracleMode::HessianTensorFree})
    EXPECT_EQ(oracle_mode_from_string(to_string(m)), m);
  EXPECT_THROW(oracle_mode_from_string("dense"), std::invalid_argument);
}

TEST(Oracle, TaylorValueExamples) {
  auto sq = poly_oracle({0.0, 0.0, 1.0});
  sq.taylor(v1(0.0), sq.value(v1(0.0)), 2);
  EXPECT_DOUBLE_EQ(sq.taylor_value(v1(0.0), v1(1.0), 2), 1.0);

  // f = 3x^4 - 10x^3 + 12x^2 - 5x; f'(0) = -5, f''(0) = 24, f'''(0) = -60
  auto q = poly_oracle({0.0, -5.0, 12.0, -10.0, 3.0});
  const auto& t = q.taylor(v1(0.0), q.value(v1(0.0)), 3);
  EXPECT_DOUBLE_EQ(t.g()[0], -5.0);
  EXPECT_DOUBLE_EQ(t.hessian()(0, 0), 24.0);
  EXPECT_DOUBLE_EQ(t.tensor_vec_vec(v1(1.0), v1(1.0))[0], -60.0);
  EXPECT_DOUBLE_EQ(q.taylor_value(v1(0.0), v1(1.0), 3), -3.0);
  EXPECT_DOUBLE_EQ(q.taylor_value(v1(0.0), v1(0.0), 3), 0.0);
  EXPECT_DOUBLE_EQ(t.decrease(v1(1.0), 3), 3.0);
}

TEST(Oracle, TaylorValueNeedsCachedPointAndOrder) {
  auto q = poly_oracle({1.0, 2.0});
  EXPECT_ANY_THROW(q.taylor_value(v1(0.0), v1(1.0), 1));
  const auto& t = q.taylor(v1(0.0), q.value(v1(0.0)), 2);
  EXPECT_THROW(t.value(v1(1.0), 3), CapabilityError);
}

TEST(Oracle, CapabilityLimitedByObjective) {
  struct FirstOrder : arp::testing::Linear {
    using Linear::Linear;
    int max_order() const override { return 1; }
  };
  Oracle o(std::make_shared<FirstOrder>(Vector::Ones(2)), OracleMode::Explicit);
  EXPECT_THROW(o.taylor(Vector::Zero(2), 0.0, 2), CapabilityError);
}

TEST(Oracle, CountersAndCaching) {
  auto q = poly_oracle({0.0, 1.0, 1.0});
  q.value(v1(1.0));
  q.value(v1(1.0));
  EXPECT_EQ(q.counters().n_f, 2);
  q.gradient(v1(1.0));
  q.gradient(v1(1.0));
  q.taylor(v1(1.0), 2.0, 3);
  q.taylor(v1(1.0), 2.0, 3);
  EXPECT_EQ(q.counters().n_deriv, 1);
  q.taylor(v1(2.0), 6.0, 3);
  EXPECT_EQ(q.counters().n_deriv, 2);
  q.gradient(v1(2.0));
  EXPECT_EQ(q.counters().n_deriv, 2);
  EXPECT_EQ(q.counters().n_f, 2);
}

TEST(Oracle, ModesExposeTheirShapes) {
  const auto prob = make_problem("beale");
  const Vector x = prob.x0;
  for (auto m : {OracleMode::Explicit, OracleMode::TensorFree, OracleMode::HessianTensorFree}) {
    Oracle o = prob.make_oracle(m);
    const auto& t = o.taylor(x, o.value(x), 3);
    EXPECT_EQ(t.has_hessian_matrix(), m != OracleMode::HessianTensorFree) << to_string(m);
    EXPECT_EQ(t.has_tensor_vec(), m != OracleMode::HessianTensorFree) << to_string(m);
  }
}

TEST(OracleProperty, ModesAgree) {
  std::mt19937_64 rng(3);
  for (const char* name : {"beale", "powell_singular", "rosenbrock", "nls", "regcubic"}) {
    ProblemParams pp;
    pp.d = 6;
    pp.variant = 3;
    const auto prob = make_problem(name, pp, 4);
    const Eigen::Index d = static_cast<Eigen::Index>(prob.dim);
    const Vector x = prob.x0 + arp::testing::gaussian(rng, d, 0.3);
    std::vector<Oracle> os;
    for (auto m : prob.modes) os.push_back(prob.make_oracle(m));
    std::vector<const TaylorData*> ts;
    for (auto& o : os) ts.push_back(&o.taylor(x, o.value(x), 3));
    for (int k = 0; k < 5; ++k) {
      const Vector v = arp::testing::gaussian(rng, d), w = arp::testing::gaussian(rng, d);
      const Vector hv = ts[0]->hess_vec(v), tvw = ts[0]->tensor_vec_vec(v, w);
      for (std::size_t i = 1; i < ts.size(); ++i) {
        EXPECT_LE((ts[i]->hess_vec(v) - hv).norm(), 1e-10 * std::max(1.0, hv.norm())) << name;
        EXPECT_LE((ts[i]->tensor_vec_vec(v, w) - tvw).norm(), 1e-10 * std::max(1.0, tvw.norm())) << name;
      }
    }
  }
}

TEST(OracleProperty, TensorActionsAreSymmetric) {
  std::mt19937_64 rng(8);
  for (const char* name : {"beale", "powell_singular", "rosenbrock", "nls", "regcubic", "hairpin"}) {
    ProblemParams pp;
    pp.d = 5;
    const auto prob = make_problem(name, pp, 2);
    const Eigen::Index d = static_cast<Eigen::Index>(prob.dim);
    Oracle o = prob.make_oracle(OracleMode::HessianTensorFree);
    const Vector x = prob.x0 + arp::testing::gaussian(rng, d, 0.1);
    const auto& t = o.taylor(x, o.value(x), 3);
    for (int k = 0; k < 5; ++k) {
      const Vector v = arp::testing::gaussian(rng, d), w = arp::testing::gaussian(rng, d);
      const Vector a = t.tensor_vec_vec(v, w), b = t.tensor_vec_vec(w, v);
      EXPECT_LE((a - b).norm(), 1e-10 * std::max(1.0, a.norm())) << name;
    }
  }
}

TEST(FdCheck, RosenbrockGradient) {
  std::mt19937_64 rng(1);
  const auto prob = make_problem("rosenbrock", {.d = 10});
  Oracle o = prob.make_oracle();
  EXPECT_LE(fd_check(o, arp::testing::gaussian(rng, 10), 1, 1e-6), 1e-5);
}

TEST(FdCheck, NlsThirdOrder) {
  std::mt19937_64 rng(2);
  const auto prob = make_problem("nls", {.d = 10}, 3);
  Oracle o = prob.make_oracle();
  EXPECT_LE(fd_check(o, arp::testing::gaussian(rng, 10, 0.5), 3, 1e-4), 1e-3);
}

TEST(FdCheck, LinearHigherOrdersVanish) {
  Oracle o(std::make_shared<arp::testing::Linear>(Vector::LinSpaced(4, 1.0, 4.0), 2.0), OracleMode::Explicit);
  const Vector x = Vector::Constant(4, 0.3);
  EXPECT_LE(fd_check(o, x, 2, 1e-5), 1e-12);
  EXPECT_LE(fd_check(o, x, 3, 1e-4), 1e-12);
}

TEST(FdCheck, DetectsWrongGradient) {
  struct Wrong : arp::testing::HalfSquaredNorm {
    using HalfSquaredNorm::HalfSquaredNorm;
    Vector gradient(const Vector& x) const override { return 2.0 * x; }
  };
  Oracle o(std::make_shared<Wrong>(3), OracleMode::Explicit);
  EXPECT_GT(fd_check(o, Vector::Ones(3), 1), 0.1);
}

TEST(FdCheck, DoesNotTouchCounters) {
  auto q = poly_oracle({0.0, 1.0, 2.0, 3.0});
  fd_check(q, v1(0.5), 3);
  EXPECT_EQ(q.counters().n_f, 0);
  EXPECT_EQ(q.counters().n_deriv, 0);
}
