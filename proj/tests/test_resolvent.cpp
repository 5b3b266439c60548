#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "genres/errors.hpp"
#include "genres/resolvent.hpp"
#include "support/random_pencils.hpp"

namespace genres {
namespace {

using testing::diag;
using testing::mat2;
using testing::Rng;

const CMat kI2 = CMat::Identity(2, 2);

Pencil constant_pencil() { return Pencil(mat2(1, 0, 0, 0), mat2(0, 1, 0, 0)); }
Pencil shifted_projector() { return Pencil(diag({1.0, 0.0}), kI2); }
Pencil diagonal3() { return Pencil(diag({1.0, 1.0, 0.0}), diag({1.0, 2.0, 0.0})); }

SubspaceBasis line(std::initializer_list<Complex> v) {
  CVec x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (const Complex& c : v) x(i++) = c;
  return SubspaceBasis::from_orthonormal(x / x.norm());
}

TEST(Pencil, ShapeAndEvaluation) {
  EXPECT_THROW(Pencil(CMat::Identity(2, 2), CMat::Identity(2, 3)), DimensionMismatch);
  const Pencil p = Pencil::shifted(diag({1.0, 2.0}));
  EXPECT_EQ(p.at(Complex(0.5, 0)), diag({0.5, 1.5}));
}

TEST(DiskGrid, DefaultLayout) {
  const DiskGrid g = DiskGrid::make(0.3);
  ASSERT_EQ(g.size(), 25u);
  EXPECT_EQ(g.points().front(), Complex(0.0, 0.0));
  std::set<double> moduli;
  for (const Complex& z : g.points()) {
    EXPECT_LE(std::abs(z), 0.3 * (1 + 1e-15));
    moduli.insert(std::round(std::abs(z) * 1e12) / 1e12);
  }
  EXPECT_EQ(moduli.size(), 4u);  // origin plus three rings
}

TEST(DiskGrid, FromPointsKeepsOriginAndRejectsOutside) {
  const DiskGrid g = DiskGrid::from_points(1.0, {Complex(0.5, 0)});
  EXPECT_EQ(g.size(), 2u);
  EXPECT_EQ(g.points().front(), Complex(0.0, 0.0));
  EXPECT_THROW(DiskGrid::from_points(0.1, {Complex(0.5, 0)}), InvalidArgument);
  EXPECT_THROW(DiskGrid::make(-1.0), InvalidArgument);
}

TEST(ExistenceCheck, Examples) {
  const Pencil c = constant_pencil();
  EXPECT_TRUE(existence_check(c, mp_inverse(c.t()), DiskGrid::make(10.0)).verdict);

  const Pencil sp = shifted_projector();
  const ExistenceCertificate cert =
      existence_check(sp, mp_inverse(sp.t()), DiskGrid::from_points(0.5, {0.01}));
  EXPECT_FALSE(cert.verdict);
  ASSERT_EQ(cert.per_point.size(), 2u);
  EXPECT_TRUE(cert.per_point[0].transversal);
  EXPECT_FALSE(cert.per_point[1].transversal);
  EXPECT_EQ(cert.criterion, ExistenceCriterion::Transversality);

  const Pencil zero_s(mat2(1, 2, 3, 4), CMat::Zero(2, 2));
  EXPECT_TRUE(existence_check(zero_s, mp_inverse(zero_s.t()), DiskGrid::make(5.0)).verdict);
}

TEST(BuildFamily, Radius) {
  const Pencil c = constant_pencil();
  const ResolventFamily fc = build_family(c, mp_inverse(c.t()));
  EXPECT_EQ(fc.st_plus_norm(), 0.0);
  EXPECT_EQ(fc.radius(), 1e12);

  const Pencil d = diagonal3();
  const ResolventFamily fd = build_family(d, mp_inverse(d.t()));
  EXPECT_LE(op_norm2(fd.st_plus() - diag({1.0, 2.0, 0.0})), 1e-15);
  EXPECT_NEAR(fd.radius(), 0.5, 1e-15);

  const CMat t = mat2(2, 1, 0, 3);
  const ResolventFamily fi = build_family(Pencil::shifted(t), mp_inverse(t));
  EXPECT_NEAR(fi.radius(), 1.0 / op_norm2(t.inverse()), 1e-14);

  EXPECT_THROW(build_family(d, mp_inverse(c.t())), DimensionMismatch);
}

TEST(Evaluate, Examples) {
  const Pencil d = diagonal3();
  const GenInverse g = mp_inverse(d.t());
  const ResolventFamily f = build_family(d, g);
  EXPECT_EQ(evaluate(f, 0.0), g.tplus());
  EXPECT_LE(op_norm2(evaluate(f, 0.1) - diag({1 / 0.9, 1.25, 0.0})), 1e-15);

  const Pencil c = constant_pencil();
  const ResolventFamily fc = build_family(c, mp_inverse(c.t()));
  for (Complex z : {Complex(3, 4), Complex(-100, 0), Complex(0, 1e6)})
    EXPECT_LE(op_norm2(evaluate(fc, z) - mat2(1, 0, 0, 0)), 1e-15);
}

TEST(Evaluate, OutOfRadiusCarriesScaledModulus) {
  const Pencil d = diagonal3();
  const ResolventFamily f = build_family(d, mp_inverse(d.t()));
  try {
    evaluate(f, 0.75);
    FAIL() << "expected OutOfRadius";
  } catch (const OutOfRadius& e) {
    EXPECT_NEAR(e.scaled_modulus(), 1.5, 1e-14);
  }
  EXPECT_THROW(evaluate_neumann(f, 0.5, 10), OutOfRadius);
  EXPECT_THROW(resolvent_identity_residual(f, 0.1, 0.6), OutOfRadius);
}

TEST(EvaluateNeumann, Examples) {
  const Pencil d = diagonal3();
  const GenInverse g = mp_inverse(d.t());
  const ResolventFamily f = build_family(d, g);
  EXPECT_EQ(evaluate_neumann(f, 0.3, 1), g.tplus());
  EXPECT_LE(op_norm2(evaluate_neumann(f, 0.1, 60) - evaluate(f, 0.1)), 1e-12);
  EXPECT_EQ(evaluate_neumann(f, 0.0, 7), g.tplus());
  EXPECT_THROW(evaluate_neumann(f, 0.1, 0), InvalidArgument);
}

TEST(ResolventIdentity, Examples) {
  const Pencil d = diagonal3();
  const ResolventFamily f = build_family(d, mp_inverse(d.t()));
  EXPECT_EQ(resolvent_identity_residual(f, 0.2, 0.2), 0.0);
  EXPECT_LE(resolvent_identity_residual(f, 0.1, -0.1), 1e-12);

  const Pencil c = constant_pencil();
  const ResolventFamily fc = build_family(c, mp_inverse(c.t()));
  EXPECT_EQ(resolvent_identity_residual(fc, Complex(2, 1), Complex(-5, 0)), 0.0);
}

TEST(CheckResolventAxioms, CounterexampleFailsInnerCondition) {
  const Pencil sp = shifted_projector();
  const ResolventFamily f = build_family(sp, mp_inverse(sp.t()));
  const AxiomReport r = check_resolvent_axioms(f, DiskGrid::from_points(0.5, {0.01}));
  EXPECT_FALSE(r.holds);
  ASSERT_EQ(r.points.size(), 2u);
  EXPECT_EQ(r.points[0].inner_residual, 0.0);
  // (T − λI)G(λ)(T − λI) = diag(1 − λ, 0) against diag(1 − λ, −λ).
  EXPECT_NEAR(r.points[1].inner_residual, 0.01 / 0.99, 1e-12);
  EXPECT_EQ(r.pairs_checked, 4u);
}

TEST(CheckResolventAxioms, OutOfRadiusPointsAreListed) {
  const Pencil d = diagonal3();
  const ResolventFamily f = build_family(d, mp_inverse(d.t()));
  const AxiomReport r = check_resolvent_axioms(f, DiskGrid::from_points(1.0, {0.1, 0.9}));
  EXPECT_FALSE(r.holds);
  ASSERT_EQ(r.out_of_radius.size(), 1u);
  EXPECT_EQ(r.out_of_radius[0], Complex(0.9, 0));
}

TEST(GridPairs, FullBelowLimitAndSeededAbove) {
  EXPECT_EQ(grid_pairs(25, 0).size(), 625u);
  EXPECT_EQ(grid_pairs(40, 0).size(), 1600u);
  const auto a = grid_pairs(41, 3);
  const auto b = grid_pairs(41, 3);
  EXPECT_EQ(a.size(), kPairSample);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, grid_pairs(41, 4));
  for (const auto& [i, j] : a) {
    EXPECT_LT(i, 41u);
    EXPECT_LT(j, 41u);
  }
}

TEST(ProjectorFamily, Examples) {
  const Pencil d = diagonal3();
  const GenInverse g = mp_inverse(d.t());
  const ResolventFamily f = build_family(d, g);
  const ProjectorPair at0 = projector_family(f, 0.0);
  EXPECT_LE(op_norm2(at0.p_lambda - g.p()), 1e-15);
  EXPECT_LE(op_norm2(at0.q_lambda - g.q()), 1e-15);
  const ProjectorPair at01 = projector_family(f, 0.1);
  EXPECT_LE(op_norm2(at01.p_lambda - diag({1.0, 1.0, 0.0})), 1e-15);
  EXPECT_LE(op_norm2(at01.q_lambda - diag({1.0, 1.0, 0.0})), 1e-15);
  EXPECT_LE(at01.p_range_gap, 1e-12);
  EXPECT_LE(at01.q_kernel_gap, 1e-12);

  const Pencil c = constant_pencil();
  const ResolventFamily fc = build_family(c, mp_inverse(c.t()));
  EXPECT_LE(op_norm2(projector_family(fc, Complex(0.7, -2)).p_lambda - mat2(1, 0, 0, 0)),
            1e-15);
}

TEST(FixedComplements, Examples) {
  const Pencil c = constant_pencil();
  EXPECT_TRUE(fixed_complements_check(c, {line({1.0, 0.0}), line({0.0, 1.0})},
                                      DiskGrid::make(3.0))
                  .verdict);

  const Pencil sp = shifted_projector();
  const FixedComplementsReport r = fixed_complements_check(
      sp, {line({1.0, 0.0}), line({0.0, 1.0})}, DiskGrid::from_points(0.5, {0.1}));
  EXPECT_FALSE(r.verdict);
  EXPECT_TRUE(r.per_point[0].domain_split && r.per_point[0].codomain_split);
  EXPECT_FALSE(r.per_point[1].domain_split);
  EXPECT_FALSE(fixed_complements_check(
                   sp, {SubspaceBasis::whole(2), SubspaceBasis::zero(2)},
                   DiskGrid::from_points(0.5, {0.1}))
                   .verdict);

  const Pencil zero_s(mat2(1, 2, 2, 4), CMat::Zero(2, 2));
  EXPECT_TRUE(fixed_complements_check(zero_s, complements_of(mp_inverse(zero_s.t())),
                                      DiskGrid::make(1.0))
                  .verdict);
  EXPECT_THROW(fixed_complements_check(c, {SubspaceBasis::zero(3), line({0.0, 1.0})},
                                       DiskGrid::make(1.0)),
               DimensionMismatch);
}

TEST(DirectSumCriteria, Examples) {
  const Pencil c = constant_pencil();
  const GenInverse g1 = mp_inverse(c.t());
  const GenInverse g2 = GenInverse::make(c.t(), mat2(1, 0, 1, 0), InverseKind::UserSupplied);
  const std::vector<GenInverse> both{g1, g2};
  const DirectSumCriteria pos = direct_sum_criteria(c, both, DiskGrid::make(0.5));
  EXPECT_TRUE(pos.domain_split && pos.codomain_split);
  EXPECT_TRUE(pos.all_domain_split.value() && pos.all_codomain_split.value());

  const Pencil sp = shifted_projector();
  const DirectSumCriteria neg =
      direct_sum_criteria(sp, mp_inverse(sp.t()), DiskGrid::make(0.5));
  EXPECT_FALSE(neg.domain_split || neg.codomain_split);
  EXPECT_FALSE(neg.all_domain_split.has_value());

  const Pencil zero_s(mat2(1, 2, 2, 4), CMat::Zero(2, 2));
  const DirectSumCriteria z =
      direct_sum_criteria(zero_s, mp_inverse(zero_s.t()), DiskGrid::make(1.0));
  EXPECT_TRUE(z.domain_split && z.codomain_split);
}

TEST(ContinuityCheck, PassingFamilyIsContinuous) {
  const Pencil d = diagonal3();
  const ResolventFamily f = build_family(d, mp_inverse(d.t()));
  const ContinuityReport r = continuity_check(
      d, [&f](Complex z) { return evaluate(f, z); }, f.default_grid());
  EXPECT_TRUE(r.continuous);
  EXPECT_TRUE(r.banach_condition);
  EXPECT_TRUE(r.w_invertible_everywhere);
  EXPECT_TRUE(r.existence_verdict);
  EXPECT_TRUE(r.conclusion_consistent);
}

TEST(ContinuityCheck, ConstantPencilGivesIdentityW) {
  const Pencil zero_s(mat2(1, 2, 2, 4), CMat::Zero(2, 2));
  const CMat tplus = mp_inverse(zero_s.t()).tplus();
  const ContinuityReport r =
      continuity_check(zero_s, [&](Complex) { return tplus; }, DiskGrid::make(1.0));
  for (const ContinuityPoint& pt : r.per_point) {
    EXPECT_EQ(pt.kernel_shift, 0.0);
    EXPECT_NEAR(pt.w_min_singular, 1.0, 1e-15);
  }
  EXPECT_EQ(r.max_deviation, 0.0);
}

TEST(ContinuityCheck, MpFamilyOfShiftedProjectorIsDiscontinuous) {
  const Pencil sp = shifted_projector();
  const ContinuityReport r = continuity_check(
      sp, [&sp](Complex z) { return mp_inverse(sp.at(z)).tplus(); },
      DiskGrid::make(0.5));
  EXPECT_FALSE(r.continuous);
  EXPECT_GT(r.max_deviation, 5.0);  // ≈ 1/|λ| at the inner ring
  EXPECT_FALSE(r.existence_verdict);
  EXPECT_TRUE(r.conclusion_consistent);
}

TEST(ContinuityCheck, InvalidMemberNamesLambda) {
  const Pencil sp = shifted_projector();
  try {
    continuity_check(sp, [](Complex) { return CMat(diag({3.0, 0.0})); },
                     DiskGrid::make(0.5));
    FAIL() << "expected InvalidFamily";
  } catch (const InvalidFamily& e) {
    EXPECT_EQ(e.lambda(), Complex(0.0, 0.0));
  }
}

// Properties over labelled random pencils whose resolvent status is known
// from the construction.

TEST(ResolventProperties, ExistenceMatchesConstruction) {
  Rng rng(101);
  for (int trial = 0; trial < 150; ++trial) {
    const auto [p, kind] = testing::random_pencil(rng, 2, 8);
    const GenInverse g = mp_inverse(p.t());
    const ResolventFamily f = build_family(p, g);
    EXPECT_EQ(existence_check(p, g, f.default_grid()).verdict,
              testing::resolvent_exists(kind))
        << "trial " << trial << " kind " << static_cast<int>(kind);
  }
}

TEST(ResolventProperties, AxiomsHoldWhenTransversal) {
  Rng rng(102);
  int passing = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const auto [p, kind] = testing::random_pencil(rng, 2, 10);
    const GenInverse g = trial % 2 == 0
                             ? mp_inverse(p.t())
                             : geninv_from_complements(p.t(), testing::random_complements(p.t(), rng));
    const ResolventFamily f = build_family(p, g);
    const DiskGrid grid = f.default_grid();
    if (!existence_check(p, g, grid).verdict) continue;
    ++passing;
    const AxiomReport r = check_resolvent_axioms(f, grid);
    EXPECT_TRUE(r.holds);
    EXPECT_LE(r.max_inner_residual, 1e-10);
    EXPECT_LE(r.max_outer_residual, 1e-10);
    EXPECT_LE(r.max_identity_residual, 1e-10);
  }
  EXPECT_GT(passing, 60);
}

TEST(ResolventProperties, ConverseHoldsForEveryInverse) {
  Rng rng(103);
  for (int trial = 0; trial < 100; ++trial) {
    const auto [p, kind] = testing::random_pencil(rng, 2, 8);
    const GenInverse mp = mp_inverse(p.t());
    const ResolventFamily f = build_family(p, mp);
    const GenInverse other =
        geninv_from_complements(p.t(), testing::random_complements(p.t(), rng));
    const DiskGrid grid = DiskGrid::make(
        0.5 * std::min(f.radius(), build_family(p, other).radius()));
    if (!check_resolvent_axioms(f, grid).holds) continue;
    EXPECT_TRUE(existence_check(p, mp, grid).verdict);
    EXPECT_TRUE(existence_check(p, other, grid).verdict);
  }
}

TEST(ResolventProperties, KernelRangeRigidityAndProjectorLaws) {
  Rng rng(104);
  for (int trial = 0; trial < 60; ++trial) {
    const Eigen::Index m = testing::uniform_int(rng, 2, 8);
    const Eigen::Index n = testing::uniform_int(rng, 2, 8);
    const Eigen::Index r = testing::uniform_int(rng, 1, static_cast<int>(std::min(m, n)));
    const Pencil p = testing::constant_support_pencil(m, n, r, rng);
    const GenInverse g =
        geninv_from_complements(p.t(), testing::random_complements(p.t(), rng));
    const ResolventFamily f = build_family(p, g);
    const DiskGrid grid = f.default_grid();
    const SubspaceBasis k0 = kernel_basis(g.tplus());
    const SubspaceBasis r0 = range_basis(g.tplus());
    std::vector<ProjectorPair> proj;
    for (const Complex& z : grid.points()) {
      const CMat gz = evaluate(f, z);
      EXPECT_LE(subspace_gap(kernel_basis(gz), k0), 1e-8);
      EXPECT_LE(subspace_gap(range_basis(gz), r0), 1e-8);
      proj.push_back(projector_family(f, z));
      EXPECT_LE(proj.back().p_kernel_gap, 1e-8);
      EXPECT_LE(proj.back().q_range_gap, 1e-8);
      EXPECT_LE(proj.back().p_range_gap, 1e-8);
      EXPECT_LE(proj.back().q_kernel_gap, 1e-8);
    }
    for (const ProjectorPair& a : proj) {
      for (const ProjectorPair& b : proj) {
        EXPECT_LE(op_norm2(a.p_lambda * b.p_lambda - a.p_lambda), 1e-10);
        EXPECT_LE(op_norm2(a.q_lambda * b.q_lambda - b.q_lambda), 1e-10);
      }
    }
  }
}

TEST(ResolventProperties, EvaluateAgreesWithNeumannInsideHalfRadius) {
  Rng rng(105);
  for (int trial = 0; trial < 80; ++trial) {
    const auto [p, kind] = testing::random_pencil(rng, 2, 8);
    const GenInverse g = mp_inverse(p.t());
    const ResolventFamily f = build_family(p, g);
    EXPECT_LE(op_norm2(evaluate(f, 0.0) - g.tplus()), 1e-12 * op_norm2(g.tplus()));
    const DiskGrid grid = f.default_grid();
    for (const Complex& z : grid.points()) {
      const double scale = std::max(1.0, op_norm2(g.tplus()));
      EXPECT_LE(op_norm2(evaluate(f, z) - evaluate_neumann(f, z, 60)), 1e-12 * scale);
    }
  }
}

}  // namespace
}  // namespace genres
