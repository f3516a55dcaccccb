// Copyright 2026 The passage-lab Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "passage/mhs.hpp"

#include "test_util.hpp"

#include <Eigen/SVD>
#include <gtest/gtest.h>

#include <cmath>

using namespace passage;

namespace {

// Independent prediction of the affine dimension for laws that are
// polynomials in cos(distance): cos^2(t/2) = (1 + c)/2 depends on the first
// moment of the ensemble only; cos^4(t/2) = (1 + c)^2/4 also on the second
// moment tensor, whose trace is pinned to 1. Returns the affine rank of the
// moment features of the ensembles.
int moment_feature_rank(const std::vector<Ensemble> &ensembles, bool second_moments) {
    const int cols = second_moments ? 9 : 3;
    Eigen::MatrixXd features(static_cast<Eigen::Index>(ensembles.size()), cols);
    for (std::size_t i = 0; i < ensembles.size(); ++i) {
        Eigen::Vector3d m = Eigen::Vector3d::Zero();
        Eigen::Matrix3d mm = Eigen::Matrix3d::Zero();
        for (const auto &member : ensembles[i].members()) {
            const Eigen::Vector3d u = member.state.unit_vector();
            m += member.weight * u;
            mm += member.weight * u * u.transpose();
        }
        const auto row = static_cast<Eigen::Index>(i);
        features.block<1, 3>(row, 0) = m.transpose();
        if (second_moments) {
            features.block<1, 6>(row, 3) << mm(0, 0), mm(1, 1), mm(2, 2), mm(0, 1), mm(0, 2), mm(1, 2);
        }
    }
    const Eigen::MatrixXd centered = features.rowwise() - features.colwise().mean();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered);
    const auto s = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        rank += s(i) > 1e-9 * s(0) ? 1 : 0;
    }
    return rank;
}

std::vector<Ensemble> sampled_ensembles(Seed seed, int n) {
    // Mirrors the sampling order used by affine_span.
    Rng rng(derive_seed(seed, 0));
    std::vector<Ensemble> out;
    for (int i = 0; i < n; ++i) {
        out.push_back(random_ensemble(rng));
    }
    return out;
}

const Ensemble &poles() {
    static const Ensemble e({{0.5, SpherePoint::north()}, {0.5, SpherePoint::south()}});
    return e;
}

} // namespace

TEST(ResponseProbability, Examples) {
    const auto qm = ProbabilityLaw::qm();
    const auto cos4 = ProbabilityLaw::cos4();
    Rng rng(1);
    for (int i = 0; i < 50; ++i) {
        EXPECT_NEAR(response_probability(qm, poles(), random_sphere_point(rng)), 0.5, 1e-15);
    }
    EXPECT_NEAR(response_probability(cos4, poles(), SpherePoint::north()), 0.5, 1e-15);
    EXPECT_NEAR(response_probability(cos4, poles(), SpherePoint(kPi / 2, 0.7)), 0.25, 1e-15);
}

TEST(ResponseProbability, QmIsAffineInMean) {
    const auto qm = ProbabilityLaw::qm();
    Rng rng(2);
    for (int i = 0; i < 500; ++i) {
        const Ensemble e = random_ensemble(rng);
        const SpherePoint d = random_sphere_point(rng);
        EXPECT_NEAR(response_probability(qm, e, d), 0.5 * (1.0 + e.mean_vector().dot(d.unit_vector())), 1e-12);
    }
}

TEST(ResponseVector, CarriesSamples) {
    Rng rng(3);
    const auto dirs = random_directions(25, rng);
    const auto rv = response_vector(ProbabilityLaw::cos4(), poles(), dirs);
    EXPECT_EQ(rv.law, LawTag::COS4);
    ASSERT_EQ(rv.samples.size(), 25u);
    for (const auto &[d, p] : rv.samples) {
        EXPECT_GE(p, 0.0);
        EXPECT_LE(p, 1.0);
    }
}

TEST(DirectionGrid, Layout) {
    const auto g = direction_grid(5, 8);
    ASSERT_EQ(g.size(), 2u + 3u * 8u);
    EXPECT_EQ(g.front(), SpherePoint::north());
    EXPECT_EQ(g.back(), SpherePoint::south());
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            EXPECT_GT(great_circle_distance(g[i], g[j]), 1e-6);
        }
    }
    EXPECT_LAB_ERROR(direction_grid(1, 4), ErrorCode::InvalidArgument);
}

TEST(EqualMeanWitness, QmHasNone) {
    EXPECT_FALSE(equal_mean_witness(ProbabilityLaw::qm()).has_value());
    const auto fine = direction_grid(101, 100);
    EXPECT_GE(fine.size(), 9900u);
    EXPECT_FALSE(equal_mean_witness(ProbabilityLaw::qm(), fine).has_value());
}

TEST(EqualMeanWitness, Cos4GapAlongPole) {
    const auto w = equal_mean_witness(ProbabilityLaw::cos4());
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->direction, SpherePoint::north());
    EXPECT_NEAR(w->gap, 0.25, 1e-12);
    EXPECT_NEAR(w->response_first, 0.5, 1e-12);
    EXPECT_NEAR(w->response_second, 0.25, 1e-12);
    const auto [a, b] = equal_mean_pair();
    EXPECT_LE(a.mean_vector().norm(), 1e-15);
    EXPECT_LE(b.mean_vector().norm(), 1e-15);
}

TEST(EqualMeanWitness, AlternateFormsOfQmHaveNone) {
    // Any law affine in cos(t) that meets f(0) = 1 and f(pi) = 0 is
    // (1 + cos t)/2, i.e. QM again; responses then depend only on the mean.
    const auto half_angle = ProbabilityLaw::custom([](double t) { return 0.5 * (1.0 + std::cos(t)); }, "qm-affine");
    EXPECT_FALSE(equal_mean_witness(half_angle).has_value());
    const auto via_sine = ProbabilityLaw::custom(
        [](double t) {
            const double s = std::sin(t / 2.0);
            return 1.0 - s * s;
        },
        "qm-sine");
    EXPECT_FALSE(equal_mean_witness(via_sine).has_value());
}

TEST(AffineDimension, DegenerateRows) {
    Eigen::MatrixXd same(12, 30);
    for (Eigen::Index i = 0; i < same.rows(); ++i) {
        for (Eigen::Index j = 0; j < same.cols(); ++j) {
            same(i, j) = 0.1 + 0.01 * static_cast<double>(j) / 3.0;
        }
    }
    EXPECT_EQ(affine_dimension(same, 1e-6), 0);

    // Identical ensembles through the full response pipeline.
    Rng rng(4);
    const auto dirs = random_directions(30, rng);
    const Ensemble e = random_ensemble(rng);
    const std::vector<Ensemble> copies(12, e);
    Eigen::MatrixXd responses(12, 30);
    for (int i = 0; i < 12; ++i) {
        for (int k = 0; k < 30; ++k) {
            responses(i, k) = response_probability(ProbabilityLaw::cos4(), copies[static_cast<std::size_t>(i)],
                                                   dirs[static_cast<std::size_t>(k)]);
        }
    }
    EXPECT_EQ(affine_dimension(responses, 1e-6), 0);
}

TEST(AffineDimension, KnownRanks) {
    Rng rng(5);
    Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(4, 40);
    for (Eigen::Index i = 0; i < basis.rows(); ++i) {
        for (Eigen::Index j = 0; j < basis.cols(); ++j) {
            basis(i, j) = rng.uniform() - 0.5;
        }
    }
    Eigen::MatrixXd rows(30, 40);
    for (Eigen::Index r = 0; r < rows.rows(); ++r) {
        Eigen::RowVectorXd row = basis.row(0);
        for (Eigen::Index i = 1; i < 4; ++i) {
            row += (rng.uniform() - 0.5) * basis.row(i);
        }
        rows.row(r) = row;
    }
    EXPECT_EQ(affine_dimension(rows, 1e-6), 3);
}

TEST(AffineSpanDimension, QmIsThree) {
    EXPECT_EQ(affine_span_dimension(ProbabilityLaw::qm(), 50, 100, 0, 1e-6), 3);
    for (Seed seed = 1; seed <= 20; ++seed) {
        EXPECT_EQ(affine_span_dimension(ProbabilityLaw::qm(), 50, 100, seed, 1e-6), 3) << "seed " << seed;
    }
}

TEST(AffineSpanDimension, Cos4MatchesMomentOracle) {
    for (Seed seed : {0ULL, 7ULL, 99ULL}) {
        const int oracle = moment_feature_rank(sampled_ensembles(seed, 50), true);
        EXPECT_EQ(oracle, 8);
        EXPECT_EQ(affine_span_dimension(ProbabilityLaw::cos4(), 50, 100, seed, 1e-6), oracle);
        EXPECT_EQ(moment_feature_rank(sampled_ensembles(seed, 50), false), 3);
    }
}

TEST(AffineSpanDimension, InsufficientSamples) {
    EXPECT_LAB_ERROR(affine_span_dimension(ProbabilityLaw::qm(), 9, 100, 0, 1e-6), ErrorCode::InsufficientSamples);
    EXPECT_LAB_ERROR(affine_span_dimension(ProbabilityLaw::qm(), 50, 19, 0, 1e-6), ErrorCode::InsufficientSamples);
}

TEST(AffineSpan, DeterministicLayout) {
    const auto a = affine_span(ProbabilityLaw::cos4(), 12, 24, 42, 1e-6);
    const auto b = affine_span(ProbabilityLaw::cos4(), 12, 24, 42, 1e-6);
    EXPECT_EQ(a.responses, b.responses);
    EXPECT_EQ(a.responses.rows(), 12);
    EXPECT_EQ(a.responses.cols(), 24);
}

TEST(PureManifoldDimension, IsTwoForBothLaws) {
    EXPECT_EQ(pure_manifold_dimension(ProbabilityLaw::qm(), 0), 2);
    EXPECT_EQ(pure_manifold_dimension(ProbabilityLaw::cos4(), 0), 2);
    EXPECT_EQ(pure_manifold_dimension(ProbabilityLaw::qm(), 5), 2);
}

TEST(PureManifoldDimension, RankDropsAtPole) {
    Rng rng(6);
    const auto dirs = random_directions(100, rng);
    for (const auto &law : {ProbabilityLaw::qm(), ProbabilityLaw::cos4()}) {
        EXPECT_EQ(response_jacobian_rank(law, 0.0, 0.3, dirs), 1);
        EXPECT_EQ(response_jacobian_rank(law, kPi, 0.3, dirs), 1);
        EXPECT_EQ(response_jacobian_rank(law, 1.0, 0.3, dirs), 2);
    }
}

TEST(MhsCheck, Verdicts) {
    const auto qm = mhs_check(ProbabilityLaw::qm(), 0);
    EXPECT_EQ(qm.affine_dimension, 3);
    EXPECT_TRUE(qm.holds_at_quantum_dimension);
    EXPECT_FALSE(qm.witness.has_value());

    const auto cos4 = mhs_check(ProbabilityLaw::cos4(), 0);
    EXPECT_EQ(cos4.affine_dimension, 8);
    EXPECT_FALSE(cos4.holds_at_quantum_dimension);
    ASSERT_TRUE(cos4.witness.has_value());
    EXPECT_NEAR(cos4.witness->gap, 0.25, 1e-12);
    EXPECT_GT(cos4.witness->gap, 0.0);
}

TEST(MhsCheck, ConstantLawNeverReachesCheck) {
    EXPECT_LAB_ERROR(ProbabilityLaw::custom([](double) { return 0.3; }), ErrorCode::InvalidLaw);
}

TEST(TomographyFit, Examples) {
    const std::vector<TomographySample> half_up{{SpherePoint::north(), 0.75, 100000},
                                                {SpherePoint(kPi / 2, 0), 0.5, 100000},
                                                {SpherePoint(kPi / 2, kPi / 2), 0.5, 100000}};
    const auto fit = tomography_fit(half_up);
    EXPECT_NEAR((fit.bloch.vector() - Eigen::Vector3d(0, 0, 0.5)).norm(), 0.0, 1e-12);

    const std::vector<TomographySample> mixed{{SpherePoint::north(), 0.5, 1000},
                                              {SpherePoint(kPi / 2, 0), 0.5, 1000},
                                              {SpherePoint(kPi / 2, kPi / 2), 0.5, 1000}};
    EXPECT_LE(tomography_fit(mixed).bloch.norm(), 1e-15);

    const std::vector<TomographySample> two{{SpherePoint::north(), 0.5, 1000}, {SpherePoint(kPi / 2, 0), 0.5, 1000}};
    EXPECT_LAB_ERROR(tomography_fit(two), ErrorCode::UnderdeterminedFit);
}

TEST(TomographyFit, CoplanarDirectionsUnderdetermined) {
    const std::vector<TomographySample> flat{{SpherePoint(kPi / 2, 0), 0.5, 1000},
                                             {SpherePoint(kPi / 2, 1.0), 0.5, 1000},
                                             {SpherePoint(kPi / 2, 2.0), 0.5, 1000},
                                             {SpherePoint(kPi / 2, 3.0), 0.5, 1000}};
    EXPECT_LAB_ERROR(tomography_fit(flat), ErrorCode::UnderdeterminedFit);
}

TEST(TomographyFit, InconsistentFrequencies) {
    const std::vector<TomographySample> contradiction{
        {SpherePoint::north(), 1.0, 100000},          {SpherePoint::south(), 1.0, 100000},
        {SpherePoint(kPi / 2, 0), 0.5, 100000},       {SpherePoint(kPi / 2, kPi), 0.5, 100000},
        {SpherePoint(kPi / 2, kPi / 2), 0.5, 100000}, {SpherePoint(kPi / 2, -kPi / 2), 0.5, 100000}};
    EXPECT_LAB_ERROR(tomography_fit(contradiction), ErrorCode::InconsistentFrequencies);
}

TEST(TomographyFit, ExactRecovery) {
    Rng rng(8);
    const auto dirs = random_directions(7, rng);
    for (int i = 0; i < 100; ++i) {
        const Eigen::Vector3d v = std::cbrt(rng.uniform()) * random_sphere_point(rng).unit_vector();
        const auto rho = DensityMatrix::from_bloch(BlochVector(v));
        std::vector<TomographySample> samples;
        for (const auto &d : dirs) {
            samples.push_back({d, mixed_probability(rho, d), 100000});
        }
        EXPECT_LE((tomography_fit(samples).bloch.vector() - v).norm(), 1e-9);
    }
}

TEST(TomographyFit, ClipsToUnitBall) {
    const std::vector<TomographySample> over{{SpherePoint::north(), 1.0, 10},
                                             {SpherePoint(kPi / 2, 0), 0.6, 10},
                                             {SpherePoint(kPi / 2, kPi / 2), 0.5, 10}};
    const auto fit = tomography_fit(over);
    EXPECT_TRUE(fit.clipped);
    EXPECT_NEAR(fit.bloch.norm(), 1.0, 1e-12);
}

TEST(TomographyFit, MonteCarloWithinStandardErrors) {
    const auto axes = direction_grid(5, 8);
    Rng rng(9);
    int ok = 0;
    for (Seed seed = 0; seed < 100; ++seed) {
        const Eigen::Vector3d v = std::cbrt(rng.uniform()) * random_sphere_point(rng).unit_vector();
        const auto samples = simulate_frequencies(BlochVector(v), axes, 100'000, seed);
        try {
            const auto fit = tomography_fit(samples);
            ok += (fit.bloch.vector() - v).norm() < 5.0 * fit.combined_standard_error() ? 1 : 0;
        } catch (const LabError &e) {
            // A residual rejection counts as a miss.
            ASSERT_EQ(e.code(), ErrorCode::InconsistentFrequencies);
        }
    }
    EXPECT_GE(ok, 99);
}
