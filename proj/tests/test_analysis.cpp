// Copyright 2026 The qgk Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "qgk/analysis.hpp"
#include "qgk/errors.hpp"
#include "test_util.hpp"

namespace qgk {
namespace {

std::vector<double> random_distribution(std::mt19937_64& rng, std::size_t k,
                                        bool sparse = false) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> p(k);
  double total = 0;
  for (auto& v : p) {
    v = (sparse && u(rng) < 0.3) ? 0.0 : u(rng);
    total += v;
  }
  if (total == 0) {
    p[0] = 1;
    total = 1;
  }
  for (auto& v : p) v /= total;
  return p;
}

ShotCounts counts_from(int n, std::vector<std::uint64_t> c) {
  ShotCounts s;
  s.n_qubits = n;
  s.counts = std::move(c);
  for (auto v : s.counts) s.shots += v;
  return s;
}

TEST(Entropy, Examples) {
  std::vector<double> uniform(16, 1.0 / 16);
  EXPECT_NEAR(shannon_entropy(uniform), 4.0, 1e-12);
  std::vector<double> point(16, 0.0);
  point[3] = 1.0;
  EXPECT_EQ(shannon_entropy(point), 0.0);
  std::vector<std::uint64_t> c(16, 0);
  c[0b0000] = 1024;
  c[0b1111] = 1024;
  EXPECT_NEAR(shannon_entropy(counts_from(4, c)), 1.0, 1e-12);
  EXPECT_THROW(shannon_entropy(counts_from(4, std::vector<std::uint64_t>(16, 0))),
               ParameterError);
}

TEST(Entropy, BoundedByQubitCount) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 500; ++t) {
    int n = 1 + static_cast<int>(rng() % 6);
    std::vector<std::uint64_t> c(std::size_t{1} << n);
    for (auto& v : c) v = rng() % 5;
    c[0] += 1;
    double h = shannon_entropy(counts_from(n, c));
    ASSERT_GE(h, 0.0);
    ASSERT_LE(h, n + 1e-12);
  }
}

TEST(Tvd, Examples) {
  std::vector<double> p = {0.25, 0.25, 0.25, 0.25};
  std::vector<double> q = {1.0, 0.0, 0.0, 0.0};
  std::vector<double> r = {0.0, 1.0, 0.0, 0.0};
  EXPECT_EQ(total_variation_distance(p, p), 0.0);
  EXPECT_DOUBLE_EQ(total_variation_distance(p, q), 0.75);
  EXPECT_DOUBLE_EQ(total_variation_distance(q, r), 1.0);
  EXPECT_THROW(total_variation_distance(p, std::vector<double>{1.0}), ParameterError);
}

TEST(Tvd, SymmetricAndTriangular) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 1000; ++t) {
    auto p = random_distribution(rng, 16, true);
    auto q = random_distribution(rng, 16, true);
    auto r = random_distribution(rng, 16, true);
    double pq = total_variation_distance(p, q);
    ASSERT_DOUBLE_EQ(pq, total_variation_distance(q, p));
    ASSERT_GE(pq, 0.0);
    ASSERT_LE(pq, 1.0 + 1e-12);
    ASSERT_LE(pq, total_variation_distance(p, r) + total_variation_distance(r, q) + 1e-12);
  }
}

TEST(CrossEntropy, Examples) {
  std::vector<double> point = {0.0, 1.0, 0.0, 0.0};
  EXPECT_EQ(cross_entropy(point, point), 0.0);
  std::vector<double> uniform(16, 1.0 / 16);
  EXPECT_NEAR(cross_entropy(uniform, uniform, 0.0, LogBase::two), 4.0, 1e-12);
  EXPECT_NEAR(cross_entropy(uniform, uniform), 4.0 * std::log(2.0), 1e-12);
  std::vector<double> other = {1.0, 0.0, 0.0, 0.0};
  EXPECT_TRUE(std::isinf(cross_entropy(point, other)));
  EXPECT_TRUE(std::isfinite(cross_entropy(point, other, empirical_smoothing(2048))));
  EXPECT_THROW(cross_entropy(point, other, -1.0), ParameterError);
}

TEST(CrossEntropy, SmoothingFormula) {
  std::vector<double> p = {0.5, 0.5, 0.0, 0.0};
  std::vector<double> q = {1.0, 0.0, 0.0, 0.0};
  double eps = empirical_smoothing(100);
  EXPECT_DOUBLE_EQ(eps, 0.005);
  double q0 = (1.0 + eps) / (1 + 4 * eps);
  double q1 = eps / (1 + 4 * eps);
  EXPECT_NEAR(cross_entropy(p, q, eps), -0.5 * std::log(q0) - 0.5 * std::log(q1), 1e-12);
}

TEST(CrossEntropy, GibbsInequality) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 1000; ++t) {
    auto p = random_distribution(rng, 16, true);
    auto q = random_distribution(rng, 16);
    ASSERT_GE(cross_entropy(p, q, 0.0, LogBase::two), shannon_entropy(p) - 1e-12);
    ASSERT_NEAR(cross_entropy(p, p, 0.0, LogBase::two), shannon_entropy(p), 1e-12);
  }
}

TEST(LinearXeb, Examples) {
  BornDistribution uniform{4, std::vector<double>(16, 1.0 / 16)};
  std::vector<std::uint64_t> c(16, 0);
  c[2] = 7;
  c[9] = 5;
  EXPECT_NEAR(linear_xeb(counts_from(4, c), uniform), 0.0, 1e-12);

  BornDistribution point{4, std::vector<double>(16, 0.0)};
  point.probabilities[5] = 1.0;
  std::vector<std::uint64_t> d(16, 0);
  d[5] = 300;
  EXPECT_NEAR(linear_xeb(counts_from(4, d), point), 15.0, 1e-12);
  EXPECT_THROW(linear_xeb(counts_from(3, std::vector<std::uint64_t>(8, 1)), point),
               ParameterError);
}

TEST(LinearXeb, CollisionIdentityForIdealSamples) {
  std::mt19937_64 rng(4);
  constexpr std::uint64_t kShots = 1 << 14;
  for (int t = 0; t < 20; ++t) {
    auto dist = evaluate_statevector(derive_parameters(test::random_digest(rng)));
    auto samples = sample_shots(dist, kShots, test::random_digest(rng));
    double dim = static_cast<double>(dist.size());
    double mean = 0, second = 0;
    for (double p : dist.probabilities) {
      mean += p * p;
      second += p * p * p;
    }
    double expected = dim * mean - 1;
    double sigma = dim * std::sqrt((second - mean * mean) / kShots);
    EXPECT_NEAR(linear_xeb(samples, dist), expected, 3 * sigma + 1e-12) << "seed " << t;
  }
}

TEST(Compare, ReportFields) {
  std::mt19937_64 rng(5);
  auto dist = evaluate_statevector(derive_parameters(test::random_digest(rng)));
  auto sim = sample_shots(dist, 2048, test::random_digest(rng));
  auto hw = sample_shots(dist, 2048, test::random_digest(rng), NoiseParams{});
  auto r = compare_distributions(dist, sim, hw);
  EXPECT_EQ(r.n_qubits, 4);
  EXPECT_EQ(r.shots_sim, 2048u);
  EXPECT_DOUBLE_EQ(r.entropy_exact, shannon_entropy(dist.probabilities));
  EXPECT_DOUBLE_EQ(r.entropy_sim, shannon_entropy(sim));
  EXPECT_DOUBLE_EQ(r.tvd, total_variation_distance(sim.frequencies(), hw.frequencies()));
  EXPECT_DOUBLE_EQ(r.tvd_hw_exact, total_variation_distance(hw.frequencies(), dist.probabilities));
  EXPECT_DOUBLE_EQ(r.cross_entropy, cross_entropy(sim.frequencies(), hw.frequencies(),
                                                  empirical_smoothing(2048)));
  EXPECT_DOUBLE_EQ(r.linear_xeb_hw, linear_xeb(hw, dist));
  EXPECT_EQ(r.peak_exact, bitstring(modal_outcome(dist), 4));
  EXPECT_EQ(r.peak_sim, bitstring(sim.modal_outcome(), 4));
  EXPECT_EQ(r.peaks_agree, r.peak_sim == r.peak_hw);
  EXPECT_GE(r.tvd, 0.0);
  EXPECT_LE(r.tvd, 1.0);

  auto bits = compare_distributions(dist, sim, hw, CompareOptions{LogBase::two, true});
  EXPECT_NEAR(bits.cross_entropy, r.cross_entropy / std::log(2.0), 1e-12);
}

TEST(ImageQuality, IdenticalImages) {
  Image a = test::photo_like_image(40, 30, 1);
  auto q = image_quality(a, a);
  EXPECT_EQ(q.ssim, 1.0);
  EXPECT_TRUE(std::isinf(q.psnr));
  EXPECT_GT(q.psnr, 0);
  EXPECT_EQ(q.rmse, 0.0);
  EXPECT_EQ(q.mae, 0.0);
}

TEST(ImageQuality, UniformOffsetOfOne) {
  Image a(32, 32);
  for (std::size_t i = 0; i < a.pixels.size(); ++i) a.pixels[i] = static_cast<std::uint8_t>(i % 200);
  Image b = a;
  for (auto& v : b.pixels) ++v;
  auto q = image_quality(a, b);
  EXPECT_DOUBLE_EQ(q.mae, 1.0);
  EXPECT_DOUBLE_EQ(q.rmse, 1.0);
  EXPECT_NEAR(q.psnr, 20 * std::log10(255.0), 1e-12);
  EXPECT_NEAR(q.psnr, 48.13, 0.005);
}

TEST(ImageQuality, PsnrConsistentWithRmse) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 20; ++t) {
    Image a = test::random_image(24, 24, rng());
    Image b = test::random_image(24, 24, rng());
    auto q = image_quality(a, b);
    EXPECT_NEAR(q.psnr, psnr_from_rmse(q.rmse), 1e-9);
    EXPECT_GE(q.mae, 0.0);
    EXPECT_LE(q.mae, q.rmse + 1e-12);
  }
  EXPECT_TRUE(std::isinf(psnr_from_rmse(0.0)));
}

TEST(ImageQuality, AlphaIsIgnored) {
  Image a = test::random_image(16, 16, 7, 4);
  Image b = a;
  for (std::size_t p = 0; p < b.pixel_count(); ++p) b.pixels[p * 4 + 3] ^= 0xff;
  EXPECT_EQ(image_quality(a, b).rmse, 0.0);
}

TEST(Ssim, MatchesScikitImageOnPhoto) {
  // Goldens from skimage.metrics.structural_similarity on the BT.601 luma
  // planes (gaussian_weights, sigma 1.5, population covariance, L = 255).
  Image a = load_png(test::data_path("chelsea.png"));
  Image lsb = a;
  for (auto& v : lsb.pixels) v &= 0xfe;
  Image quant = a;
  for (auto& v : quant.pixels) v &= 0xf0;
  EXPECT_NEAR(ssim_luma(a, lsb), 0.9992445512451722, 1e-9);
  EXPECT_NEAR(ssim_luma(a, quant), 0.9509789631638936, 1e-9);
}

TEST(Ssim, BitInversionOfNoiseIsNearMinusOne) {
  Image a = test::random_image(64, 64, 8);
  Image inv = a;
  for (auto& v : inv.pixels) v = static_cast<std::uint8_t>(~v);
  double s = ssim_luma(a, inv);
  EXPECT_LT(s, -0.9);
  EXPECT_GE(s, -1.0);
}

TEST(Ssim, SmallImagesUseSmallerWindow) {
  Image a = test::random_image(5, 7, 9);
  EXPECT_DOUBLE_EQ(ssim_luma(a, a), 1.0);
  Image b = a;
  b.pixels[0] ^= 0x80;
  EXPECT_LT(ssim_luma(a, b), 1.0);
}

TEST(ImageQuality, DimensionMismatchIsParameterError) {
  EXPECT_THROW(image_quality(Image(4, 4), Image(4, 5)), ParameterError);
  EXPECT_THROW(ssim_luma(Image(4, 4), Image(5, 4)), ParameterError);
}

}  // namespace
}  // namespace qgk
