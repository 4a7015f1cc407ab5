// Copyright 2026 The qgk Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <vector>

#include "qgk/image.hpp"
#include "qgk/quantum.hpp"

namespace qgk {

enum class LogBase { natural, two };

/// Shannon entropy in bits, with 0 log 0 = 0.
double shannon_entropy(std::span<const double> p);
double shannon_entropy(const ShotCounts& counts);

/// Half the L1 distance. Throws ParameterError on a support-size mismatch.
double total_variation_distance(std::span<const double> p,
                                std::span<const double> q);

/// -sum p log q. With smoothing > 0, q is replaced by (q + eps) / (1 + K eps)
/// over its K outcomes. Without smoothing, p > 0 and q = 0 gives infinity.
double cross_entropy(std::span<const double> p, std::span<const double> q,
                     double smoothing = 0.0, LogBase base = LogBase::natural);

/// eps = 1 / (2 * shots), the default smoothing for empirical distributions.
inline double empirical_smoothing(std::uint64_t shots) {
  return 1.0 / (2.0 * static_cast<double>(shots));
}

/// 2^n * mean over samples of p_ideal(sample) - 1.
double linear_xeb(const ShotCounts& samples, const BornDistribution& ideal);

struct DistributionReport {
  int n_qubits = 0;
  std::uint64_t shots_sim = 0;
  std::uint64_t shots_hw = 0;
  LogBase cross_entropy_base = LogBase::natural;

  double entropy_exact = 0;
  double entropy_sim = 0;
  double entropy_hw = 0;
  /// Cross-entropy of the simulator histogram against the smoothed
  /// hardware-proxy histogram.
  double cross_entropy = 0;
  double linear_xeb_sim = 0;
  double linear_xeb_hw = 0;
  /// TVD between the simulator and hardware-proxy histograms.
  double tvd = 0;
  double tvd_sim_exact = 0;
  double tvd_hw_exact = 0;
  std::string peak_exact;
  std::string peak_sim;
  std::string peak_hw;
  bool peaks_agree = false;
};

struct CompareOptions {
  LogBase cross_entropy_base = LogBase::natural;
  bool smoothing = true;
};

DistributionReport compare_distributions(const BornDistribution& exact,
                                         const ShotCounts& sim,
                                         const ShotCounts& hw,
                                         const CompareOptions& options = {});

struct ImageQualityReport {
  double ssim = 0;
  /// +infinity for identical images.
  double psnr = 0;
  double rmse = 0;
  double mae = 0;
};

/// 20 log10(255 / rmse), +infinity when rmse is 0.
double psnr_from_rmse(double rmse);

/// BT.601 luma of every pixel, row-major.
std::vector<double> luma_plane(const Image& image);

/// Mean SSIM over all valid 11x11 Gaussian windows (sigma 1.5) of the luma
/// planes, K1 = 0.01, K2 = 0.03, L = 255. Images smaller than the window use
/// the largest odd window that fits.
double ssim_luma(const Image& a, const Image& b);

/// RMSE and MAE over R, G and B jointly; alpha is ignored.
ImageQualityReport image_quality(const Image& a, const Image& b);

}  // namespace qgk
