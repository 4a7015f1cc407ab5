// Copyright 2026 The qgk Authors
// SPDX-License-Identifier: Apache-2.0

#include "qgk/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qgk/errors.hpp"

namespace qgk {

double shannon_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log2(v);
  }
  return h;
}

double shannon_entropy(const ShotCounts& counts) {
  if (counts.shots == 0) throw ParameterError("no shots");
  auto f = counts.frequencies();
  return shannon_entropy(f);
}

double total_variation_distance(std::span<const double> p,
                                std::span<const double> q) {
  if (p.size() != q.size()) {
    throw ParameterError("distributions have different support sizes");
  }
  double sum = 0.0;
  for (std::size_t z = 0; z < p.size(); ++z) sum += std::abs(p[z] - q[z]);
  return 0.5 * sum;
}

double cross_entropy(std::span<const double> p, std::span<const double> q,
                     double smoothing, LogBase base) {
  if (p.size() != q.size()) {
    throw ParameterError("distributions have different support sizes");
  }
  if (smoothing < 0.0) throw ParameterError("smoothing must be >= 0");
  const double norm = 1.0 + smoothing * static_cast<double>(q.size());
  double sum = 0.0;
  for (std::size_t z = 0; z < p.size(); ++z) {
    if (p[z] <= 0.0) continue;
    double qz = (q[z] + smoothing) / norm;
    if (qz <= 0.0) return std::numeric_limits<double>::infinity();
    sum -= p[z] * std::log(qz);
  }
  return base == LogBase::two ? sum / std::numbers::ln2 : sum;
}

double linear_xeb(const ShotCounts& samples, const BornDistribution& ideal) {
  if (samples.n_qubits != ideal.n_qubits ||
      samples.counts.size() != ideal.probabilities.size()) {
    throw ParameterError("sample and ideal qubit counts differ");
  }
  if (samples.shots == 0) throw ParameterError("no shots");
  double mean = 0.0;
  for (std::size_t z = 0; z < samples.counts.size(); ++z) {
    mean += static_cast<double>(samples.counts[z]) * ideal.probabilities[z];
  }
  mean /= static_cast<double>(samples.shots);
  return static_cast<double>(ideal.probabilities.size()) * mean - 1.0;
}

DistributionReport compare_distributions(const BornDistribution& exact,
                                         const ShotCounts& sim,
                                         const ShotCounts& hw,
                                         const CompareOptions& options) {
  if (sim.n_qubits != exact.n_qubits || hw.n_qubits != exact.n_qubits) {
    throw ParameterError("runs use different qubit counts");
  }
  auto p_sim = sim.frequencies();
  auto p_hw = hw.frequencies();

  DistributionReport r;
  r.n_qubits = exact.n_qubits;
  r.shots_sim = sim.shots;
  r.shots_hw = hw.shots;
  r.cross_entropy_base = options.cross_entropy_base;
  r.entropy_exact = shannon_entropy(exact.probabilities);
  r.entropy_sim = shannon_entropy(p_sim);
  r.entropy_hw = shannon_entropy(p_hw);
  r.cross_entropy =
      cross_entropy(p_sim, p_hw,
                    options.smoothing ? empirical_smoothing(hw.shots) : 0.0,
                    options.cross_entropy_base);
  r.linear_xeb_sim = linear_xeb(sim, exact);
  r.linear_xeb_hw = linear_xeb(hw, exact);
  r.tvd = total_variation_distance(p_sim, p_hw);
  r.tvd_sim_exact = total_variation_distance(p_sim, exact.probabilities);
  r.tvd_hw_exact = total_variation_distance(p_hw, exact.probabilities);
  r.peak_exact = bitstring(modal_outcome(exact), exact.n_qubits);
  r.peak_sim = bitstring(sim.modal_outcome(), sim.n_qubits);
  r.peak_hw = bitstring(hw.modal_outcome(), hw.n_qubits);
  r.peaks_agree = r.peak_sim == r.peak_hw;
  return r;
}

double psnr_from_rmse(double rmse) {
  if (rmse == 0.0) return std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(255.0 / rmse);
}

std::vector<double> luma_plane(const Image& image) {
  image.validate();
  std::vector<double> y(image.pixel_count());
  for (std::size_t p = 0; p < y.size(); ++p) {
    const auto* px = &image.pixels[p * image.channels];
    y[p] = 0.299 * px[0] + 0.587 * px[1] + 0.114 * px[2];
  }
  return y;
}

namespace {

void check_same_shape(const Image& a, const Image& b) {
  a.validate();
  b.validate();
  if (a.width != b.width || a.height != b.height) {
    throw ParameterError("images have different dimensions");
  }
}

std::vector<double> gaussian_kernel(int size, double sigma) {
  std::vector<double> k(static_cast<std::size_t>(size));
  const int half = size / 2;
  double sum = 0.0;
  for (int i = 0; i < size; ++i) {
    double d = i - half;
    k[static_cast<std::size_t>(i)] = std::exp(-(d * d) / (2 * sigma * sigma));
    sum += k[static_cast<std::size_t>(i)];
  }
  for (auto& v : k) v /= sum;
  return k;
}

}  // namespace

double ssim_luma(const Image& a, const Image& b) {
  check_same_shape(a, b);
  constexpr double kC1 = (0.01 * 255) * (0.01 * 255);
  constexpr double kC2 = (0.03 * 255) * (0.03 * 255);

  const auto ya = luma_plane(a);
  const auto yb = luma_plane(b);
  const std::size_t w = a.width;
  const std::size_t h = a.height;

  int win = static_cast<int>(std::min<std::size_t>({11, w, h}));
  if (win % 2 == 0) --win;
  const auto kernel = gaussian_kernel(win, 1.5);
  const std::size_t ow = w - static_cast<std::size_t>(win) + 1;
  const std::size_t oh = h - static_cast<std::size_t>(win) + 1;

  // Horizontally filtered rows of x, y, x^2, y^2, xy, computed on demand.
  constexpr int kMoments = 5;
  auto filter_row = [&](std::size_t row, std::vector<double>& out) {
    out.assign(ow * kMoments, 0.0);
    const double* ra = &ya[row * w];
    const double* rb = &yb[row * w];
    for (std::size_t x = 0; x < ow; ++x) {
      double m[kMoments] = {};
      for (int k = 0; k < win; ++k) {
        double g = kernel[static_cast<std::size_t>(k)];
        double va = ra[x + static_cast<std::size_t>(k)];
        double vb = rb[x + static_cast<std::size_t>(k)];
        m[0] += g * va;
        m[1] += g * vb;
        m[2] += g * va * va;
        m[3] += g * vb * vb;
        m[4] += g * va * vb;
      }
      std::copy(m, m + kMoments, &out[x * kMoments]);
    }
  };

  std::vector<std::vector<double>> rows(h);
  double total = 0.0;
  for (std::size_t y = 0; y < oh; ++y) {
    for (std::size_t r = y; r < y + static_cast<std::size_t>(win); ++r) {
      if (rows[r].empty()) filter_row(r, rows[r]);
    }
    if (y > 0) std::vector<double>().swap(rows[y - 1]);
    for (std::size_t x = 0; x < ow; ++x) {
      double m[kMoments] = {};
      for (int k = 0; k < win; ++k) {
        const double* src = &rows[y + static_cast<std::size_t>(k)][x * kMoments];
        double g = kernel[static_cast<std::size_t>(k)];
        for (int j = 0; j < kMoments; ++j) m[j] += g * src[j];
      }
      double mu_a = m[0];
      double mu_b = m[1];
      double var_a = m[2] - mu_a * mu_a;
      double var_b = m[3] - mu_b * mu_b;
      double cov = m[4] - mu_a * mu_b;
      total += ((2 * mu_a * mu_b + kC1) * (2 * cov + kC2)) /
               ((mu_a * mu_a + mu_b * mu_b + kC1) * (var_a + var_b + kC2));
    }
  }
  return total / static_cast<double>(ow * oh);
}

ImageQualityReport image_quality(const Image& a, const Image& b) {
  check_same_shape(a, b);
  double sq = 0.0;
  double abs_sum = 0.0;
  const std::size_t n = a.rgb_size();
  for (std::size_t k = 0; k < n; ++k) {
    double d = static_cast<double>(a.rgb(k)) - static_cast<double>(b.rgb(k));
    sq += d * d;
    abs_sum += std::abs(d);
  }
  ImageQualityReport r;
  r.rmse = std::sqrt(sq / static_cast<double>(n));
  r.mae = abs_sum / static_cast<double>(n);
  r.psnr = psnr_from_rmse(r.rmse);
  r.ssim = ssim_luma(a, b);
  return r;
}

}  // namespace qgk
