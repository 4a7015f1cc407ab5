// Copyright 2026 The qgk Authors
// SPDX-License-Identifier: Apache-2.0

#include "qgk/quantum.hpp"

#include <cmath>
#include <numbers>

#include "qgk/errors.hpp"
#include "qgk/hash.hpp"
#include "qgk/keystream.hpp"

namespace qgk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kQuantizationScale = 1e9;

void check_dimensions(int n_qubits, int depth) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw ParameterError("qubit count must be in [1, " +
                         std::to_string(kMaxQubits) + "]");
  }
  if (depth < 1 || depth > kMaxDepth) {
    throw ParameterError("depth must be in [1, " + std::to_string(kMaxDepth) +
                         "]");
  }
}

using Matrix2 = std::array<Amplitude, 4>;  // row-major

Matrix2 rotation(Axis axis, double theta) {
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  const Amplitude i{0.0, 1.0};
  switch (axis) {
    case Axis::x:
      return {c, -i * s, -i * s, c};
    case Axis::y:
      return {c, -s, s, c};
    case Axis::z:
      return {std::polar(1.0, -theta / 2), 0.0, 0.0, std::polar(1.0, theta / 2)};
  }
  return {};
}

void apply_single(std::vector<Amplitude>& state, int n_qubits, int qubit,
                  const Matrix2& m) {
  const std::size_t mask = std::size_t{1} << (n_qubits - 1 - qubit);
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (i & mask) continue;
    Amplitude a0 = state[i];
    Amplitude a1 = state[i | mask];
    state[i] = m[0] * a0 + m[1] * a1;
    state[i | mask] = m[2] * a0 + m[3] * a1;
  }
}

void apply_cnot(std::vector<Amplitude>& state, int n_qubits, int control,
                int target) {
  const std::size_t cmask = std::size_t{1} << (n_qubits - 1 - control);
  const std::size_t tmask = std::size_t{1} << (n_qubits - 1 - target);
  for (std::size_t i = 0; i < state.size(); ++i) {
    if ((i & cmask) && !(i & tmask)) std::swap(state[i], state[i | tmask]);
  }
}

}  // namespace

void CircuitSpec::validate() const {
  check_dimensions(n_qubits, depth);
  if (parameters.size() != static_cast<std::size_t>(3 * n_qubits * depth)) {
    throw ParameterError("parameter vector must have 3 * n * d entries");
  }
  for (double theta : parameters) {
    if (!(theta >= 0.0 && theta < kTwoPi)) {
      throw ParameterError("rotation angle outside [0, 2pi)");
    }
  }
}

void BornDistribution::validate() const {
  if (n_qubits < 1 || n_qubits > kMaxQubits ||
      probabilities.size() != (std::size_t{1} << n_qubits)) {
    throw ParameterError("distribution size does not match qubit count");
  }
  double total = 0.0;
  for (double p : probabilities) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ParameterError("probability outside [0, 1]");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw ParameterError("probabilities do not sum to 1");
  }
}

void NoiseParams::validate() const {
  if (!(depolarizing >= 0.0 && depolarizing <= 1.0) ||
      !(readout >= 0.0 && readout <= 1.0)) {
    throw ParameterError("noise probabilities must be in [0, 1]");
  }
}

std::vector<double> ShotCounts::frequencies() const {
  std::vector<double> f(counts.size());
  for (std::size_t z = 0; z < counts.size(); ++z) {
    f[z] = static_cast<double>(counts[z]) / static_cast<double>(shots);
  }
  return f;
}

std::map<std::string, std::uint64_t> ShotCounts::to_map() const {
  std::map<std::string, std::uint64_t> out;
  for (std::size_t z = 0; z < counts.size(); ++z) {
    if (counts[z] != 0) {
      out.emplace(bitstring(static_cast<std::uint32_t>(z), n_qubits), counts[z]);
    }
  }
  return out;
}

std::uint32_t ShotCounts::modal_outcome() const {
  std::size_t best = 0;
  for (std::size_t z = 1; z < counts.size(); ++z) {
    if (counts[z] > counts[best]) best = z;
  }
  return static_cast<std::uint32_t>(best);
}

std::string bitstring(std::uint32_t outcome, int n_qubits) {
  std::string s(static_cast<std::size_t>(n_qubits), '0');
  for (int q = 0; q < n_qubits; ++q) {
    if (outcome & (1u << (n_qubits - 1 - q))) s[static_cast<std::size_t>(q)] = '1';
  }
  return s;
}

CircuitSpec derive_parameters(const Digest& quantum_seed, int n_qubits,
                              int depth) {
  check_dimensions(n_qubits, depth);
  CircuitSpec spec;
  spec.n_qubits = n_qubits;
  spec.depth = depth;
  spec.parameters.resize(static_cast<std::size_t>(3 * n_qubits * depth));
  Keystream ks(quantum_seed);
  for (auto& theta : spec.parameters) {
    // 53-bit fraction of u / 2^64 so the angle stays strictly below 2pi.
    double frac = std::ldexp(static_cast<double>(ks.next_word() >> 11), -53);
    theta = kTwoPi * frac;
    if (theta >= kTwoPi) theta = std::nextafter(kTwoPi, 0.0);
  }
  return spec;
}

std::vector<Amplitude> simulate_statevector(const CircuitSpec& spec) {
  spec.validate();
  const int n = spec.n_qubits;
  std::vector<Amplitude> state(std::size_t{1} << n, Amplitude{0.0, 0.0});
  state[0] = 1.0;
  for (int layer = 0; layer < spec.depth; ++layer) {
    for (int q = 0; q < n; ++q) {
      for (Axis axis : {Axis::x, Axis::y, Axis::z}) {
        apply_single(state, n, q, rotation(axis, spec.angle(layer, q, axis)));
      }
    }
    // A one-qubit ring would be CNOT(0 -> 0), which is not a gate.
    if (n > 1) {
      for (int q = 0; q < n; ++q) apply_cnot(state, n, q, (q + 1) % n);
    }
  }
  return state;
}

BornDistribution evaluate_statevector(const CircuitSpec& spec) {
  auto state = simulate_statevector(spec);
  BornDistribution dist;
  dist.n_qubits = spec.n_qubits;
  dist.probabilities.reserve(state.size());
  for (const auto& a : state) dist.probabilities.push_back(std::norm(a));
  return dist;
}

std::uint32_t modal_outcome(const BornDistribution& dist) {
  std::size_t best = 0;
  for (std::size_t z = 1; z < dist.probabilities.size(); ++z) {
    if (dist.probabilities[z] > dist.probabilities[best]) best = z;
  }
  return static_cast<std::uint32_t>(best);
}

Bytes encode_distribution(const BornDistribution& dist) {
  Bytes out;
  out.reserve(dist.probabilities.size() * 8);
  for (double p : dist.probabilities) {
    append_be64(out, static_cast<std::uint64_t>(std::llround(p * kQuantizationScale)));
  }
  return out;
}

Digest derive_gate_key(const BornDistribution& dist) {
  dist.validate();
  std::string peak = bitstring(modal_outcome(dist), dist.n_qubits);
  return sha256({as_bytes(peak), encode_distribution(dist)});
}

ShotCounts sample_shots(const BornDistribution& dist, std::uint64_t shots,
                        const Digest& sampling_seed,
                        std::optional<NoiseParams> noise) {
  dist.validate();
  if (shots == 0) throw ParameterError("shots must be >= 1");
  if (noise) noise->validate();

  const std::size_t outcomes = dist.probabilities.size();
  std::vector<double> cdf(outcomes);
  double running = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t z = 0; z < outcomes; ++z) {
    running += dist.probabilities[z];
    cdf[z] = running;
    if (dist.probabilities[z] > 0.0) last_nonzero = z;
  }

  ShotCounts out;
  out.n_qubits = dist.n_qubits;
  out.counts.assign(outcomes, 0);
  out.shots = shots;

  Keystream ks(sampling_seed);
  for (std::uint64_t s = 0; s < shots; ++s) {
    double u = ks.unit() * running;
    std::size_t z = last_nonzero;
    for (std::size_t k = 0; k < outcomes; ++k) {
      if (u < cdf[k] && dist.probabilities[k] > 0.0) {
        z = k;
        break;
      }
    }
    if (noise) {
      if (ks.unit() < noise->depolarizing) {
        z = static_cast<std::size_t>(ks.uniform(outcomes));
      }
      for (int q = 0; q < dist.n_qubits; ++q) {
        if (ks.unit() < noise->readout) z ^= std::size_t{1} << q;
      }
    }
    ++out.counts[z];
  }
  return out;
}

}  // namespace qgk
