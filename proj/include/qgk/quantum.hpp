// Copyright 2026 The qgk Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qgk/bytes.hpp"

namespace qgk {

inline constexpr int kDefaultQubits = 4;
inline constexpr int kDefaultDepth = 3;
inline constexpr int kMaxQubits = 12;
inline constexpr int kMaxDepth = 64;

using Amplitude = std::complex<double>;

enum class Axis : int { x = 0, y = 1, z = 2 };

/// Layered ansatz: every layer applies RX, RY, RZ to each qubit, then a ring
/// of CNOTs q -> (q + 1) mod n for ascending q. Qubit 0 is the most
/// significant bit of an outcome bitstring.
struct CircuitSpec {
  int n_qubits = kDefaultQubits;
  int depth = kDefaultDepth;
  /// 3 * n * d angles in [0, 2pi), indexed by (layer * n + qubit) * 3 + axis.
  std::vector<double> parameters;

  static std::size_t parameter_index(int n_qubits, int layer, int qubit,
                                     Axis axis) {
    return (static_cast<std::size_t>(layer) * n_qubits + qubit) * 3 +
           static_cast<std::size_t>(axis);
  }
  double angle(int layer, int qubit, Axis axis) const {
    return parameters[parameter_index(n_qubits, layer, qubit, axis)];
  }

  /// Throws ParameterError on bad sizes or out-of-range angles.
  void validate() const;
};

/// Exact Born-rule probabilities over the 2^n computational basis states.
struct BornDistribution {
  int n_qubits = 0;
  std::vector<double> probabilities;

  std::size_t size() const { return probabilities.size(); }
  void validate() const;
};

/// Classical stand-in for device noise used by the validation study.
struct NoiseParams {
  /// Probability that a shot is replaced by a uniformly random bitstring.
  double depolarizing = 0.03;
  /// Independent per-bit flip probability applied after depolarizing.
  double readout = 0.01;

  void validate() const;
};

struct ShotCounts {
  int n_qubits = 0;
  /// Dense histogram indexed by outcome value.
  std::vector<std::uint64_t> counts;
  std::uint64_t shots = 0;

  std::vector<double> frequencies() const;
  std::map<std::string, std::uint64_t> to_map() const;
  /// Most frequent outcome; ties resolved to the smallest index.
  std::uint32_t modal_outcome() const;
};

/// Outcome index as an n-character bitstring, qubit 0 first.
std::string bitstring(std::uint32_t outcome, int n_qubits);

/// Theta_i from successive big-endian words of keystream(quantum_seed).
CircuitSpec derive_parameters(const Digest& quantum_seed,
                              int n_qubits = kDefaultQubits,
                              int depth = kDefaultDepth);

std::vector<Amplitude> simulate_statevector(const CircuitSpec& spec);

BornDistribution evaluate_statevector(const CircuitSpec& spec);

/// argmax_z p(z), smallest index among ties.
std::uint32_t modal_outcome(const BornDistribution& dist);

/// Concatenation of BE64(round(p(z) * 1e9)) over z in ascending order.
Bytes encode_distribution(const BornDistribution& dist);

/// K_Q = SHA-256(ASCII(z*) || Enc(p)).
Digest derive_gate_key(const BornDistribution& dist);

/// Inverse-CDF shot sampling driven by keystream(sampling_seed), with the
/// optional depolarizing-then-readout noise channel.
ShotCounts sample_shots(const BornDistribution& dist, std::uint64_t shots,
                        const Digest& sampling_seed,
                        std::optional<NoiseParams> noise = std::nullopt);

}  // namespace qgk
