// Copyright 2026 The qgk Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "qgk/bytes.hpp"
#include "qgk/context.hpp"
#include "qgk/crypto.hpp"
#include "qgk/image.hpp"
#include "qgk/payload.hpp"
#include "qgk/quantum.hpp"

namespace qgk {

/// Developer-only variants that remove one safeguard each. Never selected by
/// default; the CLI exposes them only through --ablation.
enum class Ablation {
  none,
  /// Context string left out of the master seed and the PBKDF2 salt.
  no_context_binding,
  /// Payload traversal keyed by sigma_p alone, without the gate key.
  classical_traversal,
  /// Header and payload share one region whose traversal depends on the
  /// nonce, which the decoder cannot know before reading the header.
  single_region,
  /// AES-256-CTR without a tag check.
  unauthenticated,
};

std::string_view ablation_name(Ablation a);
/// Throws ParameterError for unknown names.
Ablation parse_ablation(std::string_view name);

struct PipelineConfig {
  std::uint32_t pbkdf2_iterations = kDefaultPbkdf2Iterations;
  int qubits = kDefaultQubits;
  int depth = kDefaultDepth;
  Ablation ablation = Ablation::none;
};

/// The three user-supplied factors. The fourth, the image signature, comes
/// from the cover (encode) or the reference (decode).
struct Credentials {
  std::string password;
  std::string shared_secret;
  std::string context_string;
};

/// Everything derived from the recovery state before touching pixels.
struct KeySchedule {
  SeedBundle seeds;
  CircuitSpec circuit;
  BornDistribution distribution;
  Digest gate_key{};
};

KeySchedule derive_key_schedule(const Credentials& credentials,
                                const Digest& image_signature,
                                const PipelineConfig& config = {});

struct EncodeResult {
  Image stego;
  Digest signature{};
  /// Ciphertext plus tag, in bytes.
  std::uint64_t container_bytes = 0;
  std::uint64_t capacity_bytes = 0;
};

/// Hides `secret` in a copy of `cover`. Throws CapacityError, FormatError,
/// ParameterError.
EncodeResult encode(const Image& cover, const SecretInput& secret,
                    const Credentials& credentials,
                    const PipelineConfig& config = {});

inline constexpr std::string_view kExtractionFailed = "extraction failed";

enum class DecodeStage {
  /// Reported for every failure unless stage reporting is enabled.
  unspecified,
  header,
  payload_bounds,
  authentication,
  restore,
};

std::string_view stage_name(DecodeStage stage);

struct DecodeOptions {
  /// Development aid: record which stage rejected the input.
  bool debug_stages = false;
};

struct DecodeResult {
  std::optional<RecoveredSecret> secret;
  DecodeStage failed_stage = DecodeStage::unspecified;

  bool ok() const { return secret.has_value(); }
  friend bool operator==(const DecodeResult&, const DecodeResult&) = default;
};

/// Recovers the secret or returns a failure that carries no information
/// about the cause.
DecodeResult decode(const Image& stego, const Credentials& credentials,
                    const Digest& reference_signature,
                    const PipelineConfig& config = {},
                    const DecodeOptions& options = {});

/// Same, with the signature computed from the original cover.
DecodeResult decode(const Image& stego, const Credentials& credentials,
                    const Image& reference_cover,
                    const PipelineConfig& config = {},
                    const DecodeOptions& options = {});

}  // namespace qgk
