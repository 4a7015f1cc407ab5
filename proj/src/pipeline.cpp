// Copyright 2026 The qgk Authors
// SPDX-License-Identifier: Apache-2.0

#include "qgk/pipeline.hpp"

#include <numeric>

#include "qgk/errors.hpp"
#include "qgk/hash.hpp"
#include "qgk/keystream.hpp"
#include "qgk/stego.hpp"

namespace qgk {

std::string_view ablation_name(Ablation a) {
  switch (a) {
    case Ablation::none:
      return "none";
    case Ablation::no_context_binding:
      return "no-context";
    case Ablation::classical_traversal:
      return "classical-traversal";
    case Ablation::single_region:
      return "single-region";
    case Ablation::unauthenticated:
      return "unauthenticated";
  }
  return "unknown";
}

Ablation parse_ablation(std::string_view name) {
  for (auto a : {Ablation::none, Ablation::no_context_binding,
                 Ablation::classical_traversal, Ablation::single_region,
                 Ablation::unauthenticated}) {
    if (ablation_name(a) == name) return a;
  }
  throw ParameterError("unknown ablation mode: " + std::string(name));
}

std::string_view stage_name(DecodeStage stage) {
  switch (stage) {
    case DecodeStage::unspecified:
      return "unspecified";
    case DecodeStage::header:
      return "header";
    case DecodeStage::payload_bounds:
      return "payload-bounds";
    case DecodeStage::authentication:
      return "authentication";
    case DecodeStage::restore:
      return "restore";
  }
  return "unspecified";
}

namespace {

bool binds_context(const PipelineConfig& config) {
  return config.ablation != Ablation::no_context_binding;
}

Digest master_seed(const Credentials& c, const Digest& signature,
                   const PipelineConfig& config) {
  if (binds_context(config)) {
    return derive_master_seed(RecoveryState{c.password, c.shared_secret,
                                            c.context_string, signature});
  }
  if (c.password.empty() || c.shared_secret.empty()) {
    throw ParameterError("password and shared secret must not be empty");
  }
  Bytes buf;
  append_length_prefixed(buf, as_bytes(c.password));
  append_length_prefixed(buf, as_bytes(c.shared_secret));
  append(buf, signature);
  return sha256(buf);
}

Digest encryption_key(const Credentials& c, const KeySchedule& keys,
                      const PipelineConfig& config) {
  std::string_view context =
      binds_context(config) ? std::string_view(c.context_string) : "";
  Digest kp = strengthen_password(c.password, c.shared_secret, context,
                                  config.pbkdf2_iterations);
  return derive_encryption_key(kp, keys.seeds.encrypt);
}

Digest traversal_seed(const KeySchedule& keys, const PipelineConfig& config) {
  if (config.ablation == Ablation::classical_traversal) {
    return keys.seeds.payload;
  }
  return payload_traversal_seed(keys.seeds.payload, keys.gate_key);
}

// Single-region ablation: one traversal over every channel, keyed by the
// payload seed, gate key and nonce.
Permutation unified_permutation(const Image& image, const KeySchedule& keys,
                                const Nonce& nonce) {
  check_layout_floor(image.width, image.height);
  Permutation all(image.rgb_size());
  std::iota(all.begin(), all.end(), 0u);
  return keyed_permutation(
      std::move(all), sha256({keys.seeds.payload, keys.gate_key, nonce}));
}

Bytes container_bytes(const ProtectedPayload& p) {
  Bytes out = p.ciphertext;
  append(out, p.tag);
  return out;
}

}  // namespace

KeySchedule derive_key_schedule(const Credentials& credentials,
                                const Digest& image_signature,
                                const PipelineConfig& config) {
  KeySchedule keys;
  keys.seeds = expand_seeds(master_seed(credentials, image_signature, config));
  keys.circuit = derive_parameters(keys.seeds.quantum, config.qubits,
                                   config.depth);
  keys.distribution = evaluate_statevector(keys.circuit);
  keys.gate_key = derive_gate_key(keys.distribution);
  return keys;
}

EncodeResult encode(const Image& cover, const SecretInput& secret,
                    const Credentials& credentials,
                    const PipelineConfig& config) {
  cover.validate();
  check_layout_floor(cover.width, cover.height);

  EncodeResult result;
  result.signature = compute_image_signature(cover);
  result.capacity_bytes = capacity(cover.width, cover.height);

  NormalizedPayload message = normalize(secret);
  if (message.message.empty()) throw ParameterError("secret is empty");
  result.container_bytes = message.message.size() + kTagSize;
  if (result.container_bytes > result.capacity_bytes) {
    throw CapacityError("payload container of " +
                        std::to_string(result.container_bytes) +
                        " bytes exceeds capacity of " +
                        std::to_string(result.capacity_bytes) + " bytes");
  }

  KeySchedule keys = derive_key_schedule(credentials, result.signature, config);
  Digest key = encryption_key(credentials, keys, config);

  ProtectedPayload sealed;
  if (config.ablation == Ablation::unauthenticated) {
    sealed.nonce = random_nonce();
    sealed.ciphertext = aes256_ctr(key, sealed.nonce, message.message);
    sealed.plaintext_len = message.message.size();
    sealed.payload_type = message.type;
  } else {
    sealed = encrypt_payload(key, message.message, message.type);
  }

  HeaderContainer header{sealed.payload_type, sealed.nonce,
                         sealed.ciphertext.size()};
  Bits header_bits = bytes_to_bits(header.serialize());
  Bits payload_bits = bytes_to_bits(container_bytes(sealed));

  result.stego = cover;
  if (config.ablation == Ablation::single_region) {
    Permutation perm = unified_permutation(cover, keys, sealed.nonce);
    Bits all = header_bits;
    all.insert(all.end(), payload_bits.begin(), payload_bits.end());
    embed_bits_in_place(result.stego, all, perm);
    return result;
  }

  embed_bits_in_place(
      result.stego, header_bits,
      header_permutation(cover.width, cover.height, keys.seeds.header));
  embed_bits_in_place(
      result.stego, payload_bits,
      payload_permutation(cover.width, cover.height,
                          traversal_seed(keys, config)));
  return result;
}

DecodeResult decode(const Image& stego, const Credentials& credentials,
                    const Digest& reference_signature,
                    const PipelineConfig& config,
                    const DecodeOptions& options) {
  stego.validate();
  auto fail = [&](DecodeStage stage) {
    DecodeResult r;
    if (options.debug_stages) r.failed_stage = stage;
    return r;
  };

  if (capacity(stego.width, stego.height) < kMinContainerBytes) {
    return fail(DecodeStage::header);
  }

  KeySchedule keys = derive_key_schedule(credentials, reference_signature, config);

  // Header first: it carries the nonce and length needed for the payload.
  Permutation payload_perm;
  std::size_t payload_offset = 0;
  std::optional<HeaderContainer> header;
  if (config.ablation == Ablation::single_region) {
    // The traversal needs the nonce, and the nonce is inside the traversal.
    payload_perm = unified_permutation(stego, keys, Nonce{});
    header = HeaderContainer::parse(
        bits_to_bytes(extract_bits(stego, kHeaderBits, payload_perm)));
    payload_offset = kHeaderBits;
  } else {
    Permutation header_perm =
        header_permutation(stego.width, stego.height, keys.seeds.header);
    header = HeaderContainer::parse(
        bits_to_bytes(extract_bits(stego, kHeaderBits, header_perm)));
  }
  if (!header) return fail(DecodeStage::header);

  const std::uint64_t cap = capacity(stego.width, stego.height);
  if (header->ciphertext_len == 0 || header->ciphertext_len > cap ||
      header->ciphertext_len + kTagSize > cap) {
    return fail(DecodeStage::payload_bounds);
  }

  if (payload_perm.empty()) {
    payload_perm = payload_permutation(stego.width, stego.height,
                                       traversal_seed(keys, config));
  }
  const std::size_t container_len = header->ciphertext_len + kTagSize;
  Bytes container = bits_to_bytes(extract_bits(
      stego, container_len * 8,
      std::span(payload_perm).subspan(payload_offset)));

  ProtectedPayload sealed;
  sealed.nonce = header->nonce;
  sealed.payload_type = header->payload_type;
  sealed.plaintext_len = header->ciphertext_len;
  sealed.ciphertext.assign(container.begin(),
                           container.begin() + header->ciphertext_len);
  std::copy(container.end() - kTagSize, container.end(), sealed.tag.begin());

  Digest key = encryption_key(credentials, keys, config);
  std::optional<Bytes> plain;
  if (config.ablation == Ablation::unauthenticated) {
    plain = aes256_ctr(key, sealed.nonce, sealed.ciphertext);
  } else {
    plain = decrypt_payload(key, sealed);
  }
  if (!plain) return fail(DecodeStage::authentication);

  DecodeResult result;
  try {
    result.secret = restore(std::move(*plain), sealed.payload_type);
  } catch (const FormatError&) {
    return fail(DecodeStage::restore);
  }
  return result;
}

DecodeResult decode(const Image& stego, const Credentials& credentials,
                    const Image& reference_cover, const PipelineConfig& config,
                    const DecodeOptions& options) {
  return decode(stego, credentials, compute_image_signature(reference_cover),
                config, options);
}

}  // namespace qgk
