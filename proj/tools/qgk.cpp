// Copyright 2026 The qgk Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end: encode, decode, sign, capacity, validate, metrics.
//
// Exit codes: 0 success, 1 usage, 2 extraction failed, 3 capacity exceeded,
// 4 I/O or format error.

#include <termios.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qgk/analysis.hpp"
#include "qgk/context.hpp"
#include "qgk/errors.hpp"
#include "qgk/hash.hpp"
#include "qgk/pipeline.hpp"
#include "qgk/quantum.hpp"
#include "qgk/stego.hpp"

namespace {

using json = nlohmann::json;

enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kExtractionFailed = 2,
  kCapacity = 3,
  kIoFormat = 4,
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reads a line from the controlling terminal with echo off.
std::optional<std::string> prompt_hidden(const std::string& label) {
  FILE* tty = std::fopen("/dev/tty", "r+");
  if (!tty) return std::nullopt;
  int fd = fileno(tty);
  termios old{};
  bool restore = tcgetattr(fd, &old) == 0;
  if (restore) {
    termios quiet = old;
    quiet.c_lflag &= ~static_cast<tcflag_t>(ECHO);
    tcsetattr(fd, TCSAFLUSH, &quiet);
  }
  std::fprintf(tty, "%s: ", label.c_str());
  std::fflush(tty);
  std::string line;
  for (int c = std::fgetc(tty); c != EOF && c != '\n'; c = std::fgetc(tty)) {
    line.push_back(static_cast<char>(c));
  }
  if (restore) tcsetattr(fd, TCSAFLUSH, &old);
  std::fprintf(tty, "\n");
  std::fclose(tty);
  return line;
}

// Flag first, then environment, then an interactive prompt.
std::string resolve_factor(const std::string& flag_value, const char* env,
                           const std::string& label) {
  if (!flag_value.empty()) return flag_value;
  if (const char* v = std::getenv(env); v && *v) return v;
  if (isatty(STDIN_FILENO)) {
    if (auto typed = prompt_hidden(label); typed && !typed->empty()) return *typed;
  }
  throw UsageError(label + " is required (flag, " + env + ", or prompt)");
}

struct FactorFlags {
  std::string password;
  std::string secret;
  std::string context;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--password", password, "Password (or QGK_PASSWORD)");
    cmd->add_option("--secret", secret, "Shared secret (or QGK_SECRET)");
    cmd->add_option("--context", context, "Context string (or QGK_CONTEXT)");
  }

  qgk::Credentials resolve() const {
    return {resolve_factor(password, "QGK_PASSWORD", "password"),
            resolve_factor(secret, "QGK_SECRET", "shared secret"),
            resolve_factor(context, "QGK_CONTEXT", "context")};
  }
};

struct ConfigFlags {
  std::uint32_t iterations = qgk::kDefaultPbkdf2Iterations;
  int qubits = qgk::kDefaultQubits;
  int depth = qgk::kDefaultDepth;
  std::string ablation = "none";

  void add_to(CLI::App* cmd) {
    cmd->add_option("--iterations", iterations, "PBKDF2 iterations")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--qubits", qubits, "Circuit width")
        ->capture_default_str()
        ->check(CLI::Range(1, qgk::kMaxQubits));
    cmd->add_option("--depth", depth, "Circuit depth")
        ->capture_default_str()
        ->check(CLI::Range(1, qgk::kMaxDepth));
    // Developer-only; deliberately left out of --help.
    cmd->add_option("--ablation", ablation)->group("");
  }

  qgk::PipelineConfig resolve() const {
    qgk::PipelineConfig c;
    c.pbkdf2_iterations = iterations;
    c.qubits = qubits;
    c.depth = depth;
    c.ablation = qgk::parse_ablation(ablation);
    return c;
  }
};

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

json json_number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

// ---------------------------------------------------------------- encode

struct EncodeCmd {
  std::string cover, out, message, message_file, secret_image;
  std::uint32_t resize = qgk::kDefaultResizeTarget;
  bool json_out = false;
  FactorFlags factors;
  ConfigFlags config;

  void add_to(CLI::App& app) {
    auto* cmd = app.add_subcommand("encode", "Hide a secret in a cover image");
    cmd->add_option("--cover", cover, "Cover PNG")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", out, "Stego PNG to write")->required();
    auto* msg = cmd->add_option("--message", message, "Text secret");
    auto* file = cmd->add_option("--message-file", message_file, "File whose bytes are the secret")
                     ->check(CLI::ExistingFile);
    auto* img = cmd->add_option("--secret-image", secret_image, "Image secret (PNG or JPEG)")
                    ->check(CLI::ExistingFile);
    msg->excludes(file)->excludes(img);
    file->excludes(img);
    cmd->add_option("--resize", resize, "Side length for image secrets")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--json", json_out, "Print a JSON object");
    factors.add_to(cmd);
    config.add_to(cmd);
    cmd->callback([cmd] {
      if (cmd->count("--message") + cmd->count("--message-file") +
              cmd->count("--secret-image") != 1) {
        throw CLI::ValidationError(
            "exactly one of --message, --message-file, --secret-image is required");
      }
    });
    command = cmd;
  }

  int run() const {
    qgk::Image cover_img = qgk::load_png(cover);
    qgk::SecretInput input;
    if (command->count("--message")) {
      input = qgk::SecretInput::from_text(message);
    } else if (command->count("--message-file")) {
      input = qgk::SecretInput::from_bytes(qgk::read_file(message_file));
    } else {
      input = qgk::SecretInput::from_image(qgk::load_any_image(secret_image), resize);
    }
    auto result = qgk::encode(cover_img, input, factors.resolve(), config.resolve());
    qgk::save_png(out, result.stego);
    if (json_out) {
      std::cout << json{{"signature", qgk::to_hex(result.signature)},
                        {"container_bytes", result.container_bytes},
                        {"capacity_bytes", result.capacity_bytes},
                        {"out", out}}
                       .dump()
                << "\n";
    } else {
      std::cout << qgk::to_hex(result.signature) << "\n";
    }
    return kOk;
  }

  CLI::App* command = nullptr;
};

// ---------------------------------------------------------------- decode

struct DecodeCmd {
  std::string stego, reference, signature, out;
  bool debug_stages = false;
  FactorFlags factors;
  ConfigFlags config;

  void add_to(CLI::App& app) {
    auto* cmd = app.add_subcommand("decode", "Recover a hidden secret");
    cmd->add_option("--stego", stego, "Stego PNG")->required()->check(CLI::ExistingFile);
    auto* ref = cmd->add_option("--reference", reference, "Original cover image")
                    ->check(CLI::ExistingFile);
    auto* sig = cmd->add_option("--signature", signature, "Cover signature, 64 hex chars");
    ref->excludes(sig);
    cmd->add_option("--out", out, "Write the secret here instead of stdout");
    cmd->add_flag("--debug-stages", debug_stages, "Report which stage rejected the input");
    factors.add_to(cmd);
    config.add_to(cmd);
    cmd->callback([cmd] {
      if (cmd->count("--reference") + cmd->count("--signature") != 1) {
        throw CLI::ValidationError("exactly one of --reference, --signature is required");
      }
    });
  }

  int run() const {
    qgk::Image stego_img = qgk::load_png(stego);
    qgk::Digest sig = reference.empty()
                          ? qgk::digest_from_hex(signature)
                          : qgk::compute_image_signature(qgk::load_any_image(reference));
    auto result = qgk::decode(stego_img, factors.resolve(), sig, config.resolve(),
                              qgk::DecodeOptions{debug_stages});
    if (!result.ok()) {
      std::cerr << qgk::kExtractionFailed << "\n";
      if (debug_stages) {
        std::cerr << "stage: " << qgk::stage_name(result.failed_stage) << "\n";
      }
      return kExtractionFailed;
    }
    const auto& bytes = result.secret->bytes;
    if (!out.empty()) {
      qgk::write_file(out, bytes);
    } else {
      std::cout.write(reinterpret_cast<const char*>(bytes.data()),
                      static_cast<std::streamsize>(bytes.size()));
      std::cout.flush();
    }
    return kOk;
  }
};

// ---------------------------------------------------------------- sign

struct SignCmd {
  std::string image;

  void add_to(CLI::App& app) {
    auto* cmd = app.add_subcommand("sign", "Print the signature of a cover image");
    cmd->add_option("image", image, "Image file")->required()->check(CLI::ExistingFile);
  }

  int run() const {
    std::cout << qgk::to_hex(qgk::compute_image_signature(qgk::load_any_image(image))) << "\n";
    return kOk;
  }
};

// ---------------------------------------------------------------- capacity

struct CapacityCmd {
  std::string cover;
  std::uint32_t width = 0, height = 0;
  bool json_out = false;

  void add_to(CLI::App& app) {
    auto* cmd = app.add_subcommand("capacity", "Print the payload byte budget");
    auto* c = cmd->add_option("--cover", cover, "Cover image")->check(CLI::ExistingFile);
    auto* w = cmd->add_option("--width", width)->check(CLI::PositiveNumber);
    auto* h = cmd->add_option("--height", height)->check(CLI::PositiveNumber);
    w->needs(h);
    h->needs(w);
    c->excludes(w)->excludes(h);
    cmd->add_flag("--json", json_out, "Print a JSON object");
    cmd->callback([cmd] {
      if (cmd->count("--cover") == 0 && cmd->count("--width") == 0) {
        throw CLI::ValidationError("give --cover or --width/--height");
      }
    });
  }

  int run() {
    if (!cover.empty()) {
      qgk::Image img = qgk::load_any_image(cover);
      width = img.width;
      height = img.height;
    }
    auto bytes = qgk::capacity(width, height);
    if (json_out) {
      std::cout << json{{"width", width}, {"height", height}, {"capacity_bytes", bytes}}.dump()
                << "\n";
    } else {
      std::cout << bytes << "\n";
    }
    return kOk;
  }
};

// ---------------------------------------------------------------- validate

struct ValidateCmd {
  std::string quantum_seed, reference, signature, log_base = "e";
  std::uint64_t shots = 2048;
  double dep = 0.03, ro = 0.01;
  int runs = 1;
  bool json_out = false;
  FactorFlags factors;
  int qubits = qgk::kDefaultQubits;
  int depth = qgk::kDefaultDepth;
  CLI::App* command = nullptr;

  void add_to(CLI::App& app) {
    auto* cmd = app.add_subcommand(
        "validate", "Compare exact, noiseless-shot and noisy-shot circuit outputs");
    command = cmd;
    cmd->add_option("--quantum-seed", quantum_seed, "sigma_q as 64 hex chars");
    factors.add_to(cmd);
    auto* ref = cmd->add_option("--reference", reference, "Cover image")->check(CLI::ExistingFile);
    auto* sig = cmd->add_option("--signature", signature, "Cover signature hex");
    ref->excludes(sig);
    cmd->add_option("--qubits", qubits)->capture_default_str()->check(CLI::Range(1, qgk::kMaxQubits));
    cmd->add_option("--depth", depth)->capture_default_str()->check(CLI::Range(1, qgk::kMaxDepth));
    cmd->add_option("--shots", shots)->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--dep", dep, "Depolarizing probability")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--ro", ro, "Readout flip probability")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--runs", runs, "Independent shot runs")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--log-base", log_base, "Cross-entropy log base")
        ->capture_default_str()
        ->check(CLI::IsMember({"e", "2"}));
    cmd->add_flag("--json", json_out, "Print one JSON object per run");
  }

  qgk::Digest quantum_seed_value() const {
    if (!quantum_seed.empty()) return qgk::digest_from_hex(quantum_seed);
    if (reference.empty() && signature.empty()) {
      throw UsageError("give --quantum-seed, or the factors with --reference/--signature");
    }
    qgk::Digest sig = reference.empty()
                          ? qgk::digest_from_hex(signature)
                          : qgk::compute_image_signature(qgk::load_any_image(reference));
    auto c = factors.resolve();
    return qgk::derive_seeds({c.password, c.shared_secret, c.context_string, sig}).quantum;
  }

  int run() const {
    qgk::Digest sigma_q = quantum_seed_value();
    auto spec = qgk::derive_parameters(sigma_q, qubits, depth);
    auto exact = qgk::evaluate_statevector(spec);
    auto gate_key = qgk::derive_gate_key(exact);
    qgk::CompareOptions opts;
    opts.cross_entropy_base = log_base == "2" ? qgk::LogBase::two : qgk::LogBase::natural;

    for (int run = 0; run < runs; ++run) {
      // Shot streams are keyed by sigma_q and the run index so that reruns
      // reproduce the same histograms.
      qgk::Bytes idx;
      qgk::append_be32(idx, static_cast<std::uint32_t>(run));
      auto sim_seed = qgk::sha256({qgk::as_bytes("QGK/validate/sim"), sigma_q, idx});
      auto hw_seed = qgk::sha256({qgk::as_bytes("QGK/validate/noisy"), sigma_q, idx});
      auto sim = qgk::sample_shots(exact, shots, sim_seed);
      auto hw = qgk::sample_shots(exact, shots, hw_seed, qgk::NoiseParams{dep, ro});
      auto r = qgk::compare_distributions(exact, sim, hw, opts);
      if (json_out) {
        std::cout << json{{"run", run},
                          {"n_qubits", r.n_qubits},
                          {"shots", shots},
                          {"gate_key", qgk::to_hex(gate_key)},
                          {"entropy_exact", r.entropy_exact},
                          {"entropy_sim", r.entropy_sim},
                          {"entropy_hw", r.entropy_hw},
                          {"cross_entropy", json_number(r.cross_entropy)},
                          {"cross_entropy_base", log_base},
                          {"linear_xeb_sim", r.linear_xeb_sim},
                          {"linear_xeb_hw", r.linear_xeb_hw},
                          {"tvd", r.tvd},
                          {"tvd_sim_exact", r.tvd_sim_exact},
                          {"tvd_hw_exact", r.tvd_hw_exact},
                          {"peak_exact", r.peak_exact},
                          {"peak_sim", r.peak_sim},
                          {"peak_hw", r.peak_hw},
                          {"peaks_agree", r.peaks_agree}}
                         .dump()
                  << "\n";
      } else {
        if (run == 0) std::cout << "gate_key       " << qgk::to_hex(gate_key) << "\n";
        std::cout << "run            " << run << "\n"
                  << "entropy_exact  " << format_double(r.entropy_exact) << "\n"
                  << "entropy_sim    " << format_double(r.entropy_sim) << "\n"
                  << "entropy_hw     " << format_double(r.entropy_hw) << "\n"
                  << "cross_entropy  " << format_double(r.cross_entropy) << "\n"
                  << "linear_xeb_sim " << format_double(r.linear_xeb_sim) << "\n"
                  << "linear_xeb_hw  " << format_double(r.linear_xeb_hw) << "\n"
                  << "tvd            " << format_double(r.tvd) << "\n"
                  << "tvd_sim_exact  " << format_double(r.tvd_sim_exact) << "\n"
                  << "tvd_hw_exact   " << format_double(r.tvd_hw_exact) << "\n"
                  << "peak_exact     " << r.peak_exact << "\n"
                  << "peak_sim       " << r.peak_sim << "\n"
                  << "peak_hw        " << r.peak_hw << "\n"
                  << "peaks_agree    " << (r.peaks_agree ? "true" : "false") << "\n";
      }
    }
    return kOk;
  }
};

// ---------------------------------------------------------------- metrics

struct MetricsCmd {
  std::string a, b;
  bool json_out = false;

  void add_to(CLI::App& app) {
    auto* cmd = app.add_subcommand("metrics", "SSIM, PSNR, RMSE and MAE of two images");
    cmd->add_option("--a", a, "First image")->required()->check(CLI::ExistingFile);
    cmd->add_option("--b", b, "Second image")->required()->check(CLI::ExistingFile);
    cmd->add_flag("--json", json_out, "Print a JSON object");
  }

  int run() const {
    auto q = qgk::image_quality(qgk::load_any_image(a), qgk::load_any_image(b));
    if (json_out) {
      std::cout << json{{"ssim", q.ssim},
                        {"psnr", json_number(q.psnr)},
                        {"rmse", q.rmse},
                        {"mae", q.mae}}
                       .dump()
                << "\n";
    } else {
      std::cout << "ssim " << format_double(q.ssim) << "\n"
                << "psnr " << format_double(q.psnr) << "\n"
                << "rmse " << format_double(q.rmse) << "\n"
                << "mae  " << format_double(q.mae) << "\n";
    }
    return kOk;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Context-bound image steganography with a simulated quantum gate key"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "qgk 1.0.0");

  EncodeCmd encode;
  DecodeCmd decode;
  SignCmd sign;
  CapacityCmd capacity;
  ValidateCmd validate;
  MetricsCmd metrics;
  encode.add_to(app);
  decode.add_to(app);
  sign.add_to(app);
  capacity.add_to(app);
  validate.add_to(app);
  metrics.add_to(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "encode") return encode.run();
    if (name == "decode") return decode.run();
    if (name == "sign") return sign.run();
    if (name == "capacity") return capacity.run();
    if (name == "validate") return validate.run();
    if (name == "metrics") return metrics.run();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const qgk::CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCapacity;
  } catch (const qgk::ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const qgk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoFormat;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoFormat;
  }
  return kUsage;
}
