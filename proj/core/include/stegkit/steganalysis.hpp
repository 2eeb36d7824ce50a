#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stegkit/image_stego.hpp"

namespace stegkit {

/// The four information-availability classes of steganalysis.
enum class AttackClass { KnownCarrier, StegoOnly, KnownMessage, KnownSteganography };

std::string_view to_string(AttackClass c);

/// Which materials the analyst holds. A suspect medium is always required.
struct AvailableInputs {
  bool stego = false;
  bool cover = false;
  bool message = false;
  bool algorithm = false;
};

struct AttackClassification {
  AttackClass attack_class;
  std::vector<std::string> runnable_detectors;
};

/// Maps input availability onto the attack taxonomy and lists the detectors
/// that class can run. Throws NoInput without a suspect medium.
AttackClassification classify_attack(const AvailableInputs& inputs);

/// Per-sample difference map between cover and stego.
struct VisualDiff {
  std::vector<std::uint8_t> map;  // 1 where samples differ
  std::size_t changed_count = 0;
};

VisualDiff visual_diff(const PixelImage& cover, const PixelImage& stego);

/// suspect size minus cover size.
std::int64_t file_size_delta(std::span<const std::uint8_t> cover,
                             std::span<const std::uint8_t> suspect);

/// Distinct pixel tuples (triples for 3-channel images, values otherwise).
std::size_t unique_color_count(const PixelImage& image);

/// Pairs-of-values chi-square test over the sample histogram: LSB embedding
/// equalizes the (2k, 2k+1) pairs, driving the statistic far below its
/// degrees of freedom and the survival p-value toward 1. Requires >= 1024
/// samples (InsufficientSamples).
struct ChiSquareResult {
  double statistic = 0.0;
  double p_value = 0.0;
  std::size_t pairs_used = 0;
};

ChiSquareResult lsb_chi_square(const PixelImage& image);

/// Histogram of per-gap space counts; flagged when gaps of >= 2 spaces make
/// up at least `threshold` of all inter-word gaps.
struct WhitespaceScan {
  std::map<std::size_t, std::size_t> gap_histogram;
  double multi_gap_fraction = 0.0;
  bool flagged = false;
};

WhitespaceScan whitespace_scan(std::string_view text, double threshold = 0.05);

/// Destruction attack: every LSB is overwritten from a seeded generator, so
/// a framed extraction afterwards reports BadMagic.
PixelImage lsb_scrub(const PixelImage& image, std::uint64_t seed);

/// One row per detector run.
struct DetectorResult {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  bool flagged = false;
  std::string inputs;  // which materials the detector consumed
};

struct AnalysisReport {
  std::vector<DetectorResult> rows;

  /// Line-oriented serialization: name, statistic, threshold, verdict,
  /// tab-separated.
  [[nodiscard]] std::string to_text() const;
};

}  // namespace stegkit
