#include "stegkit/steganalysis.hpp"

#include <array>
#include <random>
#include <sstream>
#include <unordered_set>

#include "stegkit/errors.hpp"
#include "stegkit/stats.hpp"

namespace stegkit {

std::string_view to_string(AttackClass c) {
  switch (c) {
    case AttackClass::KnownCarrier: return "known-carrier";
    case AttackClass::StegoOnly: return "stego-only";
    case AttackClass::KnownMessage: return "known-message";
    case AttackClass::KnownSteganography: return "known-steganography";
  }
  return "unknown";
}

AttackClassification classify_attack(const AvailableInputs& inputs) {
  if (!inputs.stego) {
    throw NoInput("analysis requires at least a suspect medium");
  }
  AttackClassification result;
  if (inputs.algorithm) {
    result.attack_class = AttackClass::KnownSteganography;
  } else if (inputs.message) {
    result.attack_class = AttackClass::KnownMessage;
  } else if (inputs.cover) {
    result.attack_class = AttackClass::KnownCarrier;
  } else {
    result.attack_class = AttackClass::StegoOnly;
  }
  result.runnable_detectors = {"lsb_chi_square", "unique_color_count",
                               "whitespace_scan", "header_anomaly_scan"};
  if (inputs.cover) {
    result.runnable_detectors.emplace_back("visual_diff");
    result.runnable_detectors.emplace_back("file_size_delta");
  }
  if (inputs.algorithm) {
    // Knowing the algorithm is what makes message recovery itself runnable.
    result.runnable_detectors.emplace_back("targeted_extraction");
  }
  return result;
}

VisualDiff visual_diff(const PixelImage& cover, const PixelImage& stego) {
  if (cover.width != stego.width || cover.height != stego.height ||
      cover.channels != stego.channels) {
    throw DimensionMismatch("cover and stego dimensions differ");
  }
  VisualDiff diff;
  diff.map.resize(cover.samples.size(), 0);
  for (std::size_t i = 0; i < cover.samples.size(); ++i) {
    if (cover.samples[i] != stego.samples[i]) {
      diff.map[i] = 1;
      ++diff.changed_count;
    }
  }
  return diff;
}

std::int64_t file_size_delta(std::span<const std::uint8_t> cover,
                             std::span<const std::uint8_t> suspect) {
  return static_cast<std::int64_t>(suspect.size()) -
         static_cast<std::int64_t>(cover.size());
}

std::size_t unique_color_count(const PixelImage& image) {
  std::unordered_set<std::uint32_t> seen;
  if (image.channels == 3) {
    for (std::size_t p = 0; p + 2 < image.samples.size(); p += 3) {
      seen.insert(static_cast<std::uint32_t>(image.samples[p]) << 16 |
                  static_cast<std::uint32_t>(image.samples[p + 1]) << 8 |
                  image.samples[p + 2]);
    }
  } else {
    for (std::uint8_t s : image.samples) {
      seen.insert(s);
    }
  }
  return seen.size();
}

ChiSquareResult lsb_chi_square(const PixelImage& image) {
  if (image.samples.size() < 1024) {
    throw InsufficientSamples("chi-square verdict needs at least 1024 samples");
  }
  std::array<double, 256> hist{};
  for (std::uint8_t s : image.samples) {
    hist[s] += 1.0;
  }
  ChiSquareResult result;
  for (int k = 0; k < 128; ++k) {
    const double expected = (hist[2 * k] + hist[2 * k + 1]) / 2.0;
    if (expected < 5.0) continue;  // classic validity requirement
    const double d = hist[2 * k] - expected;
    result.statistic += d * d / expected;
    ++result.pairs_used;
  }
  if (result.pairs_used < 2) {
    throw InsufficientSamples("too few populated value pairs for a verdict");
  }
  result.p_value = chi2_survival(result.statistic, result.pairs_used - 1);
  return result;
}

WhitespaceScan whitespace_scan(std::string_view text, double threshold) {
  WhitespaceScan scan;
  std::size_t total_gaps = 0;
  std::size_t multi_gaps = 0;
  std::size_t i = 0;
  bool seen_word = false;
  while (i < text.size()) {
    const char c = text[i];
    if (c != ' ' && c != '\t' && c != '\n' && c != '\r' && c != '\f' && c != '\v') {
      seen_word = true;
      ++i;
      continue;
    }
    std::size_t spaces = 0;
    while (i < text.size() &&
           (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == '\r' ||
            text[i] == '\f' || text[i] == '\v')) {
      if (text[i] == ' ') ++spaces;
      ++i;
    }
    if (seen_word && i < text.size()) {
      ++total_gaps;
      ++scan.gap_histogram[spaces];
      if (spaces >= 2) ++multi_gaps;
    }
  }
  if (total_gaps > 0) {
    scan.multi_gap_fraction =
        static_cast<double>(multi_gaps) / static_cast<double>(total_gaps);
    scan.flagged = scan.multi_gap_fraction >= threshold;
  }
  return scan;
}

PixelImage lsb_scrub(const PixelImage& image, std::uint64_t seed) {
  PixelImage scrubbed = image;
  std::mt19937_64 rng(seed);
  std::uint64_t buffer = 0;
  int bits_left = 0;
  for (auto& sample : scrubbed.samples) {
    if (bits_left == 0) {
      buffer = rng();
      bits_left = 64;
    }
    sample = static_cast<std::uint8_t>((sample & ~1u) | (buffer & 1u));
    buffer >>= 1;
    --bits_left;
  }
  return scrubbed;
}

std::string AnalysisReport::to_text() const {
  std::ostringstream out;
  for (const auto& row : rows) {
    out << row.name << '\t' << row.statistic << '\t' << row.threshold << '\t'
        << (row.flagged ? "flagged" : "clear") << '\n';
  }
  return out.str();
}

}  // namespace stegkit
