#include "stegkit/text_stego.hpp"

#include <cctype>
#include <stdexcept>

#include "stegkit/errors.hpp"

namespace stegkit {

namespace {

bool is_space_char(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

}  // namespace

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space_char(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space_char(text[i])) ++i;
    if (i > start) {
      words.emplace_back(text.substr(start, i - start));
    }
  }
  return words;
}

std::string charkey_extract(std::string_view cover, const CharKeySeries& key) {
  const auto words = split_words(cover);
  std::string message;
  std::size_t word_index = 0;
  for (std::size_t k : key.positions) {
    if (k == 0) {
      message.push_back(' ');
      continue;
    }
    // A too-short word is skipped together with its key entry.
    if (word_index >= words.size()) {
      throw KeyExhaustsCover("cover words exhausted with key entries remaining");
    }
    const std::string& word = words[word_index++];
    if (word.size() < k) {
      continue;
    }
    message.push_back(word[k - 1]);
  }
  return message;
}

CharKeySeries charkey_generate(std::string_view cover, std::string_view message) {
  for (char c : message) {
    if (c != ' ' && std::isalpha(static_cast<unsigned char>(c)) == 0) {
      throw std::invalid_argument("message must contain only letters and spaces");
    }
  }
  const auto words = split_words(cover);
  CharKeySeries series;
  std::size_t word_index = 0;
  for (char c : message) {
    if (c == ' ') {
      series.positions.push_back(0);
      continue;
    }
    bool placed = false;
    while (word_index < words.size()) {
      const std::string& word = words[word_index];
      const std::size_t pos = word.find(c);
      if (pos != std::string::npos) {
        series.positions.push_back(pos + 1);
        ++word_index;
        placed = true;
        break;
      }
      // Emit an entry the extractor will skip along with this word.
      series.positions.push_back(word.size() + 1);
      ++word_index;
    }
    if (!placed) {
      throw Unsatisfiable("message character not found in any remaining word");
    }
  }
  return series;
}

std::string gap_embed(std::string_view cover,
                      const std::vector<std::size_t>& indices,
                      const GapTable& table) {
  if (table.entries.empty()) {
    throw std::invalid_argument("gap table must be non-empty");
  }
  const auto words = split_words(cover);
  const std::size_t gaps = words.empty() ? 0 : words.size() - 1;
  if (indices.size() > gaps) {
    throw NotEnoughGaps("cover has fewer gaps than indices to embed");
  }
  for (std::size_t ix : indices) {
    if (ix < 1 || ix >= table.entries.size()) {
      throw IndexOutOfTable("gap index outside lookup table");
    }
  }
  std::string out;
  for (std::size_t w = 0; w < words.size(); ++w) {
    if (w > 0) {
      const std::size_t extras = (w - 1) < indices.size() ? indices[w - 1] : 0;
      out.append(1 + extras, ' ');
    }
    out += words[w];
  }
  return out;
}

std::vector<std::size_t> gap_extract_indices(std::string_view stego) {
  // Only ASCII spaces are significant carriers; other whitespace merely
  // separates words.
  std::vector<std::size_t> counts;
  std::size_t i = 0;
  bool seen_word = false;
  while (i < stego.size()) {
    if (!is_space_char(stego[i])) {
      seen_word = true;
      ++i;
      continue;
    }
    std::size_t spaces = 0;
    while (i < stego.size() && is_space_char(stego[i])) {
      if (stego[i] == ' ') ++spaces;
      ++i;
    }
    // An inter-word gap needs a word on both sides.
    if (seen_word && i < stego.size() && spaces >= 2) {
      counts.push_back(spaces - 1);
    }
  }
  return counts;
}

std::vector<std::string> gap_extract(std::string_view stego,
                                     const GapTable& table) {
  std::vector<std::string> out;
  for (std::size_t extras : gap_extract_indices(stego)) {
    if (extras >= table.entries.size()) {
      throw IndexOutOfTable("gap size exceeds lookup table");
    }
    out.push_back(table.entries[extras]);
  }
  return out;
}

}  // namespace stegkit
