#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace stegkit {

/// Series of 1-based character positions; 0 emits a space in the recovered
/// message without consuming a word.
struct CharKeySeries {
  std::vector<std::size_t> positions;
};

/// Lookup table shared by both gap-coding parties. A gap carrying n extra
/// spaces resolves to entries[n]; entry 0 is unreachable padding.
struct GapTable {
  std::vector<std::string> entries;
};

/// Splits text into maximal runs of non-whitespace. Tabs and newlines are
/// treated as word separators like spaces.
std::vector<std::string> split_words(std::string_view text);

/// Recovers the message hidden at the keyed character positions of
/// consecutive words. A word shorter than its key entry is skipped together
/// with that entry. Throws KeyExhaustsCover when words run out while
/// non-zero entries remain.
std::string charkey_extract(std::string_view cover, const CharKeySeries& key);

/// Builds a key series such that charkey_extract(cover, series) == message.
/// Greedy: scans the current word for each message character, emitting a
/// skip entry (word length + 1) on a miss. Message must be letters and
/// spaces. Throws Unsatisfiable when a character cannot be found in any
/// remaining word.
CharKeySeries charkey_generate(std::string_view cover, std::string_view message);

/// Inserts indices[i] extra spaces into gap i of the cover; remaining gaps
/// stay single-space. Throws NotEnoughGaps / IndexOutOfTable.
std::string gap_embed(std::string_view cover,
                      const std::vector<std::size_t>& indices,
                      const GapTable& table);

/// Resolves every gap of >= 2 spaces to its table entry; single-space gaps
/// carry nothing. Throws IndexOutOfTable when a gap exceeds the table.
std::vector<std::string> gap_extract(std::string_view stego,
                                     const GapTable& table);

/// Raw extra-space counts per carrying gap, in order (the indices that
/// gap_embed was called with). Exposed for round-trip checks.
std::vector<std::size_t> gap_extract_indices(std::string_view stego);

}  // namespace stegkit
