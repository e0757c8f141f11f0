#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace pointseg {

// One sentence with its boundary decisions; boundaries[i] tells whether
// boundary i+1 (between characters i and i+1) is a word boundary.
struct Segmented {
  std::u32string text;
  std::vector<bool> boundaries;

  std::vector<std::u32string> tokens() const;

  bool operator==(const Segmented&) const = default;
};

// Gold line format: tokens separated by single spaces. Empty lines yield an
// empty sentence; doubled/leading/trailing spaces are Error{BadCorpusLine}.
Segmented parse_gold_line(std::string_view line);

std::string format_gold_line(const Segmented& sentence);

// Loads a whole gold corpus; errors carry "<name>:<line>".
std::vector<Segmented> load_gold_corpus(std::istream& in, const std::string& name);
std::vector<Segmented> load_gold_corpus_file(const std::string& path);

// Raw inference input: one unsegmented sentence per line.
std::vector<std::u32string> load_raw_lines(std::istream& in, const std::string& name);
std::vector<std::u32string> load_raw_lines_file(const std::string& path);

// Dictionary: one word per line; blank lines and duplicates are dropped.
std::vector<std::u32string> load_dict_file(const std::string& path);

}  // namespace pointseg
