#include "pointseg/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include "pointseg/errors.hpp"
#include "pointseg/utf8.hpp"

namespace pointseg {

namespace {

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

template <typename Fn>
auto per_line(std::istream& in, const std::string& name, Fn fn) {
  std::vector<decltype(fn(std::string_view{}))> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    try {
      out.push_back(fn(strip_cr(line)));
    } catch (const Error& e) {
      throw Error(e.kind(), name + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  return in;
}

}  // namespace

std::vector<std::u32string> Segmented::tokens() const {
  std::vector<std::u32string> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < boundaries.size(); ++i) {
    if (boundaries[i]) {
      out.push_back(text.substr(start, i + 1 - start));
      start = i + 1;
    }
  }
  out.push_back(text.substr(start));
  return out;
}

Segmented parse_gold_line(std::string_view line) {
  Segmented sentence;
  if (line.empty()) return sentence;
  std::vector<std::size_t> cuts;
  std::u32string text;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t space = line.find(' ', pos);
    const std::size_t end = space == std::string_view::npos ? line.size() : space;
    if (end == pos) {
      throw Error(ErrorKind::BadCorpusLine, "empty token (doubled, leading or trailing space)");
    }
    if (!text.empty()) cuts.push_back(text.size());
    text += utf8::decode(line.substr(pos, end - pos));
    if (space == std::string_view::npos) break;
    pos = space + 1;
  }
  sentence.boundaries.assign(text.size() - 1, false);
  for (const std::size_t cut : cuts) sentence.boundaries[cut - 1] = true;
  sentence.text = std::move(text);
  return sentence;
}

std::string format_gold_line(const Segmented& sentence) {
  std::string out;
  bool first = true;
  for (const auto& token : sentence.tokens()) {
    if (!first) out += ' ';
    out += utf8::encode(token);
    first = false;
  }
  return out;
}

std::vector<Segmented> load_gold_corpus(std::istream& in, const std::string& name) {
  return per_line(in, name, [](std::string_view line) { return parse_gold_line(line); });
}

std::vector<Segmented> load_gold_corpus_file(const std::string& path) {
  auto in = open_or_throw(path);
  return load_gold_corpus(in, path);
}

std::vector<std::u32string> load_raw_lines(std::istream& in, const std::string& name) {
  return per_line(in, name, [](std::string_view line) { return utf8::decode(line); });
}

std::vector<std::u32string> load_raw_lines_file(const std::string& path) {
  auto in = open_or_throw(path);
  return load_raw_lines(in, path);
}

std::vector<std::u32string> load_dict_file(const std::string& path) {
  auto in = open_or_throw(path);
  auto words = load_raw_lines(in, path);
  std::erase_if(words, [](const std::u32string& w) { return w.empty(); });
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  return words;
}

}  // namespace pointseg
