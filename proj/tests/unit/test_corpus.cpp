#include <doctest.h>

#include <sstream>

#include "pointseg/corpus.hpp"
#include "pointseg/errors.hpp"

using namespace pointseg;

TEST_CASE("gold line parsing") {
  const auto s = parse_gold_line("全世界 の 人々");
  CHECK(s.text == U"全世界の人々");
  CHECK(s.boundaries == std::vector<bool>{false, false, true, true, false});
  CHECK(s.tokens() == std::vector<std::u32string>{U"全世界", U"の", U"人々"});
  CHECK(format_gold_line(s) == "全世界 の 人々");

  CHECK(parse_gold_line("").text.empty());
  CHECK(parse_gold_line("a").boundaries.empty());
}

TEST_CASE("malformed gold lines") {
  CHECK_THROWS_AS(parse_gold_line("a  b"), Error);
  CHECK_THROWS_AS(parse_gold_line(" a"), Error);
  CHECK_THROWS_AS(parse_gold_line("a "), Error);
  CHECK_THROWS_AS(parse_gold_line("\xff\xfe"), Error);
}

TEST_CASE("corpus loader reports file and line") {
  std::istringstream in("ab cd\nbad  line\n");
  try {
    load_gold_corpus(in, "gold.txt");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadCorpusLine);
    CHECK(std::string(e.what()).find("gold.txt:2") != std::string::npos);
  }
}

TEST_CASE("crlf input") {
  std::istringstream in("ab cd\r\nef\r\n");
  const auto corpus = load_gold_corpus(in, "x");
  REQUIRE(corpus.size() == 2);
  CHECK(corpus[0].text == U"abcd");
  CHECK(corpus[1].text == U"ef");
}
