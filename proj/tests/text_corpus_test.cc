// Copyright (c) 2026 The WANE Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sstream>

#include "doctest.h"
#include "wane/errors.h"
#include "wane/text_corpus.h"

using namespace wane;

namespace {

Corpus parse(const std::string& text, std::size_t max_len = 300, std::optional<std::size_t> n = {}) {
  std::istringstream in(text);
  return parse_corpus(in, max_len, n, "text");
}

}  // namespace

TEST_CASE("tokenize lowercases and splits on punctuation") {
  CHECK(tokenize("MCMC converges.") == std::vector<std::string>{"mcmc", "converges"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("state-of-the-art") == std::vector<std::string>{"state", "of", "the", "art"});
  CHECK(tokenize("  a\tb\n(c), d's 2x") == std::vector<std::string>{"a", "b", "c", "d", "s", "2x"});
  CHECK(tokenize("na\xc3\xafve Bayes") == std::vector<std::string>{"na\xc3\xafve", "bayes"});
}

TEST_CASE("build_corpus: vocabulary, truncation and the reserved empty token") {
  const Corpus c = parse("0\tOne two THREE four five six seven eight nine ten eleven twelve\n1\t\n2\tone, one\n", 5);
  REQUIRE(c.num_vertices() == 3);
  CHECK(c.text(0).length() == 5);
  CHECK(c.vocab.token(c.text(0).tokens[4]) == "five");
  CHECK(c.text(1).tokens == std::vector<TokenId>{kEmptyTokenId});
  CHECK(c.vocab.token(kEmptyTokenId) == "<empty>");
  // distinct kept tokens (one..five) + <empty>
  CHECK(c.vocab.size() == 6);
  CHECK(c.vocab.count(*c.vocab.find("one")) == 3);
  CHECK(c.vocab.count(kEmptyTokenId) == 1);
}

TEST_CASE("build_corpus: tokens round-trip through the tokenizer") {
  const Corpus c = parse("0\tDeep-learning, for GRAPHS!\n1\tRandom walks (DeepWalk) & LINE.\n");
  for (TokenId t = 1; t < c.vocab.size(); ++t) {
    const auto again = tokenize(c.vocab.token(t));
    REQUIRE(again.size() == 1);
    CHECK(again[0] == c.vocab.token(t));
    CHECK(c.vocab.count(t) >= 1);
  }
  for (const auto& seq : c.sequences)
    for (TokenId t : seq.tokens) CHECK(t < c.vocab.size());
}

TEST_CASE("build_corpus errors") {
  CHECK_THROWS_WITH_AS(parse("0\ta\n2\tb\n"), doctest::Contains("missing text for vertex 1"), DataError);
  CHECK_THROWS_WITH_AS(parse("0\ta\n0\tb\n"), doctest::Contains("duplicate"), DataError);
  CHECK_THROWS_AS(parse("0\ta\n3\tb\n", 300, 2), DataError);
  CHECK_THROWS_AS(parse("0\ta\n", 300, 2), DataError);
  CHECK_THROWS_AS(parse("x\ta\n"), DataError);
  CHECK_THROWS_AS(parse("0\ta\n", 0), ConfigError);
}

TEST_CASE("labels") {
  std::istringstream in("0\tNeural_Networks\n2\tTheory\n1\tNeural_Networks\n");
  const Labels l = parse_labels(in, 3);
  CHECK(l.num_classes() == 2);
  CHECK(l.label_of == std::vector<int>{0, 0, 1});
  CHECK(l.class_names[1] == "Theory");

  std::istringstream missing("0\ta\n");
  CHECK_THROWS_AS(parse_labels(missing, 2), DataError);
  std::istringstream dup("0\ta\n0\tb\n");
  CHECK_THROWS_AS(parse_labels(dup, 1), DataError);
}
