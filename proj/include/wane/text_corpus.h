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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wane/graph_store.h"

namespace wane {

using TokenId = std::uint32_t;

inline constexpr std::string_view kEmptyToken = "<empty>";
inline constexpr TokenId kEmptyTokenId = 0;
inline constexpr std::size_t kDefaultMaxLen = 300;

// Token universe. Id 0 is always the reserved `<empty>` token, whose count is
// the number of text-less vertices.
class Vocabulary {
 public:
  Vocabulary();

  TokenId add(std::string_view token);
  std::optional<TokenId> find(std::string_view token) const;
  const std::string& token(TokenId id) const { return tokens_[id]; }
  std::size_t count(TokenId id) const { return counts_[id]; }
  std::size_t size() const { return tokens_.size(); }

 private:
  friend struct CorpusBuilder;
  std::unordered_map<std::string, TokenId> ids_;
  std::vector<std::string> tokens_;
  std::vector<std::size_t> counts_;
};

struct TextSequence {
  VertexId vertex = 0;
  std::vector<TokenId> tokens;

  std::size_t length() const { return tokens.size(); }
};

struct Corpus {
  Vocabulary vocab;
  std::vector<TextSequence> sequences;  // indexed by vertex id

  std::size_t num_vertices() const { return sequences.size(); }
  const TextSequence& text(VertexId v) const { return sequences[v]; }
};

// Lowercases ASCII and splits on whitespace and ASCII punctuation. Bytes
// >= 0x80 are kept inside tokens so UTF-8 words survive intact.
std::vector<std::string> tokenize(std::string_view raw);

// Reads `vertex_id<TAB>text` lines. When `num_vertices` is given every id in
// [0, num_vertices) must appear exactly once; otherwise the ids must be
// exactly 0..max.
Corpus parse_corpus(std::istream& in, std::size_t max_len,
                    std::optional<std::size_t> num_vertices = {},
                    std::string_view source = "<stream>");
Corpus build_corpus(const std::filesystem::path& path, std::size_t max_len = kDefaultMaxLen,
                    std::optional<std::size_t> num_vertices = {});

struct Labels {
  std::vector<int> label_of;  // per vertex, index into class_names
  std::vector<std::string> class_names;

  std::size_t num_classes() const { return class_names.size(); }
};

// Reads `vertex_id<TAB>label_string`; every vertex in [0, num_vertices) must
// be labelled once. Class ids follow first appearance.
Labels parse_labels(std::istream& in, std::size_t num_vertices, std::string_view source = "<stream>");
Labels load_labels(const std::filesystem::path& path, std::size_t num_vertices);

}  // namespace wane
