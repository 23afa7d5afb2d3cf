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

#include "wane/text_corpus.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <limits>

#include "wane/errors.h"

namespace wane {

namespace {

bool is_separator(unsigned char c) {
  return c < 0x80 && !((c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'));
}

std::string where(std::string_view source, std::size_t line_no) {
  return std::string(source) + ":" + std::to_string(line_no) + ": ";
}

// Splits `id<TAB>rest`. A line without a tab is an id with empty payload.
bool split_id(const std::string& line, std::uint64_t& id, std::string_view& rest) {
  const auto tab = line.find('\t');
  std::string_view head = std::string_view(line).substr(0, tab);
  while (!head.empty() && (head.back() == ' ' || head.back() == '\r')) head.remove_suffix(1);
  while (!head.empty() && head.front() == ' ') head.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), id);
  if (ec != std::errc() || ptr != head.data() + head.size() || head.empty()) return false;
  rest = tab == std::string::npos ? std::string_view() : std::string_view(line).substr(tab + 1);
  return true;
}

bool blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (c != ' ' && c != '\t' && c != '\r') return false;
  }
  return true;
}

}  // namespace

Vocabulary::Vocabulary() {
  ids_.emplace(std::string(kEmptyToken), kEmptyTokenId);
  tokens_.emplace_back(kEmptyToken);
  counts_.push_back(0);
}

TokenId Vocabulary::add(std::string_view token) {
  auto it = ids_.find(std::string(token));
  if (it != ids_.end()) {
    ++counts_[it->second];
    return it->second;
  }
  const auto id = static_cast<TokenId>(tokens_.size());
  ids_.emplace(std::string(token), id);
  tokens_.emplace_back(token);
  counts_.push_back(1);
  return id;
}

std::optional<TokenId> Vocabulary::find(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> tokenize(std::string_view raw) {
  std::vector<std::string> out;
  std::string current;
  for (char ch : raw) {
    const auto c = static_cast<unsigned char>(ch);
    if (is_separator(c)) {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : ch);
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

Corpus parse_corpus(std::istream& in, std::size_t max_len, std::optional<std::size_t> num_vertices,
                    std::string_view source) {
  if (max_len == 0) throw ConfigError("max_len must be at least 1");
  std::vector<std::optional<std::string>> raw;
  if (num_vertices) raw.resize(*num_vertices);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank_or_comment(line)) continue;
    std::uint64_t id = 0;
    std::string_view rest;
    if (!split_id(line, id, rest)) {
      throw DataError(where(source, line_no) + "expected 'vertex_id<TAB>text'");
    }
    if (num_vertices && id >= *num_vertices) {
      throw DataError(where(source, line_no) + "vertex " + std::to_string(id) +
                      " is outside the graph (N=" + std::to_string(*num_vertices) + ")");
    }
    if (id >= raw.size()) {
      if (id > std::numeric_limits<VertexId>::max()) {
        throw DataError(where(source, line_no) + "vertex id overflow");
      }
      raw.resize(id + 1);
    }
    if (raw[id]) {
      throw DataError(where(source, line_no) + "duplicate text for vertex " + std::to_string(id));
    }
    raw[id] = std::string(rest);
  }
  Corpus corpus;
  corpus.sequences.resize(raw.size());
  for (std::size_t v = 0; v < raw.size(); ++v) {
    if (!raw[v]) {
      throw DataError(std::string(source) + ": missing text for vertex " + std::to_string(v));
    }
    TextSequence& seq = corpus.sequences[v];
    seq.vertex = static_cast<VertexId>(v);
    auto tokens = tokenize(*raw[v]);
    if (tokens.size() > max_len) tokens.resize(max_len);
    for (const auto& t : tokens) seq.tokens.push_back(corpus.vocab.add(t));
    if (seq.tokens.empty()) seq.tokens.push_back(corpus.vocab.add(kEmptyToken));
  }
  return corpus;
}

Corpus build_corpus(const std::filesystem::path& path, std::size_t max_len,
                    std::optional<std::size_t> num_vertices) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open text file " + path.string());
  return parse_corpus(in, max_len, num_vertices, path.string());
}

Labels parse_labels(std::istream& in, std::size_t num_vertices, std::string_view source) {
  Labels labels;
  labels.label_of.assign(num_vertices, -1);
  std::unordered_map<std::string, int> class_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank_or_comment(line)) continue;
    std::uint64_t id = 0;
    std::string_view rest;
    if (!split_id(line, id, rest)) {
      throw DataError(where(source, line_no) + "expected 'vertex_id<TAB>label'");
    }
    while (!rest.empty() && (rest.back() == '\r' || rest.back() == ' ')) rest.remove_suffix(1);
    if (rest.empty()) throw DataError(where(source, line_no) + "empty label");
    if (id >= num_vertices) {
      throw DataError(where(source, line_no) + "vertex " + std::to_string(id) + " is outside the graph");
    }
    if (labels.label_of[id] >= 0) {
      throw DataError(where(source, line_no) + "duplicate label for vertex " + std::to_string(id));
    }
    auto [it, inserted] = class_ids.emplace(std::string(rest), static_cast<int>(labels.class_names.size()));
    if (inserted) labels.class_names.emplace_back(rest);
    labels.label_of[id] = it->second;
  }
  for (std::size_t v = 0; v < num_vertices; ++v) {
    if (labels.label_of[v] < 0) {
      throw DataError(std::string(source) + ": missing label for vertex " + std::to_string(v));
    }
  }
  return labels;
}

Labels load_labels(const std::filesystem::path& path, std::size_t num_vertices) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open label file " + path.string());
  return parse_labels(in, num_vertices, path.string());
}

}  // namespace wane
