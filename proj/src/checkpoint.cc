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

#include "wane/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "wane/errors.h"
#include "wane/hash.h"

namespace wane {

namespace {

constexpr char kMagic[8] = {'W', 'A', 'N', 'E', 'C', 'K', 'P', 'T'};

class Writer {
 public:
  void bytes(const void* p, std::size_t n) { out_.append(static_cast<const char*>(p), n); }
  void u32(std::uint32_t x) {
    for (int k = 0; k < 4; ++k) out_.push_back(static_cast<char>((x >> (8 * k)) & 0xff));
  }
  void u64(std::uint64_t x) {
    for (int k = 0; k < 8; ++k) out_.push_back(static_cast<char>((x >> (8 * k)) & 0xff));
  }
  void f64(double x) { u64(std::bit_cast<std::uint64_t>(x)); }
  void matrix(const Matrix& m) {
    u64(m.rows());
    u64(m.cols());
    for (double x : m.values()) f64(x);
  }
  std::string& str() { return out_; }

 private:
  std::string out_;
};

class Reader {
 public:
  Reader(const std::string& data, std::size_t end) : data_(data), end_(end) {}

  void need(std::size_t n) const {
    if (pos_ + n > end_) throw DataError("checkpoint: truncated or corrupt file");
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t x = 0;
    for (int k = 0; k < 4; ++k) x |= static_cast<std::uint32_t>(static_cast<unsigned char>(data_[pos_++])) << (8 * k);
    return x;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t x = 0;
    for (int k = 0; k < 8; ++k) x |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_++])) << (8 * k);
    return x;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string string(std::size_t n) {
    need(n);
    std::string s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  Matrix matrix() {
    const std::uint64_t rows = u64(), cols = u64();
    if (cols != 0 && rows > (end_ - pos_) / 8 / cols) throw DataError("checkpoint: table larger than file");
    need(rows * cols * 8);
    Matrix m(rows, cols);
    for (double& x : m.values()) x = f64();
    return m;
  }
  std::size_t pos() const { return pos_; }

 private:
  const std::string& data_;
  std::size_t end_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string encode_checkpoint(const ModelParams& params, const CheckpointMeta& meta) {
  Writer w;
  w.bytes(kMagic, sizeof kMagic);
  w.u32(kCheckpointVersion);
  const ModelConfig& c = params.config;
  w.u32(static_cast<std::uint32_t>(c.mode));
  w.u32(static_cast<std::uint32_t>(c.align));
  w.u32(static_cast<std::uint32_t>(c.agg));
  w.u64(c.struct_dim);
  for (double a : c.alpha) w.f64(a);
  w.u64(meta.split_hash);
  w.u64(meta.config_echo.size());
  w.bytes(meta.config_echo.data(), meta.config_echo.size());
  w.matrix(params.structural);
  w.matrix(params.words);
  w.matrix(params.w1);
  w.matrix(params.w2);
  Fnv1a h;
  h.update(w.str());
  w.u64(h.digest());
  return std::move(w.str());
}

Checkpoint decode_checkpoint(const std::string& bytes) {
  if (bytes.size() < sizeof kMagic || std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0) {
    throw DataError("checkpoint: bad magic bytes (not a checkpoint file)");
  }
  Reader header(bytes, bytes.size());
  header.string(sizeof kMagic);
  const std::uint32_t version = header.u32();
  if (version != kCheckpointVersion) {
    throw DataError("checkpoint: unsupported format version " + std::to_string(version) +
                    " (this build reads version " + std::to_string(kCheckpointVersion) + ")");
  }
  if (bytes.size() < sizeof kMagic + 12) throw DataError("checkpoint: truncated or corrupt file");
  const std::size_t body = bytes.size() - 8;
  Fnv1a h;
  h.update(std::string_view(bytes).substr(0, body));
  {
    // checksum sits in the last 8 bytes
    std::uint64_t stored = 0;
    for (int k = 0; k < 8; ++k)
      stored |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[body + k])) << (8 * k);
    if (stored != h.digest()) throw DataError("checkpoint: checksum mismatch (truncated or corrupt file)");
  }

  Reader r(bytes, body);
  r.string(sizeof kMagic);
  r.u32();
  Checkpoint ck;
  ModelConfig& c = ck.params.config;
  const auto mode = r.u32(), align = r.u32(), agg = r.u32();
  if (mode > 2 || align > 2 || agg > 1) throw DataError("checkpoint: invalid model enums");
  c.mode = static_cast<Mode>(mode);
  c.align = static_cast<AlignFn>(align);
  c.agg = static_cast<AggFn>(agg);
  c.struct_dim = r.u64();
  for (double& a : c.alpha) a = r.f64();
  ck.meta.split_hash = r.u64();
  ck.meta.config_echo = r.string(r.u64());
  ck.params.structural = r.matrix();
  ck.params.words = r.matrix();
  ck.params.w1 = r.matrix();
  ck.params.w2 = r.matrix();
  if (r.pos() != body) throw DataError("checkpoint: trailing bytes before checksum");
  if (ck.params.structural.cols() != c.struct_dim || ck.params.words.cols() != c.word_dim()) {
    throw DataError("checkpoint: table shapes disagree with the stored configuration");
  }
  return ck;
}

void save_checkpoint(const ModelParams& params, const CheckpointMeta& meta,
                     const std::filesystem::path& path) {
  const std::string bytes = encode_checkpoint(params, meta);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write checkpoint " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("failed writing checkpoint " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open checkpoint " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_checkpoint(bytes);
}

}  // namespace wane
