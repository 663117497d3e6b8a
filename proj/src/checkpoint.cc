// Copyright 2026 The langaux Authors.
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

#include "langaux/checkpoint.h"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

namespace langaux {
namespace {

constexpr char kMagic[8] = {'L', 'A', 'X', 'C', 'K', 'P', 'T', '1'};

template <typename T>
void PutLe(std::string *out, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes, bytes + sizeof(T));
  }
  out->append(reinterpret_cast<const char *>(bytes), sizeof(T));
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  template <typename T>
  T Get(const char *what) {
    Need(sizeof(T), what);
    unsigned char b[sizeof(T)];
    std::memcpy(b, bytes_.data() + pos_, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
      std::reverse(b, b + sizeof(T));
    }
    pos_ += sizeof(T);
    T value;
    std::memcpy(&value, b, sizeof(T));
    return value;
  }

  std::string_view Bytes(size_t n, const char *what) {
    Need(n, what);
    std::string_view s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  bool done() const { return pos_ == bytes_.size(); }

 private:
  void Need(size_t n, const char *what) {
    if (bytes_.size() - pos_ < n) {
      throw CheckpointError(std::string("checkpoint truncated while reading ") +
                            what);
    }
  }

  std::string_view bytes_;
  size_t pos_ = 0;
};

}  // namespace

std::string EncodeCheckpoint(const NamedTensorRefs &tensors) {
  std::string out(kMagic, sizeof(kMagic));
  PutLe<uint32_t>(&out, kCheckpointVersion);
  PutLe<uint32_t>(&out, static_cast<uint32_t>(tensors.size()));
  for (const auto &[name, t] : tensors) {
    PutLe<uint32_t>(&out, static_cast<uint32_t>(name.size()));
    out += name;
    PutLe<uint32_t>(&out, static_cast<uint32_t>(t->rank()));
    for (int d : t->shape()) PutLe<uint32_t>(&out, static_cast<uint32_t>(d));
    for (double v : t->data()) PutLe<double>(&out, v);
  }
  return out;
}

NamedTensors DecodeCheckpoint(std::string_view bytes) {
  Reader r(bytes);
  if (r.Bytes(sizeof(kMagic), "magic") != std::string_view(kMagic, sizeof(kMagic))) {
    throw CheckpointError("not a checkpoint file (bad magic)");
  }
  const uint32_t version = r.Get<uint32_t>("version");
  if (version != kCheckpointVersion) {
    throw CheckpointError("unsupported checkpoint version " +
                          std::to_string(version));
  }
  const uint32_t count = r.Get<uint32_t>("tensor count");
  NamedTensors out;
  for (uint32_t i = 0; i < count; ++i) {
    const uint32_t len = r.Get<uint32_t>("name length");
    std::string name(r.Bytes(len, "name"));
    const uint32_t rank = r.Get<uint32_t>("rank");
    std::vector<int> shape;
    size_t n = 1;
    for (uint32_t d = 0; d < rank; ++d) {
      shape.push_back(static_cast<int>(r.Get<uint32_t>("dimension")));
      n *= shape.back();
    }
    std::vector<double> data(n);
    for (size_t k = 0; k < n; ++k) data[k] = r.Get<double>("tensor data");
    out.emplace_back(std::move(name), Tensor(std::move(shape), std::move(data)));
  }
  if (!r.done()) throw CheckpointError("trailing bytes after last tensor");
  return out;
}

void SaveCheckpoint(const std::string &path, const NamedTensorRefs &tensors) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw CheckpointError("cannot open " + path + " for writing");
  const std::string bytes = EncodeCheckpoint(tensors);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw CheckpointError("write failed: " + path);
}

NamedTensors LoadCheckpoint(const std::string &path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw CheckpointError("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return DecodeCheckpoint(ss.str());
}

}  // namespace langaux
