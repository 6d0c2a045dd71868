#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qclab {

/// In-memory n-dimensional array of 64-bit reals, row-major.
struct Array {
  std::vector<std::uint64_t> dims;
  std::vector<double> data;

  std::size_t size() const {
    std::size_t n = 1;
    for (auto d : dims) n *= static_cast<std::size_t>(d);
    return n;
  }
};

// Binary array container: 8-byte magic "QCLABARR", u32 rank, u64 dims[rank],
// then raw little-endian 64-bit reals in row-major order. Writes go through
// a temp file and an atomic rename.
void write_array(const std::string& path, const Array& arr);
Array read_array(const std::string& path);

/// Atomic text write (temp + rename), shared by CSV/JSON/SVG emitters.
void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace qclab
