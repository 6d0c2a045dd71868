#include "qclab/array_io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "qclab/errors.hpp"

namespace qclab {

namespace {

constexpr char kMagic[8] = {'Q', 'C', 'L', 'A', 'B', 'A', 'R', 'R'};

static_assert(std::endian::native == std::endian::little,
              "array container assumes a little-endian host");

void put_u32(std::string& out, std::uint32_t v) {
  char b[4];
  std::memcpy(b, &v, 4);
  out.append(b, 4);
}

void put_u64(std::string& out, std::uint64_t v) {
  char b[8];
  std::memcpy(b, &v, 8);
  out.append(b, 8);
}

void rename_over(const std::string& tmp, const std::string& path) {
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error("rename failed for " + path);
  }
}

}  // namespace

void write_array(const std::string& path, const Array& arr) {
  if (arr.data.size() != arr.size()) {
    throw ValidationError("write_array: data length does not match dims");
  }
  std::string buf;
  buf.reserve(20 + 8 * arr.dims.size() + 8 * arr.data.size());
  buf.append(kMagic, 8);
  put_u32(buf, static_cast<std::uint32_t>(arr.dims.size()));
  for (auto d : arr.dims) put_u64(buf, d);
  const char* raw = reinterpret_cast<const char*>(arr.data.data());
  buf.append(raw, 8 * arr.data.size());

  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open " + tmp + " for writing");
    f.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!f) throw Error("short write to " + tmp);
  }
  rename_over(tmp, path);
}

Array read_array(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path);
  char magic[8];
  f.read(magic, 8);
  if (!f || std::memcmp(magic, kMagic, 8) != 0) {
    throw ValidationError(path + ": not a QCLABARR file");
  }
  std::uint32_t rank = 0;
  f.read(reinterpret_cast<char*>(&rank), 4);
  if (!f || rank > 8) throw ValidationError(path + ": bad rank");
  Array arr;
  arr.dims.resize(rank);
  f.read(reinterpret_cast<char*>(arr.dims.data()), 8 * rank);
  if (!f) throw ValidationError(path + ": truncated header");
  const std::size_t n = arr.size();
  arr.data.resize(n);
  f.read(reinterpret_cast<char*>(arr.data.data()),
         static_cast<std::streamsize>(8 * n));
  if (!f) throw ValidationError(path + ": truncated data");
  return arr;
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open " + tmp + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw Error("short write to " + tmp);
  }
  rename_over(tmp, path);
}

}  // namespace qclab
