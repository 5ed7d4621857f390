#include "conformetrics/trajio/cfrm.hpp"

#include <algorithm>
#include <bit>
#include <cstring>

#include <fmt/format.h>

#include "conformetrics/error.hpp"

namespace conformetrics::trajio {
namespace {

template <class T>
void put(std::string& out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.append(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <class T>
T get(std::string_view in, std::size_t offset) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, in.data() + offset, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

void put_frame(std::string& out, const Frame& frame, std::size_t natoms) {
  if (frame.positions.size() != natoms)
    throw UsageError(fmt::format("CFRM: frame has {} atoms, header declares {}", frame.positions.size(), natoms));
  put<double>(out, frame.time);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) put<float>(out, static_cast<float>(frame.box.vectors()(r, c)));
  for (const Vec3& x : frame.positions)
    for (int k = 0; k < 3; ++k) put<float>(out, static_cast<float>(x[k]));
}

void put_header(std::string& out, std::size_t natoms) {
  out.append("CFRM", 4);
  put<std::uint32_t>(out, kCfrmVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(natoms));
}

} // namespace

std::string write_cfrm(std::span<const Frame> frames, std::size_t natoms) {
  std::string out;
  out.reserve(kCfrmHeaderBytes + frames.size() * cfrm_frame_bytes(natoms));
  put_header(out, natoms);
  for (const Frame& f : frames) put_frame(out, f, natoms);
  return out;
}

CfrmData read_cfrm(std::string_view bytes) {
  if (bytes.size() < kCfrmHeaderBytes) throw FormatError("CFRM: file shorter than the 12-byte header");
  if (bytes.substr(0, 4) != "CFRM") throw FormatError("CFRM: bad magic");
  const auto version = get<std::uint32_t>(bytes, 4);
  if (version != kCfrmVersion) throw FormatError(fmt::format("CFRM: unsupported version {} (expected {})", version, kCfrmVersion));
  CfrmData data;
  data.natoms = get<std::uint32_t>(bytes, 8);
  const std::size_t fb = cfrm_frame_bytes(data.natoms);
  const std::size_t payload = bytes.size() - kCfrmHeaderBytes;
  if (payload % fb != 0)
    throw FormatError(fmt::format("CFRM: truncated frame ({} trailing bytes, frame size {})", payload % fb, fb));
  const std::size_t nframes = payload / fb;
  data.frames.reserve(nframes);
  std::size_t off = kCfrmHeaderBytes;
  for (std::size_t f = 0; f < nframes; ++f) {
    Frame fr;
    fr.time = get<double>(bytes, off);
    off += 8;
    Eigen::Matrix3d m;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c, off += 4) m(r, c) = get<float>(bytes, off);
    fr.box = Box(m);
    if (!fr.box.is_rectangular()) throw FormatError(fmt::format("CFRM frame {}: non-rectangular box", f));
    fr.positions.resize(data.natoms);
    for (auto& x : fr.positions)
      for (int k = 0; k < 3; ++k, off += 4) x[k] = get<float>(bytes, off);
    data.frames.push_back(std::move(fr));
  }
  return data;
}

CfrmWriter::CfrmWriter(std::size_t natoms) : natoms_(natoms) { put_header(buffer_, natoms); }

void CfrmWriter::append(const Frame& frame) {
  put_frame(buffer_, frame, natoms_);
  ++frames_;
}

} // namespace conformetrics::trajio
