#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "conformetrics/topology.hpp"

namespace conformetrics::trajio {

// CFRM binary frame format, little-endian, no padding:
//
//   "CFRM" | u32 version (=1) | u32 natoms
//   per frame: f64 time_ps | 9 x f32 box (row-major, nm) | natoms x 3 x f32 positions (nm)
inline constexpr std::uint32_t kCfrmVersion = 1;
inline constexpr std::size_t kCfrmHeaderBytes = 12;

inline constexpr std::size_t cfrm_frame_bytes(std::size_t natoms) { return 8 + 36 + 12 * natoms; }

std::string write_cfrm(std::span<const Frame> frames, std::size_t natoms);

struct CfrmData {
  std::uint32_t natoms = 0;
  std::vector<Frame> frames;
};

// Throws FormatError on bad magic, version mismatch or a truncated frame.
CfrmData read_cfrm(std::string_view bytes);

// Incremental writer used by the simulation driver.
class CfrmWriter {
public:
  explicit CfrmWriter(std::size_t natoms);
  void append(const Frame& frame);
  const std::string& bytes() const { return buffer_; }
  std::size_t frame_count() const { return frames_; }

private:
  std::size_t natoms_;
  std::size_t frames_ = 0;
  std::string buffer_;
};

} // namespace conformetrics::trajio
