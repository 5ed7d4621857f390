#include "conformetrics/trajio/files.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "conformetrics/error.hpp"
#include "conformetrics/trajio/cfrm.hpp"
#include "conformetrics/trajio/structure.hpp"

namespace conformetrics::trajio {

std::optional<FrameFormat> parse_frame_format(std::string_view name) {
  if (name == "gro") return FrameFormat::gro;
  if (name == "pdb") return FrameFormat::pdb;
  if (name == "cfrm") return FrameFormat::cfrm;
  return std::nullopt;
}

std::string_view to_string(FrameFormat f) {
  switch (f) {
  case FrameFormat::gro: return "gro";
  case FrameFormat::pdb: return "pdb";
  case FrameFormat::cfrm: return "cfrm";
  }
  return "?";
}

std::optional<FrameFormat> format_from_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  if (!ext.empty()) ext.erase(0, 1);
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return parse_frame_format(ext);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view bytes) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError(fmt::format("cannot write '{}'", tmp.string()));
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw UsageError(fmt::format("write failed for '{}'", tmp.string()));
  }
  std::filesystem::rename(tmp, path);
}

Trajectory load_structure(const std::filesystem::path& path) {
  const auto fmt_ = format_from_extension(path);
  const std::string text = read_file(path);
  if (fmt_ == FrameFormat::gro) return parse_gro(text);
  if (fmt_ == FrameFormat::pdb) return parse_pdb_multimodel(text);
  throw FormatError(fmt::format("'{}': structure files must be .gro or .pdb", path.string()));
}

Trajectory load_trajectory(const TrajectorySource& source) {
  Trajectory top = load_structure(source.topology_path);
  if (source.frames_path.empty()) return top;
  const std::string bytes = read_file(source.frames_path);
  Trajectory traj;
  traj.topology = top.topology;
  switch (source.format) {
  case FrameFormat::cfrm: {
    if (bytes.substr(0, 4) != "CFRM")
      throw FormatError(fmt::format("'{}' declared as cfrm but has no CFRM magic", source.frames_path.string()));
    CfrmData data = read_cfrm(bytes);
    if (data.natoms != top.topology.size())
      throw FormatError(fmt::format("'{}' has {} atoms per frame, topology has {}", source.frames_path.string(), data.natoms,
                                    top.topology.size()));
    traj.frames = std::move(data.frames);
    break;
  }
  case FrameFormat::gro: {
    if (bytes.substr(0, 4) == "CFRM") throw FormatError(fmt::format("'{}' declared as gro but is CFRM", source.frames_path.string()));
    traj.frames = parse_gro(bytes).frames;
    break;
  }
  case FrameFormat::pdb: {
    if (bytes.substr(0, 4) == "CFRM") throw FormatError(fmt::format("'{}' declared as pdb but is CFRM", source.frames_path.string()));
    traj.frames = parse_pdb_multimodel(bytes).frames;
    break;
  }
  }
  validate_trajectory(traj);
  return traj;
}

} // namespace conformetrics::trajio
