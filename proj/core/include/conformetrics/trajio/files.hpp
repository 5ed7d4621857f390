#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "conformetrics/topology.hpp"

namespace conformetrics::trajio {

enum class FrameFormat { gro, pdb, cfrm };

std::optional<FrameFormat> parse_frame_format(std::string_view name);
std::string_view to_string(FrameFormat f);
// Guess from the file extension (.gro, .pdb, .cfrm).
std::optional<FrameFormat> format_from_extension(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

// A structure file (GRO or PDB): topology plus its frames.
Trajectory load_structure(const std::filesystem::path& path);

struct TrajectorySource {
  std::filesystem::path topology_path;
  std::filesystem::path frames_path;
  FrameFormat format = FrameFormat::cfrm;
};

// Topology from `topology_path`; frames from `frames_path` in the declared format.
// Throws FormatError if the declared format does not match the file or atom counts differ.
Trajectory load_trajectory(const TrajectorySource& source);

} // namespace conformetrics::trajio
