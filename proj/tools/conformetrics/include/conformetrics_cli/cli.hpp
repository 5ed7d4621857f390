#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace conformetrics::cli {

inline constexpr const char* kToolVersion = "0.1.0";

// Exit codes: 0 success, 2 usage or flag error, 3 input-format error, 4 numeric failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace conformetrics::cli
