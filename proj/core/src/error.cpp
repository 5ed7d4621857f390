#include "conformetrics/error.hpp"

namespace conformetrics {

SelectionSyntaxError::SelectionSyntaxError(const std::string& what, std::size_t position)
    : UsageError(what + " (at column " + std::to_string(position + 1) + ")"), position_(position) {}

} // namespace conformetrics
