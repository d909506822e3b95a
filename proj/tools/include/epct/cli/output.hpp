// Output plumbing: atomic file writes and machine-readable errors.
#pragma once

#include <string>

#include "epct/io.hpp"

namespace epct::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNumerical = 3;

/// Writes `contents` to a sibling temp file, then renames it over `path`.
/// Throws InvalidArgument if the directory is not writable.
void write_atomic(const std::string& path, const std::string& contents);

/// {"error": {"code": .., "kind": .., "message": ..}}
json error_document(int code, const std::string& message);

}  // namespace epct::cli
