#include "epct/cli/output.hpp"

#include <filesystem>
#include <fstream>
#include <system_error>
#include <unistd.h>

namespace epct::cli {

namespace fs = std::filesystem;

void write_atomic(const std::string& path, const std::string& contents) {
  const fs::path target(path);
  fs::path dir = target.parent_path();
  if (dir.empty()) dir = ".";
  if (!fs::is_directory(dir)) throw InvalidArgument("output directory does not exist: " + dir.string());
  const fs::path temp = dir / ("." + target.filename().string() + ".tmp" + std::to_string(::getpid()));
  {
    std::ofstream os(temp, std::ios::binary | std::ios::trunc);
    if (!os) throw InvalidArgument("cannot open output file: " + temp.string());
    os.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    os.flush();
    if (!os) {
      std::error_code ignored;
      fs::remove(temp, ignored);
      throw InvalidArgument("failed writing output file: " + temp.string());
    }
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(temp, ignored);
    throw InvalidArgument("cannot move output into place: " + ec.message());
  }
}

json error_document(int code, const std::string& message) {
  const char* kind = code == kExitInvalid ? "invalid_config" : "numerical_failure";
  return {{"error", {{"code", code}, {"kind", kind}, {"message", message}}}};
}

}  // namespace epct::cli
