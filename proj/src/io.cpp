#include "qwalknet/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "qwalknet/common.hpp"

namespace qwalknet::io {

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error("rename to " + path.string() + " failed: " + ec.message());
}

void write_with_meta(const std::filesystem::path& path, std::string_view content, const nlohmann::json& meta) {
  write_atomic(path, content);
  nlohmann::json sidecar = meta;
  sidecar["version"] = kVersion;
  sidecar["file"] = path.filename().string();
  std::filesystem::path meta_path = path;
  meta_path += ".meta.json";
  write_atomic(meta_path, sidecar.dump(2) + "\n");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace qwalknet::io
