#include <cstdio>
#include <system_error>

#include "aspatp/errors.hpp"
#include "aspatp/experiments.hpp"

namespace aspatp::cli {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string lambda_tag(double v) {
  std::string s = fmt_short(v);
  for (char& c : s) {
    if (c == '+') c = 'p';
    if (c == '-') c = 'm';
  }
  return s;
}

std::filesystem::path ensure_output_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory '" + dir + "'" + (ec ? ": " + ec.message() : ""));
  }
  return dir;
}

CsvFile::CsvFile(const ExperimentConfig& cfg, const std::string& name, std::vector<std::string>& written)
    : path_((std::filesystem::path(cfg.out) / name).string()), os_(path_, std::ios::binary) {
  if (!os_) throw IoError("cannot open '" + path_ + "' for writing");
  os_ << config_comment(cfg) << '\n';
  written.push_back(name);
}

void CsvFile::close() {
  os_.flush();
  if (!os_) throw IoError("write to '" + path_ + "' failed");
  os_.close();
}

}  // namespace aspatp::cli
