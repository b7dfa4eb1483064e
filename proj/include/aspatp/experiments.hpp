#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace aspatp::cli {

inline constexpr const char* kVersion = "1.0.0";

// Flags as given on the command line. Unset optionals take per-subcommand
// defaults in resolve().
struct ExperimentConfig {
  std::string subcommand;
  std::optional<std::string> problem;
  std::optional<std::size_t> size;
  std::vector<double> lambdas;
  std::optional<double> delta;
  std::uint64_t seed = 1;
  std::optional<std::size_t> m_max;
  std::optional<std::string> reg;
  std::string out = "out";
  std::vector<std::size_t> m_list;  // filters only
  std::size_t q = 6;                // deblur only
  double sigma = 1.5;               // deblur only
  std::optional<std::string> image; // deblur only, PGM input
};

// Fills defaults and validates every value before any compute. Throws
// aspatp::InvalidArgument with a one-line reason.
ExperimentConfig resolve(const ExperimentConfig& raw);

// "# aspatp <version> key=value ..." describing the resolved config.
std::string config_comment(const ExperimentConfig& cfg);

// Each returns the files written, relative to cfg.out.
std::vector<std::string> run_asp_sweep(const ExperimentConfig& cfg);
std::vector<std::string> run_atp_experiment(const ExperimentConfig& cfg);
std::vector<std::string> run_cost_comparison(const ExperimentConfig& cfg);
std::vector<std::string> run_lambda_accuracy(const ExperimentConfig& cfg);
std::vector<std::string> run_filters(const ExperimentConfig& cfg);
std::vector<std::string> run_deblur(const ExperimentConfig& cfg);
std::vector<std::string> run_gallery(const ExperimentConfig& cfg);

// Resolves cfg and dispatches on cfg.subcommand.
std::vector<std::string> run(const ExperimentConfig& cfg);

// --- CSV plumbing ---
std::string fmt(double v);         // %.17g
std::string fmt_short(double v);   // %.3g, for file names
std::string lambda_tag(double v);  // file-name safe form of lambda

// Opens dir/name, writes the config comment line, and records the name.
class CsvFile {
 public:
  CsvFile(const ExperimentConfig& cfg, const std::string& name, std::vector<std::string>& written);
  std::ofstream& stream() { return os_; }
  template <class T>
  CsvFile& operator<<(const T& v) {
    os_ << v;
    return *this;
  }
  void close();

 private:
  std::string path_;
  std::ofstream os_;
};

std::filesystem::path ensure_output_dir(const std::string& dir);

}  // namespace aspatp::cli
