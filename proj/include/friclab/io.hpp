#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace friclab {

/// Stable shortest-roundtrip formatting ("%.17g") so identical runs produce
/// bit-identical CSV bytes.
std::string format_double(double v);

/// Minimal deterministic CSV writer: header once, then rows of formatted
/// cells. Files end with a trailing newline.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void add_row(const std::vector<std::string>& cells);
  void add_row(const std::vector<double>& cells);
  std::string str() const { return body_; }
  void write(const std::string& path) const;

 private:
  std::size_t columns_;
  std::string body_;
};

/// Self-contained SVG line chart (no external plotting dependency). Axes may
/// be logarithmic; each series becomes one polyline with a legend entry.
class SvgChart {
 public:
  SvgChart(std::string title, std::string x_label, std::string y_label,
           bool log_x = false, bool log_y = false);
  void add_series(const std::string& name, const std::vector<double>& x,
                  const std::vector<double>& y);
  std::string render() const;
  void write(const std::string& path) const;

 private:
  std::string title_, x_label_, y_label_;
  bool log_x_, log_y_;
  struct Series {
    std::string name;
    std::vector<double> x, y;
  };
  std::vector<Series> series_;
};

/// Flat sectioned key=value configuration. Section headers are [name]; keys
/// are addressed as "section.key". Unknown keys against a schema are a hard
/// error (no silent typos).
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_text(const std::string& text);

  void apply_override(const std::string& dotted_assignment);  // "sec.key=value"
  /// Validates every present key against the allowed set; throws ConfigError
  /// listing the offenders.
  void enforce_schema(const std::vector<std::string>& allowed_keys) const;

  bool has(const std::string& dotted) const;
  std::string get_string(const std::string& dotted, const std::string& fallback) const;
  double get_double(const std::string& dotted, double fallback) const;
  int get_int(const std::string& dotted, int fallback) const;
  bool get_bool(const std::string& dotted, bool fallback) const;
  std::vector<double> get_double_list(const std::string& dotted,
                                      const std::vector<double>& fallback) const;

  void set(const std::string& dotted, const std::string& value);
  /// Deterministic text rendering of the fully resolved configuration.
  std::string render() const;

 private:
  std::map<std::string, std::string> values_;  // dotted key -> raw text
};

/// FNV-1a 64-bit digest of a byte string (manifest checksums).
std::uint64_t fnv1a64(const std::string& bytes);

/// Run manifest: resolved config, tool version, wall time and the emitted
/// files with checksums. Written next to the outputs as plain text.
class RunManifest {
 public:
  RunManifest(std::string tool_version, std::string resolved_config);
  /// Registers an already-written file: records its size and FNV-1a digest.
  void record_file(const std::string& path);
  void set_wall_seconds(double s) { wall_seconds_ = s; }
  void write(const std::string& path) const;

 private:
  std::string version_, config_;
  double wall_seconds_ = 0.0;
  struct Entry {
    std::string path;
    std::size_t bytes;
    std::uint64_t digest;
  };
  std::vector<Entry> files_;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

}  // namespace friclab
