#include "friclab/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "friclab/errors.hpp"

namespace friclab {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write file: " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) body_ += ',';
    body_ += header[i];
  }
  body_ += '\n';
}

void CsvWriter::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_)
    throw ConfigError("CSV row arity mismatch (" + std::to_string(cells.size()) + " vs " +
                      std::to_string(columns_) + ")");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) body_ += ',';
    body_ += cells[i];
  }
  body_ += '\n';
}

void CsvWriter::add_row(const std::vector<double>& cells) {
  std::vector<std::string> out(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) out[i] = format_double(cells[i]);
  add_row(out);
}

void CsvWriter::write(const std::string& path) const { write_file(path, body_); }

SvgChart::SvgChart(std::string title, std::string x_label, std::string y_label, bool log_x,
                   bool log_y)
    : title_(std::move(title)),
      x_label_(std::move(x_label)),
      y_label_(std::move(y_label)),
      log_x_(log_x),
      log_y_(log_y) {}

void SvgChart::add_series(const std::string& name, const std::vector<double>& x,
                          const std::vector<double>& y) {
  if (x.size() != y.size()) throw ConfigError("SVG series length mismatch");
  series_.push_back({name, x, y});
}

std::string SvgChart::render() const {
  const double W = 720, H = 480, ml = 70, mr = 160, mt = 40, mb = 55;
  auto tx = [&](double v) { return log_x_ ? std::log10(v) : v; };
  auto ty = [&](double v) { return log_y_ ? std::log10(v) : v; };

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : series_)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if ((log_x_ && s.x[i] <= 0.0) || (log_y_ && s.y[i] <= 0.0)) continue;
      xmin = std::min(xmin, tx(s.x[i]));
      xmax = std::max(xmax, tx(s.x[i]));
      ymin = std::min(ymin, ty(s.y[i]));
      ymax = std::max(ymax, ty(s.y[i]));
    }
  if (xmin > xmax) {
    xmin = 0;
    xmax = 1;
  }
  if (ymin > ymax) {
    ymin = 0;
    ymax = 1;
  }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;

  auto px = [&](double v) { return ml + (tx(v) - xmin) / (xmax - xmin) * (W - ml - mr); };
  auto py = [&](double v) { return H - mb - (ty(v) - ymin) / (ymax - ymin) * (H - mt - mb); };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                 "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
      << title_ << "</text>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
      << H - mb << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
      << "\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 14
      << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label_
      << (log_x_ ? " (log10)" : "") << "</text>\n";
  svg << "<text x=\"18\" y=\"" << (mt + H - mb) / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
      << (mt + H - mb) / 2 << ")\">" << y_label_ << (log_y_ ? " (log10)" : "")
      << "</text>\n";

  // Axis extremes as tick labels.
  char tick[64];
  std::snprintf(tick, sizeof tick, "%.3g", log_x_ ? std::pow(10.0, xmin) : xmin);
  svg << "<text x=\"" << ml << "\" y=\"" << H - mb + 16
      << "\" font-size=\"11\" text-anchor=\"middle\">" << tick << "</text>\n";
  std::snprintf(tick, sizeof tick, "%.3g", log_x_ ? std::pow(10.0, xmax) : xmax);
  svg << "<text x=\"" << W - mr << "\" y=\"" << H - mb + 16
      << "\" font-size=\"11\" text-anchor=\"middle\">" << tick << "</text>\n";
  std::snprintf(tick, sizeof tick, "%.3g", log_y_ ? std::pow(10.0, ymin) : ymin);
  svg << "<text x=\"" << ml - 6 << "\" y=\"" << H - mb
      << "\" font-size=\"11\" text-anchor=\"end\">" << tick << "</text>\n";
  std::snprintf(tick, sizeof tick, "%.3g", log_y_ ? std::pow(10.0, ymax) : ymax);
  svg << "<text x=\"" << ml - 6 << "\" y=\"" << mt + 4
      << "\" font-size=\"11\" text-anchor=\"end\">" << tick << "</text>\n";

  for (std::size_t s = 0; s < series_.size(); ++s) {
    const auto& ser = series_[s];
    svg << "<polyline fill=\"none\" stroke=\"" << colors[s % 8]
        << "\" stroke-width=\"1.6\" points=\"";
    for (std::size_t i = 0; i < ser.x.size(); ++i) {
      if ((log_x_ && ser.x[i] <= 0.0) || (log_y_ && ser.y[i] <= 0.0)) continue;
      svg << px(ser.x[i]) << ',' << py(ser.y[i]) << ' ';
    }
    svg << "\"/>\n";
    const double ly = mt + 18.0 * (s + 1);
    svg << "<line x1=\"" << W - mr + 10 << "\" y1=\"" << ly << "\" x2=\"" << W - mr + 34
        << "\" y2=\"" << ly << "\" stroke=\"" << colors[s % 8] << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << W - mr + 40 << "\" y=\"" << ly + 4 << "\" font-size=\"12\">"
        << ser.name << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void SvgChart::write(const std::string& path) const { write_file(path, render()); }

namespace {
std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}
}  // namespace

Config Config::parse_text(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("malformed section header at line " + std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected key=value at line " + std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key at line " + std::to_string(lineno));
    if (section.empty()) throw ConfigError("key outside any [section] at line " +
                                           std::to_string(lineno));
    cfg.values_[section + "." + key] = value;
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) { return parse_text(read_file(path)); }

void Config::apply_override(const std::string& dotted_assignment) {
  const std::size_t eq = dotted_assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("--set expects section.key=value, got '" + dotted_assignment + "'");
  const std::string key = trim(dotted_assignment.substr(0, eq));
  if (key.find('.') == std::string::npos)
    throw ConfigError("--set key must be dotted (section.key): '" + key + "'");
  values_[key] = trim(dotted_assignment.substr(eq + 1));
}

void Config::enforce_schema(const std::vector<std::string>& allowed_keys) const {
  std::string offenders;
  for (const auto& [k, v] : values_) {
    if (std::find(allowed_keys.begin(), allowed_keys.end(), k) == allowed_keys.end()) {
      if (!offenders.empty()) offenders += ", ";
      offenders += k;
    }
  }
  if (!offenders.empty()) throw ConfigError("unknown configuration keys: " + offenders);
}

bool Config::has(const std::string& dotted) const { return values_.count(dotted) > 0; }

std::string Config::get_string(const std::string& dotted, const std::string& fallback) const {
  auto it = values_.find(dotted);
  return it == values_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& dotted, double fallback) const {
  auto it = values_.find(dotted);
  if (it == values_.end()) return fallback;
  try {
    std::size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key " + dotted + " is not a number: '" + it->second + "'");
  }
}

int Config::get_int(const std::string& dotted, int fallback) const {
  const double v = get_double(dotted, static_cast<double>(fallback));
  const int i = static_cast<int>(std::llround(v));
  if (v != static_cast<double>(i))
    throw ConfigError("key " + dotted + " is not an integer");
  return i;
}

bool Config::get_bool(const std::string& dotted, bool fallback) const {
  auto it = values_.find(dotted);
  if (it == values_.end()) return fallback;
  if (it->second == "true" || it->second == "1") return true;
  if (it->second == "false" || it->second == "0") return false;
  throw ConfigError("key " + dotted + " is not a boolean: '" + it->second + "'");
}

std::vector<double> Config::get_double_list(const std::string& dotted,
                                            const std::vector<double>& fallback) const {
  auto it = values_.find(dotted);
  if (it == values_.end()) return fallback;
  std::vector<double> out;
  std::string item;
  std::istringstream ss(it->second);
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("key " + dotted + " has a non-numeric list entry: '" + item + "'");
    }
  }
  return out;
}

void Config::set(const std::string& dotted, const std::string& value) {
  values_[dotted] = value;
}

std::string Config::render() const {
  std::string out, current;
  for (const auto& [k, v] : values_) {
    const std::size_t dot = k.find('.');
    const std::string section = k.substr(0, dot);
    if (section != current) {
      if (!out.empty()) out += '\n';
      out += "[" + section + "]\n";
      current = section;
    }
    out += k.substr(dot + 1) + " = " + v + "\n";
  }
  return out;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

RunManifest::RunManifest(std::string tool_version, std::string resolved_config)
    : version_(std::move(tool_version)), config_(std::move(resolved_config)) {}

void RunManifest::record_file(const std::string& path) {
  const std::string bytes = read_file(path);
  files_.push_back({path, bytes.size(), fnv1a64(bytes)});
}

void RunManifest::write(const std::string& path) const {
  std::ostringstream out;
  out << "tool_version = " << version_ << "\n";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3f", wall_seconds_);
  out << "wall_seconds = " << buf << "\n\n";
  out << "# emitted files (path, bytes, fnv1a64)\n";
  for (const auto& f : files_) {
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(f.digest));
    out << f.path << "  " << f.bytes << "  " << buf << "\n";
  }
  out << "\n# resolved configuration\n" << config_;
  write_file(path, out.str());
}

}  // namespace friclab
