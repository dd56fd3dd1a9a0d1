#include "msc/io.hpp"

#include "msc/error.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace msc {
namespace fs = std::filesystem;
namespace {

std::string where(const fs::path& file, std::size_t line) { return file.string() + ":" + std::to_string(line) + ": "; }

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::ifstream open_or_throw(const fs::path& file, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(file, mode);
  if (!in) throw IoError("cannot open file: " + file.string());
  return in;
}

bool parse_double(std::string_view token, double& out) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  if (token.empty()) return false;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size();
}

// Next whitespace-delimited PGM header token, skipping '#' comments.
std::string pgm_token(std::istream& in) {
  std::string tok;
  int ch;
  while ((ch = in.get()) != EOF) {
    if (ch == '#') {
      while ((ch = in.get()) != EOF && ch != '\n') {
      }
      if (!tok.empty()) break;
      continue;
    }
    if (std::isspace(ch)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(ch));
  }
  return tok;
}

int pgm_int(std::istream& in, const fs::path& file, const char* what) {
  const std::string tok = pgm_token(in);
  int value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size() || value < 0) {
    throw IoError(file.string() + ": bad PGM " + what + " '" + tok + "'");
  }
  return value;
}

}  // namespace

std::vector<ManifestEntry> read_manifest(const fs::path& dir) {
  const fs::path file = dir / kManifestName;
  if (!fs::exists(file)) throw IoError("missing manifest: " + file.string());
  std::ifstream in = open_or_throw(file);
  std::vector<ManifestEntry> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    const auto tab = s.find('\t');
    if (tab == std::string_view::npos) throw IoError(where(file, lineno) + "expected '<path>\\t<label>'");
    ManifestEntry e;
    e.path = std::string(trim(s.substr(0, tab)));
    const std::string_view label = trim(s.substr(tab + 1));
    if (e.path.empty()) throw IoError(where(file, lineno) + "empty path");
    if (label != "?") {
      int v = 0;
      auto [ptr, ec] = std::from_chars(label.data(), label.data() + label.size(), v);
      if (ec != std::errc() || ptr != label.data() + label.size() || v < 0) {
        throw IoError(where(file, lineno) + "label must be a nonnegative integer or '?', got '" + std::string(label) +
                      "'");
      }
      e.label = v;
    }
    entries.push_back(std::move(e));
  }
  if (entries.empty()) throw IoError(file.string() + ": manifest lists no items");
  const bool labelled = entries.front().label.has_value();
  for (const ManifestEntry& e : entries) {
    if (e.label.has_value() != labelled) throw IoError(file.string() + ": labels must be all present or all '?'");
  }
  return entries;
}

DataMatrix read_csv_matrix(const fs::path& file) {
  std::ifstream in = open_or_throw(file);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::vector<double> row;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      double v = 0.0;
      if (!parse_double(rest.substr(0, comma), v)) {
        throw IoError(where(file, lineno) + "cannot parse number '" + std::string(trim(rest.substr(0, comma))) + "'");
      }
      row.push_back(v);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw IoError(where(file, lineno) + "expected " + std::to_string(rows.front().size()) + " values, got " +
                    std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IoError(file.string() + ": empty matrix file");
  DataMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

DataMatrix read_pgm(const fs::path& file) {
  std::ifstream in = open_or_throw(file, std::ios::in | std::ios::binary);
  const std::string magic = pgm_token(in);
  if (magic != "P2" && magic != "P5") throw IoError(file.string() + ": not a P2/P5 PGM file");
  const int width = pgm_int(in, file, "width");
  const int height = pgm_int(in, file, "height");
  const int maxval = pgm_int(in, file, "maxval");
  if (width < 1 || height < 1) throw IoError(file.string() + ": PGM has zero size");
  if (maxval < 1 || maxval > 255) throw IoError(file.string() + ": only 8-bit PGM (maxval <= 255) is supported");
  DataMatrix m(height, width);
  if (magic == "P5") {
    // pgm_token consumed exactly one whitespace byte after maxval.
    std::vector<unsigned char> buf(static_cast<std::size_t>(width) * height);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() != static_cast<std::streamsize>(buf.size())) throw IoError(file.string() + ": truncated PGM data");
    for (int r = 0; r < height; ++r)
      for (int c = 0; c < width; ++c) m(r, c) = buf[static_cast<std::size_t>(r) * width + c];
  } else {
    for (int r = 0; r < height; ++r) {
      for (int c = 0; c < width; ++c) {
        const int v = pgm_int(in, file, "pixel");
        if (v > maxval) throw IoError(file.string() + ": pixel exceeds maxval");
        m(r, c) = v;
      }
    }
  }
  return m;
}

DataMatrix read_matrix_file(const fs::path& file) {
  std::ifstream in = open_or_throw(file, std::ios::in | std::ios::binary);
  char head[2] = {0, 0};
  in.read(head, 2);
  in.close();
  if (head[0] == 'P' && (head[1] == '2' || head[1] == '5')) return read_pgm(file);
  return read_csv_matrix(file);
}

Dataset load_dataset(const fs::path& dir) {
  const std::vector<ManifestEntry> entries = read_manifest(dir);
  Dataset d;
  d.items.reserve(entries.size());
  LabelVector labels;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const fs::path file = dir / entries[i].path;
    if (!fs::exists(file)) throw IoError("manifest entry " + std::to_string(i) + " refers to missing file: " + file.string());
    DataMatrix m = read_matrix_file(file);
    if (!d.items.empty() && (m.rows() != d.items.front().rows() || m.cols() != d.items.front().cols())) {
      throw IoError(file.string() + ": shape " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                    " differs from " + std::to_string(d.items.front().rows()) + "x" +
                    std::to_string(d.items.front().cols()));
    }
    d.items.push_back(std::move(m));
    if (entries[i].label) labels.push_back(*entries[i].label);
  }
  if (entries.front().label) d.labels = std::move(labels);
  return d;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw Error("cannot format number");
  return std::string(buf, ptr);
}

void write_csv_matrix(const fs::path& file, const Eigen::MatrixXd& m) {
  std::ofstream out(file, std::ios::out | std::ios::trunc);
  if (!out) throw IoError("cannot write file: " + file.string());
  std::string line;
  for (Index i = 0; i < m.rows(); ++i) {
    line.clear();
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) line.push_back(',');
      line += format_double(m(i, j));
    }
    line.push_back('\n');
    out << line;
  }
  if (!out) throw IoError("write failed: " + file.string());
}

std::vector<std::string> write_dataset(const fs::path& dir, const Dataset& d) {
  fs::create_directories(dir);
  std::vector<std::string> names;
  std::ofstream manifest(dir / kManifestName, std::ios::out | std::ios::trunc);
  if (!manifest) throw IoError("cannot write manifest in " + dir.string());
  for (Index i = 0; i < d.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "item_%05lld.csv", static_cast<long long>(i));
    write_csv_matrix(dir / name, d.items[i]);
    manifest << name << '\t' << (d.labels ? std::to_string((*d.labels)[i]) : std::string("?")) << '\n';
    names.emplace_back(name);
  }
  if (!manifest) throw IoError("write failed: " + (dir / kManifestName).string());
  return names;
}

LabelVector read_labels(const fs::path& file) {
  std::ifstream in = open_or_throw(file);
  LabelVector labels;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view s = trim(line);
    if (s.empty()) continue;
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v < 0) {
      throw IoError(where(file, lineno) + "expected a nonnegative cluster id, got '" + std::string(s) + "'");
    }
    labels.push_back(v);
  }
  return labels;
}

void write_labels(const fs::path& file, const LabelVector& labels) {
  std::ofstream out(file, std::ios::out | std::ios::trunc);
  if (!out) throw IoError("cannot write file: " + file.string());
  for (int l : labels) out << l << '\n';
  if (!out) throw IoError("write failed: " + file.string());
}

}  // namespace msc
