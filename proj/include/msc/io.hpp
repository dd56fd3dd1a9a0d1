#pragma once

#include "msc/types.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace msc {

inline constexpr const char* kManifestName = "manifest.tsv";

// One manifest line: "<relative path>\t<label or ?>".
struct ManifestEntry {
  std::string path;
  std::optional<int> label;
};

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& dir);

// Row-per-line, comma-separated decimal numbers.
DataMatrix read_csv_matrix(const std::filesystem::path& file);
// 8-bit grayscale PGM, ASCII (P2) or binary (P5); height x width, values in [0, 255].
DataMatrix read_pgm(const std::filesystem::path& file);
// Dispatches on the first two bytes ("P2"/"P5") and falls back to CSV.
DataMatrix read_matrix_file(const std::filesystem::path& file);

// Items in manifest order; throws IoError on missing files, parse errors
// (with file and line) and shape mismatches.
Dataset load_dataset(const std::filesystem::path& dir);

// Shortest representation that parses back to the same double.
std::string format_double(double v);

void write_csv_matrix(const std::filesystem::path& file, const Eigen::MatrixXd& m);
// Writes item_NNNNN.csv files plus the manifest. Returns the item file names.
std::vector<std::string> write_dataset(const std::filesystem::path& dir, const Dataset& d);

LabelVector read_labels(const std::filesystem::path& file);
void write_labels(const std::filesystem::path& file, const LabelVector& labels);

}  // namespace msc
