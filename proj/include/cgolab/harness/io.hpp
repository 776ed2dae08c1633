#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "cgolab/field.hpp"

namespace cgolab {

/// Binary layout: f64 L, u64 N, u64 representation (0 physical, 1 spectral),
/// then N^2 complex doubles (re, im) row-major, all little-endian. The grid
/// is assumed centered at the origin.
void write_field_binary(const Field& f, const std::filesystem::path& path);
Field read_field_binary(const std::filesystem::path& path);

/// CSV with header x1,x2,re,im (physical samples).
void write_field_csv(const Field& f, const std::filesystem::path& path);

/// 64-bit FNV-1a of a file's bytes, as 16 hex digits.
std::string content_hash(const std::filesystem::path& path);

/// Minimal RFC-4180 writer: numbers with 17 significant digits, strings
/// quoted when they contain separators.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
  CsvWriter& cell(double v);
  CsvWriter& cell(long long v);
  CsvWriter& cell(std::size_t v) { return cell(static_cast<long long>(v)); }
  CsvWriter& cell(int v) { return cell(static_cast<long long>(v)); }
  CsvWriter& cell(const std::string& v);
  void end_row();

 private:
  std::ofstream out_;
  std::size_t columns_;
  std::size_t filled_ = 0;
};

/// Reads (tau, value) pairs from a CSV whose header names `tau` and `value`.
std::vector<std::pair<double, double>> read_rate_csv(const std::filesystem::path& path);

/// Line-oriented `key = value` manifest with sorted keys and a file table.
class Manifest {
 public:
  void set(const std::string& key, const std::string& value) { entries_[key] = value; }
  void set(const std::string& key, double value);
  void add_file(const std::filesystem::path& path);
  void write(const std::filesystem::path& path) const;

 private:
  std::map<std::string, std::string> entries_;
  std::map<std::string, std::string> files_;
};

}  // namespace cgolab
