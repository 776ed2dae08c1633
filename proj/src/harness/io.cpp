#include "cgolab/harness/io.hpp"

#include <bit>
#include <cstring>
#include <iomanip>
#include <sstream>

#include "cgolab/errors.hpp"

namespace cgolab {

namespace {

static_assert(std::endian::native == std::endian::little,
              "binary field I/O assumes a little-endian host");

template <class T>
void put(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw Error("truncated field file");
  return v;
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

}  // namespace

void write_field_binary(const Field& f, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  put<double>(out, f.grid().side_length());
  put<std::uint64_t>(out, f.grid().resolution());
  put<std::uint64_t>(out, static_cast<std::uint64_t>(f.representation()));
  out.write(reinterpret_cast<const char*>(f.data()),
            static_cast<std::streamsize>(f.size() * sizeof(cplx)));
}

Field read_field_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  const double L = get<double>(in);
  const auto N = get<std::uint64_t>(in);
  const auto rep = get<std::uint64_t>(in);
  if (rep > 1) throw Error("bad representation tag in " + path.string());
  const Grid2D g = make_grid(L, static_cast<std::size_t>(N));
  Field f(g, static_cast<Representation>(rep));
  in.read(reinterpret_cast<char*>(f.data()), static_cast<std::streamsize>(f.size() * sizeof(cplx)));
  if (!in) throw Error("truncated field file " + path.string());
  return f;
}

void write_field_csv(const Field& f, const std::filesystem::path& path) {
  const Field p = f.is_physical() ? f : f.to_physical();
  CsvWriter csv(path, {"x1", "x2", "re", "im"});
  const Grid2D& g = p.grid();
  for (std::size_t i = 0; i < g.resolution(); ++i) {
    for (std::size_t j = 0; j < g.resolution(); ++j) {
      csv.cell(g.x1(i)).cell(g.x2(j)).cell(p(i, j).real()).cell(p(i, j).imag());
      csv.end_row();
    }
  }
}

std::string content_hash(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot hash " + path.string());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof(buf));
    const auto got = in.gcount();
    for (std::streamsize k = 0; k < got; ++k) {
      h ^= static_cast<unsigned char>(buf[k]);
      h *= 0x100000001b3ULL;
    }
  }
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : out_(path), columns_(header.size()) {
  if (!out_) throw Error("cannot write " + path.string());
  for (const auto& h : header) cell(h);
  end_row();
}

CsvWriter& CsvWriter::cell(double v) {
  if (filled_++ > 0) out_ << ',';
  out_ << fmt(v);
  return *this;
}

CsvWriter& CsvWriter::cell(long long v) {
  if (filled_++ > 0) out_ << ',';
  out_ << v;
  return *this;
}

CsvWriter& CsvWriter::cell(const std::string& v) {
  if (filled_++ > 0) out_ << ',';
  if (v.find_first_of(",\"\r\n") == std::string::npos) {
    out_ << v;
  } else {
    out_ << '"';
    for (char c : v) {
      if (c == '"') out_ << '"';
      out_ << c;
    }
    out_ << '"';
  }
  return *this;
}

void CsvWriter::end_row() {
  if (filled_ != columns_) throw Error("CSV row has the wrong number of cells");
  out_ << "\r\n";
  filled_ = 0;
}

std::vector<std::pair<double, double>> read_rate_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw Error("empty CSV " + path.string());
  auto split = [](const std::string& l) {
    std::vector<std::string> out;
    std::stringstream ss(l);
    std::string item;
    while (std::getline(ss, item, ',')) {
      while (!item.empty() && (item.back() == '\r' || item.back() == ' ')) item.pop_back();
      out.push_back(item);
    }
    return out;
  };
  const auto header = split(line);
  std::size_t ct = header.size(), cv = header.size();
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (header[k] == "tau") ct = k;
    if (header[k] == "value") cv = k;
  }
  if (ct == header.size() || cv == header.size()) {
    throw Error("CSV " + path.string() + " needs 'tau' and 'value' columns");
  }
  std::vector<std::pair<double, double>> out;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto cells = split(line);
    if (cells.size() <= std::max(ct, cv)) throw Error("short CSV row in " + path.string());
    out.emplace_back(std::stod(cells[ct]), std::stod(cells[cv]));
  }
  return out;
}

void Manifest::set(const std::string& key, double value) { entries_[key] = fmt(value); }

void Manifest::add_file(const std::filesystem::path& path) {
  files_[path.filename().string()] = content_hash(path);
}

void Manifest::write(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  for (const auto& [k, v] : entries_) out << k << " = " << v << '\n';
  for (const auto& [k, v] : files_) out << "file." << k << " = fnv1a64:" << v << '\n';
}

}  // namespace cgolab
