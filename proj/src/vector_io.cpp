#include "grinch/vector_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

namespace grinch {
namespace {

constexpr std::array<char, 4> kMagic{'G', 'R', 'V', 'C'};
constexpr std::uint32_t kNoLabel = 0xFFFFFFFFu;

template <class T>
T read_le(std::istream& in, const char* what) {
  std::array<unsigned char, sizeof(T)> bytes{};
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) {
    throw InputError(std::string("truncated GRVC file while reading ") + what);
  }
  std::uint32_t raw = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) raw |= static_cast<std::uint32_t>(bytes[i]) << (8 * i);
  return std::bit_cast<T>(raw);
}

template <class T>
void write_le(std::ostream& out, T value) {
  const auto raw = std::bit_cast<std::uint32_t>(value);
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<char>((raw >> (8 * i)) & 0xFFu);
  out.write(bytes.data(), bytes.size());
}

Dataset read_grvc(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size())) throw InputError("empty or truncated GRVC file");
  if (magic != kMagic) throw InputError("bad GRVC magic");
  const auto n = read_le<std::uint32_t>(in, "header");
  const auto d = read_le<std::uint32_t>(in, "header");
  if (n == 0 || d == 0) throw InputError("GRVC header declares no points or zero dimension");
  Dataset data;
  data.dim = d;
  data.points.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    auto& p = data.points[i];
    p.id = i;
    p.vector.resize(d);
    for (std::uint32_t j = 0; j < d; ++j) p.vector[j] = read_le<float>(in, "vectors");
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto label = read_le<std::uint32_t>(in, "labels");
    if (label != kNoLabel) data.points[i].label = label;
  }
  if (in.peek() != std::char_traits<char>::eof()) throw InputError("trailing bytes after GRVC labels");
  return data;
}

template <class T>
T parse_field(std::string_view field, std::size_t line, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw InputError("line " + std::to_string(line) + ": bad " + what + " '" + std::string(field) + "'");
  }
  return value;
}

Dataset read_tsv(std::istream& in) {
  Dataset data;
  std::string row;
  std::size_t line = 0;
  while (std::getline(in, row)) {
    ++line;
    if (!row.empty() && row.back() == '\r') row.pop_back();
    if (row.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest(row);
    for (;;) {
      const auto tab = rest.find('\t');
      fields.push_back(rest.substr(0, tab));
      if (tab == std::string_view::npos) break;
      rest.remove_prefix(tab + 1);
    }
    if (fields.size() < 3) throw InputError("line " + std::to_string(line) + ": expected id, label and values");
    const std::size_t dim = fields.size() - 2;
    if (data.points.empty()) {
      data.dim = dim;
    } else if (dim != data.dim) {
      throw InputError("line " + std::to_string(line) + ": ragged row with " + std::to_string(dim) +
                       " values, expected " + std::to_string(data.dim));
    }
    DataPoint p;
    p.id = parse_field<PointId>(fields[0], line, "id");
    if (fields[1] != "-" && !fields[1].empty()) p.label = parse_field<Label>(fields[1], line, "label");
    p.vector.reserve(dim);
    for (std::size_t j = 2; j < fields.size(); ++j) p.vector.push_back(parse_field<double>(fields[j], line, "value"));
    data.points.push_back(std::move(p));
  }
  if (data.points.empty()) throw InputError("no rows in TSV input");
  return data;
}

void write_tsv(std::ostream& out, const Dataset& data) {
  std::array<char, 64> buf{};
  for (const auto& p : data.points) {
    out << p.id << '\t';
    if (p.label) out << *p.label; else out << '-';
    for (const double x : p.vector) {
      const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
      out << '\t';
      out.write(buf.data(), res.ptr - buf.data());
    }
    out << '\n';
  }
}

void write_grvc(std::ostream& out, const Dataset& data) {
  const auto n = data.points.size();
  if (n > std::numeric_limits<std::uint32_t>::max() || data.dim > std::numeric_limits<std::uint32_t>::max()) {
    throw InputError("dataset too large for GRVC");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (data.points[i].id != static_cast<PointId>(i)) throw InputError("GRVC needs point ids 0..n-1 in order");
    if (data.points[i].vector.size() != data.dim) throw InputError("point dimension differs from dataset dimension");
  }
  out.write(kMagic.data(), kMagic.size());
  write_le(out, static_cast<std::uint32_t>(n));
  write_le(out, static_cast<std::uint32_t>(data.dim));
  for (const auto& p : data.points) {
    for (const double x : p.vector) write_le(out, static_cast<float>(x));
  }
  for (const auto& p : data.points) {
    if (p.label && (*p.label < 0 || *p.label >= static_cast<Label>(kNoLabel))) {
      throw InputError("label out of GRVC range");
    }
    write_le(out, p.label ? static_cast<std::uint32_t>(*p.label) : kNoLabel);
  }
}

}  // namespace

VectorFormat parse_format(std::string_view name) {
  if (name == "tsv") return VectorFormat::tsv;
  if (name == "grvc" || name == "dense-binary") return VectorFormat::grvc;
  throw InputError("unknown vector format: " + std::string(name));
}

Dataset read_vectors(std::istream& in, VectorFormat format) {
  return format == VectorFormat::tsv ? read_tsv(in) : read_grvc(in);
}

Dataset load_vectors(const std::string& path, VectorFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  return read_vectors(in, format);
}

void write_vectors(std::ostream& out, const Dataset& data, VectorFormat format) {
  if (format == VectorFormat::tsv) write_tsv(out, data); else write_grvc(out, data);
}

void save_vectors(const std::string& path, const Dataset& data, VectorFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  write_vectors(out, data, format);
  if (!out.flush()) throw InputError("failed writing " + path);
}

}  // namespace grinch
