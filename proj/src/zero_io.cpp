#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>

#include "shankslab/errors.hpp"
#include "shankslab/zeros.hpp"

namespace shankslab {

namespace {

constexpr std::array<char, 4> kMagic = {'Z', 'T', 'B', 'L'};
constexpr unsigned char kVersion = 0x01;
constexpr std::size_t kHeaderSize = 4 + 1 + 8 + 8;
constexpr std::string_view kTmaxComment = "# t_max=";

void put_u64(std::string& out, std::uint64_t value) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((value >> (8 * i)) & 0xffu));
}

std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t value = 0;
  for (int i = 0; i < 8; ++i) value |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return value;
}

std::string format_double(double value) {
  std::array<char, 64> buffer{};
  const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return {buffer.data(), result.ptr};
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view text, double& value) {
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (begin != end && *begin == '+') ++begin;
  const auto result = std::from_chars(begin, end, value);
  return result.ec == std::errc{} && result.ptr == end && std::isfinite(value);
}

void write_binary(const ZeroTable& table, const std::filesystem::path& path) {
  std::string bytes;
  bytes.reserve(kHeaderSize + 8 * table.size());
  bytes.append(kMagic.data(), kMagic.size());
  bytes.push_back(static_cast<char>(kVersion));
  put_u64(bytes, table.size());
  put_u64(bytes, std::bit_cast<std::uint64_t>(table.t_max));
  for (const Zero& z : table.entries) put_u64(bytes, std::bit_cast<std::uint64_t>(z.gamma));

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

void write_text(const ZeroTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "# zero ordinates, one per line, ascending\n";
  out << kTmaxComment << format_double(table.t_max) << '\n';
  for (const Zero& z : table.entries) out << format_double(z.gamma) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

std::string read_all(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ifstream in(path, mode);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ZeroTable read_binary(const std::filesystem::path& path) {
  const std::string bytes = read_all(path, std::ios::binary);
  const auto* data = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::string name = path.string();
  if (bytes.size() < kHeaderSize) {
    throw IoError(name + ": truncated header, file ends at byte offset " +
                      std::to_string(bytes.size()) + " of " + std::to_string(kHeaderSize),
                  bytes.size());
  }
  if (std::memcmp(data, kMagic.data(), kMagic.size()) != 0) {
    throw IoError(name + ": bad magic at byte offset 0", 0);
  }
  if (data[4] != kVersion) {
    throw IoError(name + ": unsupported version " + std::to_string(data[4]) + " at byte offset 4",
                  4);
  }
  const std::uint64_t count = get_u64(data + 5);
  const double t_max = std::bit_cast<double>(get_u64(data + 13));
  if (count > (std::numeric_limits<std::size_t>::max() - kHeaderSize) / 8) {
    throw IoError(name + ": implausible count at byte offset 5", 5);
  }
  const std::size_t expected = kHeaderSize + 8 * static_cast<std::size_t>(count);
  if (bytes.size() < expected) {
    const std::size_t complete = (bytes.size() - kHeaderSize) / 8;
    throw IoError(name + ": truncated after " + std::to_string(complete) + " of " +
                      std::to_string(count) + " ordinates, file ends at byte offset " +
                      std::to_string(bytes.size()) + ", expected " + std::to_string(expected),
                  bytes.size());
  }
  if (bytes.size() > expected) {
    throw IoError(name + ": unexpected trailing data at byte offset " + std::to_string(expected),
                  expected);
  }

  ZeroTable table;
  table.t_max = t_max;
  table.entries.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double gamma = std::bit_cast<double>(get_u64(data + kHeaderSize + 8 * i));
    table.entries.push_back({i + 1, gamma, std::nullopt, ZeroSource::imported});
  }
  return table;
}

ZeroTable read_text(const std::filesystem::path& path) {
  const std::string text = read_all(path, std::ios::in);
  ZeroTable table;
  bool have_t_max = false;
  std::size_t line_number = 0;
  std::istringstream lines(text);
  std::string raw;
  while (std::getline(lines, raw)) {
    ++line_number;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line.starts_with(kTmaxComment)) {
        double value;
        if (!parse_double(trim(line.substr(kTmaxComment.size())), value)) {
          throw ParseError(path.string() + ":" + std::to_string(line_number) +
                               ": malformed t_max comment",
                           line_number);
        }
        table.t_max = value;
        have_t_max = true;
      }
      continue;
    }
    double gamma;
    if (!parse_double(line, gamma)) {
      throw ParseError(path.string() + ":" + std::to_string(line_number) +
                           ": not a decimal ordinate: '" + std::string(line) + "'",
                       line_number);
    }
    table.entries.push_back({table.entries.size() + 1, gamma, std::nullopt, ZeroSource::imported});
  }
  if (!have_t_max && !table.empty()) table.t_max = table.entries.back().gamma;
  return table;
}

}  // namespace

ZeroFormat parse_zero_format(const std::string& name) {
  if (name == "plain-text" || name == "text") return ZeroFormat::plain_text;
  if (name == "binary") return ZeroFormat::binary;
  throw DomainError("unknown zero-table format '" + name + "' (expected plain-text or binary)");
}

std::string to_string(ZeroFormat format) {
  return format == ZeroFormat::binary ? "binary" : "plain-text";
}

void export_zeros(const ZeroTable& table, const std::filesystem::path& path, ZeroFormat format) {
  if (format == ZeroFormat::binary) {
    write_binary(table, path);
  } else {
    write_text(table, path);
  }
}

ZeroTable import_zeros(const std::filesystem::path& path, ZeroFormat format) {
  return format == ZeroFormat::binary ? read_binary(path) : read_text(path);
}

}  // namespace shankslab
