#include "vpart/instance_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

namespace vpart {
namespace {

constexpr std::string_view kMagic = "vpart-instance";
constexpr int kVersion = 1;

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' ||
                                 line[pos] == '\r')) {
      ++pos;
    }
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t' &&
           line[end] != '\r') {
      ++end;
    }
    out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-blank, non-comment line split into tokens; nullopt at EOF.
  std::optional<std::vector<std::string_view>> next() {
    while (std::getline(in_, buffer_)) {
      ++line_;
      auto tokens = split(buffer_);
      if (tokens.empty() || tokens.front().starts_with('#')) continue;
      return tokens;
    }
    ++line_;
    return std::nullopt;
  }

  std::vector<std::string_view> require(const std::string& context) {
    auto tokens = next();
    if (!tokens) {
      throw ParseError(line_, context, "unexpected end of file");
    }
    return *tokens;
  }

  int line() const { return line_; }

 private:
  std::istream& in_;
  std::string buffer_;
  int line_ = 0;
};

double parse_real(std::string_view token, int line, const std::string& field) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && token.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line, field,
                     "expected a real number, got '" + std::string(token) + "'");
  }
  return value;
}

long parse_int(std::string_view token, int line, const std::string& field) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, field,
                     "expected an integer, got '" + std::string(token) + "'");
  }
  return value;
}

void expect_arity(const std::vector<std::string_view>& tokens, std::size_t n,
                  int line, const std::string& field) {
  if (tokens.size() != n) {
    throw ParseError(line, field,
                     "expected " + std::to_string(n) + " fields, got " +
                         std::to_string(tokens.size()));
  }
}

void expect_section(LineReader& reader, std::string_view name) {
  const std::string tag = "[" + std::string(name) + "]";
  auto tokens = reader.require(std::string(name));
  if (tokens.size() != 1 || tokens[0] != tag) {
    throw ParseError(reader.line(), std::string(name),
                     "expected section header " + tag);
  }
}

}  // namespace

ParseError::ParseError(int line, std::string field, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", field '" + field +
                         "': " + message),
      line_(line),
      field_(std::move(field)) {}

std::string format_real(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::general, 17);
  (void)ec;
  return std::string(buf, ptr);
}

void write_instance(std::ostream& out, const TransportInstance& inst) {
  const int n_real = inst.num_real_supplies();
  out << kMagic << ' ' << kVersion << '\n';
  out << "n_demand " << inst.num_demands() << '\n';
  out << "n_supply " << n_real << '\n';
  out << "n_access " << inst.num_arcs() << '\n';
  out << "d_max " << format_real(inst.d_max()) << '\n';
  out << "dummy_cost " << format_real(inst.dummy_cost()) << '\n';
  out << "[demands]\n";
  for (const DemandLocation& d : inst.demands()) {
    out << d.id << ' ' << format_real(d.position.x) << ' '
        << format_real(d.position.y) << ' ' << format_real(d.demand) << '\n';
  }
  out << "[supplies]\n";
  for (const SupplyLocation& s : inst.supplies()) {
    out << s.id << ' ' << format_real(s.position.x) << ' '
        << format_real(s.position.y) << ' ' << format_real(s.capacity) << ' '
        << (s.is_dummy ? "dummy" : "real") << '\n';
  }
  out << "[access]\n";
  for (int k = 0; k < inst.num_arcs(); ++k) {
    const AccessArc& a = inst.arc(k);
    out << inst.arc_demand(k) << ' ' << a.supplier << ' '
        << format_real(a.cost) << '\n';
  }
}

TransportInstance read_instance(std::istream& in) {
  LineReader reader(in);

  auto magic = reader.require("format");
  if (magic.size() != 2 || magic[0] != kMagic) {
    throw ParseError(reader.line(), "format",
                     "expected '" + std::string(kMagic) + " <version>'");
  }
  if (parse_int(magic[1], reader.line(), "version") != kVersion) {
    throw ParseError(reader.line(), "version",
                     "unsupported version " + std::string(magic[1]));
  }

  static const std::vector<std::string> kFields = {
      "n_demand", "n_supply", "n_access", "d_max", "dummy_cost"};
  struct HeaderValue {
    std::string text;
    int line = 0;
  };
  std::map<std::string, HeaderValue> header;
  while (header.size() < kFields.size()) {
    auto tokens = reader.require("header");
    const std::string key(tokens[0]);
    bool known = false;
    for (const auto& f : kFields) known = known || f == key;
    if (!known) {
      throw ParseError(reader.line(), key, "unknown field");
    }
    if (header.count(key)) {
      throw ParseError(reader.line(), key, "duplicate field");
    }
    expect_arity(tokens, 2, reader.line(), key);
    header[key] = {std::string(tokens[1]), reader.line()};
  }
  auto header_int = [&header](const std::string& key) {
    const HeaderValue& v = header[key];
    const long value = parse_int(v.text, v.line, key);
    if (value < 0) throw ParseError(v.line, key, "negative count");
    return value;
  };
  auto header_real = [&header](const std::string& key) {
    const HeaderValue& v = header[key];
    return parse_real(v.text, v.line, key);
  };
  const long n_demand = header_int("n_demand");
  const long n_supply = header_int("n_supply");
  const long n_access = header_int("n_access");
  const double d_max = header_real("d_max");
  const double dummy_cost = header_real("dummy_cost");

  expect_section(reader, "demands");
  std::vector<DemandLocation> demands;
  demands.reserve(n_demand);
  for (long i = 0; i < n_demand; ++i) {
    auto t = reader.require("demands");
    const int line = reader.line();
    expect_arity(t, 4, line, "demands");
    DemandLocation d;
    d.id = static_cast<int>(parse_int(t[0], line, "id"));
    if (d.id != i) {
      throw ParseError(line, "id", "expected demand id " + std::to_string(i));
    }
    d.position = {parse_real(t[1], line, "x"), parse_real(t[2], line, "y")};
    d.demand = parse_real(t[3], line, "demand");
    demands.push_back(d);
  }

  expect_section(reader, "supplies");
  std::vector<SupplyLocation> supplies;
  supplies.reserve(n_supply + 1);
  for (long j = 0; j < n_supply + 1; ++j) {
    auto t = reader.require("supplies");
    const int line = reader.line();
    expect_arity(t, 5, line, "supplies");
    SupplyLocation s;
    s.id = static_cast<int>(parse_int(t[0], line, "id"));
    if (s.id != j) {
      throw ParseError(line, "id", "expected supplier id " + std::to_string(j));
    }
    s.position = {parse_real(t[1], line, "x"), parse_real(t[2], line, "y")};
    s.capacity = parse_real(t[3], line, "capacity");
    if (t[4] == "dummy") {
      s.is_dummy = true;
    } else if (t[4] != "real") {
      throw ParseError(line, "kind",
                       "expected 'real' or 'dummy', got '" + std::string(t[4]) + "'");
    }
    supplies.push_back(s);
  }

  expect_section(reader, "access");
  std::vector<std::vector<AccessArc>> access(n_demand);
  for (long k = 0; k < n_access; ++k) {
    auto t = reader.require("access");
    const int line = reader.line();
    expect_arity(t, 3, line, "access");
    const long i = parse_int(t[0], line, "demand");
    const long j = parse_int(t[1], line, "supplier");
    if (i < 0 || i >= n_demand) {
      throw ParseError(line, "demand", "demand id out of range");
    }
    if (j < 0 || j > n_supply) {
      throw ParseError(line, "supplier", "supplier id out of range");
    }
    access[i].push_back({static_cast<int>(j), parse_real(t[2], line, "cost")});
  }

  if (auto extra = reader.next()) {
    throw ParseError(reader.line(), std::string((*extra)[0]),
                     "unexpected content after [access] section");
  }
  return TransportInstance(std::move(demands), std::move(supplies), access,
                           d_max, dummy_cost);
}

void save_instance(const TransportInstance& inst,
                   const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_instance(out, inst);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

TransportInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_instance(in);
}

}  // namespace vpart
