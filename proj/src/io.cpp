#include "qgs/io.hpp"

#include "qgs/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace qgs {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool to_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  // from_chars rejects a leading '+'.
  if (s.front() == '+') s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

double require_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  if (!to_double(s, v))
    throw InputError("cannot parse '" + std::string(trim(s)) + "' as a number in " +
                     std::string(what));
  return v;
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void CsvTable::add_meta(std::string key, std::string value) {
  metadata.emplace_back(std::move(key), std::move(value));
}

void CsvTable::add_row(std::vector<std::string> row) {
  if (!header.empty() && row.size() != header.size())
    throw InputError("row has " + std::to_string(row.size()) + " cells, header has " +
                     std::to_string(header.size()));
  rows.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::string out;
  for (const auto& [k, v] : metadata) out += "# " + k + "=" + v + "\n";
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw InputError("failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<double> parse_range(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw InputError("range must look like a:b:step, got '" + std::string(text) + "'");
  const double a = require_double(parts[0], "range");
  const double b = require_double(parts[1], "range");
  const double step = require_double(parts[2], "range");
  if (!(step > 0.0) || !(b >= a)) throw InputError("range needs b >= a and step > 0");
  const double span = (b - a) / step;
  if (span > 1e7) throw InputError("range has too many points");
  const auto n = static_cast<long>(std::floor(span + 1e-9));
  std::vector<double> out;
  for (long i = 0; i <= n; ++i) out.push_back(a + static_cast<double>(i) * step);
  return out;
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  for (const auto part : split(text, ',')) out.push_back(require_double(part, "list"));
  return out;
}

std::vector<Complex> parse_complex_list(std::string_view text) {
  std::vector<Complex> out;
  for (const auto part : split(text, ',')) {
    const auto re_im = split(part, ':');
    if (re_im.size() > 2) throw InputError("coupling must be 're' or 're:im'");
    const double re = require_double(re_im[0], "coupling list");
    const double im = re_im.size() == 2 ? require_double(re_im[1], "coupling list") : 0.0;
    out.emplace_back(re, im);
  }
  return out;
}

std::map<std::string, std::vector<PathSample>> parse_rtd_samples(std::string_view text) {
  std::map<std::string, std::vector<PathSample>> out;
  std::size_t line_no = 0;
  bool header_seen = false;
  for (const auto raw : split(text, '\n')) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto cells = split(line, ',');
    if (!header_seen) {
      header_seen = true;
      double probe = 0.0;
      if (cells.size() >= 2 && !to_double(cells[1], probe)) continue;
    }
    if (cells.size() != 5)
      throw ParseError("expected 5 columns target,z_re,z_im,f1_re,f1_im", line_no, "");
    double v[4];
    for (int i = 0; i < 4; ++i)
      if (!to_double(cells[static_cast<std::size_t>(i + 1)], v[i]))
        throw ParseError("not a number: '" + std::string(trim(cells[static_cast<std::size_t>(i + 1)])) + "'",
                         line_no, "");
    out[std::string(trim(cells[0]))].push_back({Complex(v[0], v[1]), Complex(v[2], v[3])});
  }
  return out;
}

}  // namespace qgs
