#ifndef QGS_IO_HPP_
#define QGS_IO_HPP_

#include "qgs/inverse.hpp"
#include "qgs/types.hpp"

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qgs {

/// Shortest round-trippable decimal form (%.17g).
std::string format_double(double x);

/// CSV with leading "# key=value" metadata lines.
struct CsvTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_meta(std::string key, std::string value);
  void add_row(std::vector<std::string> row);
  std::string str() const;
};

/// Writes text to path, or to stdout when path is empty or "-".
void write_output(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

/// Grid a:b:step, b included when it lies on the grid to 1e-9 relative.
/// Throws InputError.
std::vector<double> parse_range(std::string_view text);
/// Comma-separated reals. Throws InputError.
std::vector<double> parse_real_list(std::string_view text);
/// Comma-separated couplings; each entry "re" or "re:im". Throws InputError.
std::vector<Complex> parse_complex_list(std::string_view text);

/// Reads f_1 samples from CSV with columns target,z_re,z_im,f1_re,f1_im
/// ('#' lines and the header are skipped). Throws ParseError.
std::map<std::string, std::vector<PathSample>> parse_rtd_samples(std::string_view text);

}  // namespace qgs

#endif  // QGS_IO_HPP_
