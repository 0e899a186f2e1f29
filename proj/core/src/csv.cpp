#include "cvqkd/csv.hpp"

#include "cvqkd/errors.hpp"

#include <fmt/core.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

namespace cvqkd {

namespace {

constexpr std::string_view kDatasetHeader =
    "probe_id,in_q,in_p,out_mean_q,out_mean_p,out_cov_qq,out_cov_qp,out_cov_pp,n";

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw IoError(fmt::format("dataset line {}: '{}' is not a number", line, s));
  }
  return v;
}

std::uint64_t to_count(const std::string& s, std::size_t line) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw IoError(fmt::format("dataset line {}: '{}' is not a sample count", line, s));
  }
  return v;
}

}  // namespace

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return fmt::format("{:.12g}", value);
}

std::vector<std::vector<std::string>> read_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = text.find(',', start);
      fields.emplace_back(trim(text.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

void write_dataset_csv(std::ostream& out, const TomographyDataset& data) {
  out << kDatasetHeader << '\n';
  for (std::size_t i = 0; i < data.probes.size(); ++i) {
    const ProbeRecord& p = data.probes[i];
    out << i << ',' << format_number(p.input_mean.x()) << ',' << format_number(p.input_mean.y())
        << ',' << format_number(p.output_mean.x()) << ',' << format_number(p.output_mean.y())
        << ',' << format_number(p.output_cm(0, 0)) << ',' << format_number(p.output_cm(0, 1))
        << ',' << format_number(p.output_cm(1, 1)) << ',' << p.samples << '\n';
  }
}

TomographyDataset read_dataset_csv(std::istream& in) {
  const auto rows = read_csv(in);
  if (rows.empty()) throw IoError("dataset: empty file");
  std::string header;
  for (std::size_t i = 0; i < rows[0].size(); ++i) header += (i ? "," : "") + rows[0][i];
  if (header != kDatasetHeader) {
    throw IoError(fmt::format("dataset: expected header '{}'", kDatasetHeader));
  }
  TomographyDataset data;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& f = rows[r];
    if (f.size() != 9) throw IoError(fmt::format("dataset line {}: expected 9 fields", r + 1));
    ProbeRecord p;
    p.input_mean = {to_double(f[1], r + 1), to_double(f[2], r + 1)};
    p.output_mean = {to_double(f[3], r + 1), to_double(f[4], r + 1)};
    const double qp = to_double(f[6], r + 1);
    p.output_cm << to_double(f[5], r + 1), qp, qp, to_double(f[7], r + 1);
    p.samples = to_count(f[8], r + 1);
    data.probes.push_back(p);
  }
  return data;
}

TomographyDataset read_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open dataset '{}'", path.string()));
  return read_dataset_csv(in);
}

void write_cm_csv(std::ostream& out, const CovarianceMatrix& cm) {
  out << "n_modes\n" << cm.n_modes() << '\n';
  const Matrix& m = cm.matrix();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out << (c ? "," : "") << format_number(m(r, c));
    out << '\n';
  }
}

}  // namespace cvqkd
