#pragma once

// Plain CSV I/O: fixed 12-significant-digit numbers, comma separated, no quoting.

#include "cvqkd/gaussian.hpp"
#include "cvqkd/tomography.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace cvqkd {

/// "{:.12g}"; infinities as "inf"/"-inf".
std::string format_number(double value);

/// Splits each non-empty line on commas (surrounding whitespace trimmed).
std::vector<std::vector<std::string>> read_csv(std::istream& in);

/// Columns probe_id,in_q,in_p,out_mean_q,out_mean_p,out_cov_qq,out_cov_qp,out_cov_pp,n.
/// Inputs are coherent probes, so the input CM is taken as the vacuum.
void write_dataset_csv(std::ostream& out, const TomographyDataset& data);
TomographyDataset read_dataset_csv(std::istream& in);
/// Throws IoError when the file cannot be opened.
TomographyDataset read_dataset_csv(const std::filesystem::path& path);

/// Header line "n_modes", the mode count, then the 2n rows of the matrix.
void write_cm_csv(std::ostream& out, const CovarianceMatrix& cm);

}  // namespace cvqkd
