// Debug dump for density/estimate matrices: row-major, "re,im" pairs
// separated by spaces, one matrix row per line.
#pragma once

#include <iosfwd>
#include <string>

#include <Eigen/Dense>

namespace robustprep::io {

void write_matrix(std::ostream& out, const Eigen::MatrixXcd& m);
void write_matrix_file(const std::string& path, const Eigen::MatrixXcd& m);

}  // namespace robustprep::io
