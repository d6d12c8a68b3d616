#include "robustprep/io/matrix_io.hpp"

#include <fstream>
#include <iomanip>
#include <stdexcept>

namespace robustprep::io {

void write_matrix(std::ostream& out, const Eigen::MatrixXcd& m) {
    out << std::setprecision(17);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c > 0) {
                out << ' ';
            }
            out << m(r, c).real() << ',' << m(r, c).imag();
        }
        out << '\n';
    }
}

void write_matrix_file(const std::string& path, const Eigen::MatrixXcd& m) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("write_matrix_file: cannot open " + path);
    }
    write_matrix(out, m);
}

}  // namespace robustprep::io
