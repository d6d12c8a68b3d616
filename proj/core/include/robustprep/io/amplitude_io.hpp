// Amplitude file format: a header line with the qubit count, then one
// "re,im" line per basis index in little-endian index order.
#pragma once

#include <iosfwd>
#include <string>

#include "robustprep/qcore/types.hpp"

namespace robustprep::io {

void write_amplitudes(std::ostream& out, const StateVector& state);
StateVector read_amplitudes(std::istream& in);

void write_amplitudes_file(const std::string& path, const StateVector& state);
StateVector read_amplitudes_file(const std::string& path);

}  // namespace robustprep::io
