#include "robustprep/io/amplitude_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace robustprep::io {

void write_amplitudes(std::ostream& out, const StateVector& state) {
    out << state.n_qubits() << '\n';
    out << std::setprecision(17);
    for (std::size_t i = 0; i < state.dim(); ++i) {
        out << state[i].real() << ',' << state[i].imag() << '\n';
    }
}

StateVector read_amplitudes(std::istream& in) {
    int n_qubits = 0;
    if (!(in >> n_qubits) || n_qubits < 1) {
        throw std::runtime_error("read_amplitudes: missing or invalid qubit-count header");
    }
    std::vector<complex_t> amps;
    amps.reserve(dim_for_qubits(n_qubits));
    std::string line;
    std::getline(in, line);  // consume the header line end
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw std::runtime_error("read_amplitudes: expected 're,im' line");
        }
        amps.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    }
    if (amps.size() != dim_for_qubits(n_qubits)) {
        throw std::runtime_error("read_amplitudes: expected " +
                                 std::to_string(dim_for_qubits(n_qubits)) +
                                 " amplitude lines, got " + std::to_string(amps.size()));
    }
    return StateVector::normalized(n_qubits, std::move(amps));
}

void write_amplitudes_file(const std::string& path, const StateVector& state) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("write_amplitudes_file: cannot open " + path);
    }
    write_amplitudes(out, state);
}

StateVector read_amplitudes_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("read_amplitudes_file: cannot open " + path);
    }
    return read_amplitudes(in);
}

}  // namespace robustprep::io
