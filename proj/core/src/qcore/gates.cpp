#include "robustprep/qcore/gates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "robustprep/qcore/types.hpp"

namespace robustprep {

namespace {

using namespace std::complex_literals;

constexpr double kPi = std::numbers::pi;

Eigen::Matrix2cd rotation_2x2(const Eigen::Matrix2cd& generator, double angle) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    return c * Eigen::Matrix2cd::Identity() - 1i * s * generator;
}

Eigen::Matrix4cd rotation_4x4(const Eigen::Matrix4cd& generator, double angle) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    return c * Eigen::Matrix4cd::Identity() - 1i * s * generator;
}

// Generator of RZX in the local ordering (listed qubit 0 = Z = local LSB).
Eigen::Matrix4cd zx_generator() {
    // Kronecker product puts the first factor on the most significant bit.
    return Eigen::kroneckerProduct(pauli_matrix('X'), pauli_matrix('Z'));
}

Eigen::Matrix4cd cnot_matrix() {
    // Local index = target_bit * 2 + control_bit (control listed first).
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = 1.0;
    m(3, 1) = 1.0;
    m(2, 2) = 1.0;
    m(1, 3) = 1.0;
    return m;
}

}  // namespace

int gate_arity(GateKind kind) {
    switch (kind) {
        case GateKind::RZX:
        case GateKind::CNOT:
            return 2;
        default:
            return 1;
    }
}

bool gate_is_parameterized(GateKind kind) {
    switch (kind) {
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
        case GateKind::RZX:
            return true;
        default:
            return false;
    }
}

std::string_view gate_generator(GateKind kind) {
    switch (kind) {
        case GateKind::RX:
            return "X";
        case GateKind::RY:
            return "Y";
        case GateKind::RZ:
            return "Z";
        case GateKind::RZX:
            return "ZX";
        default:
            throw std::invalid_argument("gate_generator: " + std::string(gate_name(kind)) +
                                        " has no rotation generator");
    }
}

std::string_view gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::RX:
            return "rx";
        case GateKind::RY:
            return "ry";
        case GateKind::RZ:
            return "rz";
        case GateKind::RZX:
            return "rzx";
        case GateKind::CNOT:
            return "cnot";
        case GateKind::SX:
            return "sx";
        case GateKind::X:
            return "x";
        case GateKind::H:
            return "h";
        case GateKind::SDG:
            return "sdg";
    }
    throw std::invalid_argument("gate_name: unknown kind");
}

std::optional<GateKind> gate_from_name(std::string_view name) {
    for (GateKind kind : {GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::RZX,
                          GateKind::CNOT, GateKind::SX, GateKind::X, GateKind::H,
                          GateKind::SDG}) {
        if (gate_name(kind) == name) {
            return kind;
        }
    }
    return std::nullopt;
}

Eigen::MatrixXcd gate_unitary(GateKind kind, std::optional<double> angle) {
    if (gate_is_parameterized(kind) != angle.has_value()) {
        throw std::invalid_argument(
            "gate_unitary: angle must be supplied exactly for parameterized kinds (" +
            std::string(gate_name(kind)) + ")");
    }
    switch (kind) {
        case GateKind::RX:
            return rotation_2x2(pauli_matrix('X'), *angle);
        case GateKind::RY:
            return rotation_2x2(pauli_matrix('Y'), *angle);
        case GateKind::RZ:
            return rotation_2x2(pauli_matrix('Z'), *angle);
        case GateKind::RZX:
            return rotation_4x4(zx_generator(), *angle);
        case GateKind::CNOT:
            return cnot_matrix();
        case GateKind::SX: {
            Eigen::Matrix2cd m;
            m << complex_t(0.5, 0.5), complex_t(0.5, -0.5),  //
                complex_t(0.5, -0.5), complex_t(0.5, 0.5);
            return m;
        }
        case GateKind::X:
            return pauli_matrix('X');
        case GateKind::H: {
            Eigen::Matrix2cd m;
            const double s = 1.0 / std::sqrt(2.0);
            m << s, s, s, -s;
            return m;
        }
        case GateKind::SDG: {
            Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
            m(0, 0) = 1.0;
            m(1, 1) = complex_t(0.0, -1.0);
            return m;
        }
    }
    throw std::invalid_argument("gate_unitary: unknown kind");
}

Eigen::Matrix2cd pauli_matrix(char letter) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    switch (letter) {
        case 'I':
            m.setIdentity();
            break;
        case 'X':
            m(0, 1) = 1.0;
            m(1, 0) = 1.0;
            break;
        case 'Y':
            m(0, 1) = complex_t(0.0, -1.0);
            m(1, 0) = complex_t(0.0, 1.0);
            break;
        case 'Z':
            m(0, 0) = 1.0;
            m(1, 1) = -1.0;
            break;
        default:
            throw std::invalid_argument(std::string("pauli_matrix: invalid letter '") +
                                        letter + "'");
    }
    return m;
}

Eigen::Matrix2cd basis_change_unitary(char basis) {
    switch (basis) {
        case 'Z':
            return Eigen::Matrix2cd::Identity();
        case 'X':
            return gate_unitary(GateKind::H);
        case 'Y':
            return gate_unitary(GateKind::H) * gate_unitary(GateKind::SDG);
        default:
            throw std::invalid_argument(std::string("basis_change_unitary: invalid basis '") +
                                        basis + "'");
    }
}

EquivalentRotation gate_equivalent_rotation(GateKind kind) {
    switch (kind) {
        case GateKind::RX:
            return {pauli_matrix('X'), 0.0};
        case GateKind::RY:
            return {pauli_matrix('Y'), 0.0};
        case GateKind::RZ:
            return {pauli_matrix('Z'), 0.0};
        case GateKind::RZX:
            return {zx_generator(), 0.0};
        case GateKind::X:
            return {pauli_matrix('X'), kPi};
        case GateKind::SX:
            return {pauli_matrix('X'), kPi / 2.0};
        case GateKind::H:
            return {(pauli_matrix('X') + pauli_matrix('Z')) / std::sqrt(2.0), kPi};
        case GateKind::SDG:
            return {pauli_matrix('Z'), -kPi / 2.0};
        case GateKind::CNOT: {
            // CNOT = exp(-i pi G / 2) up to phase, G = 2 P - I with P the
            // projector onto control=1, target in the X=-1 eigenstate.
            const Eigen::Matrix2cd proj_c1 =
                (Eigen::Matrix2cd::Identity() - pauli_matrix('Z')) / 2.0;
            const Eigen::Matrix2cd proj_xminus =
                (Eigen::Matrix2cd::Identity() - pauli_matrix('X')) / 2.0;
            // Control is the local LSB, so it is the second Kronecker factor.
            const Eigen::Matrix4cd proj =
                Eigen::kroneckerProduct(proj_xminus, proj_c1);
            return {2.0 * proj - Eigen::Matrix4cd::Identity(), kPi};
        }
    }
    throw std::invalid_argument("gate_equivalent_rotation: unknown kind");
}

}  // namespace robustprep
