#include "purecode/bell.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace purecode {

namespace {

constexpr double kSumTolerance = 1e-9;
constexpr double kNegativeTolerance = 1e-12;

}  // namespace

std::string_view label_name(BellLabel l) noexcept {
    switch (l) {
        case BellLabel::PhiPlus: return "Phi+";
        case BellLabel::PsiPlus: return "Psi+";
        case BellLabel::PhiMinus: return "Phi-";
        case BellLabel::PsiMinus: return "Psi-";
    }
    return "?";
}

std::string_view pauli_name(Pauli p) noexcept {
    switch (p) {
        case Pauli::I: return "I";
        case Pauli::X: return "X";
        case Pauli::Y: return "Y";
        case Pauli::Z: return "Z";
    }
    return "?";
}

BellDiagonal::BellDiagonal(const std::array<double, 4>& probs) : p_(probs) {
    double sum = 0.0;
    for (double& v : p_) {
        if (!(v >= -kNegativeTolerance) || v > 1.0 + kSumTolerance) {
            throw std::invalid_argument("BellDiagonal: entry " + std::to_string(v) +
                                        " outside [0, 1]");
        }
        if (v < 0.0) v = 0.0;
        sum += v;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
        throw std::invalid_argument("BellDiagonal: probabilities sum to " + std::to_string(sum) +
                                    ", more than 1e-9 away from 1");
    }
    for (double& v : p_) v /= sum;
}

BellDiagonal::BellDiagonal(double phi_plus, double psi_plus, double phi_minus, double psi_minus)
    : BellDiagonal(std::array<double, 4>{phi_plus, psi_plus, phi_minus, psi_minus}) {}

BellDiagonal werner_state(double fidelity) {
    if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
        throw std::invalid_argument("werner_state: fidelity " + std::to_string(fidelity) +
                                    " outside [0, 1]");
    }
    const double g = (1.0 - fidelity) / 3.0;
    return BellDiagonal(fidelity, g, g, g);
}

double entropy(const BellDiagonal& m) noexcept {
    double h = 0.0;
    for (double p : m.probs()) {
        if (p > 0.0) h -= p * std::log2(p);
    }
    return h;
}

}  // namespace purecode
