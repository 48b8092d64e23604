#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <utility>

namespace purecode {

/// The four Bell states encoded as two classical bits. The phase bit
/// distinguishes + from -, the amplitude bit distinguishes Phi from Psi.
///
/// Canonical index order used everywhere in this library:
///   0: Phi+ (phase 0, amplitude 0)
///   1: Psi+ (phase 0, amplitude 1)
///   2: Phi- (phase 1, amplitude 0)
///   3: Psi- (phase 1, amplitude 1)
/// i.e. index = phase << 1 | amplitude; the amplitude bit is the low bit.
enum class BellLabel : std::uint8_t {
    PhiPlus = 0,
    PsiPlus = 1,
    PhiMinus = 2,
    PsiMinus = 3,
};

inline constexpr std::array<BellLabel, 4> kAllBellLabels{
    BellLabel::PhiPlus,
    BellLabel::PsiPlus,
    BellLabel::PhiMinus,
    BellLabel::PsiMinus,
};

constexpr int index_of(BellLabel l) noexcept { return static_cast<int>(l); }
constexpr int phase_bit(BellLabel l) noexcept { return (static_cast<int>(l) >> 1) & 1; }
constexpr int amplitude_bit(BellLabel l) noexcept { return static_cast<int>(l) & 1; }

constexpr BellLabel bell_label(int phase, int amplitude) noexcept {
    return static_cast<BellLabel>(((phase & 1) << 1) | (amplitude & 1));
}

/// "Phi+", "Psi+", "Phi-" or "Psi-".
std::string_view label_name(BellLabel l) noexcept;

/// Bilateral XOR acting on a (source, target) pair of shared Bell states.
/// The source keeps its amplitude and absorbs the target's phase; the
/// target keeps its phase and absorbs the source's amplitude.
constexpr std::pair<BellLabel, BellLabel> bxor_map(BellLabel source, BellLabel target) noexcept {
    const int sp = phase_bit(source);
    const int sa = amplitude_bit(source);
    const int tp = phase_bit(target);
    const int ta = amplitude_bit(target);
    return {bell_label(sp ^ tp, sa), bell_label(tp, ta ^ sa)};
}

/// Single-qubit Pauli errors.
enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline constexpr std::array<Pauli, 4> kAllPaulis{Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};

/// "I", "X", "Y" or "Z".
std::string_view pauli_name(Pauli p) noexcept;

/// The Bell state a Pauli error on one half of a Phi+ pair produces.
/// An amplitude flip (X) turns Phi into Psi, a phase flip (Z) turns +
/// into -, and Y does both.
constexpr BellLabel pauli_to_bell(Pauli e) noexcept {
    switch (e) {
        case Pauli::X: return BellLabel::PsiPlus;
        case Pauli::Y: return BellLabel::PsiMinus;
        case Pauli::Z: return BellLabel::PhiMinus;
        default: return BellLabel::PhiPlus;
    }
}

/// A Bell-diagonal two-qubit density matrix: a probability 4-vector over
/// the Bell labels in canonical order.
///
/// Construction renormalizes inputs whose sum is within 1e-9 of 1 and
/// rejects anything farther off; negative entries below -1e-12 and
/// entries above 1 + 1e-9 are rejected as well.
class BellDiagonal {
  public:
    explicit BellDiagonal(const std::array<double, 4>& probs);
    BellDiagonal(double phi_plus, double psi_plus, double phi_minus, double psi_minus);

    double operator[](BellLabel l) const noexcept { return p_[index_of(l)]; }
    double at(int index) const { return p_.at(static_cast<std::size_t>(index)); }
    const std::array<double, 4>& probs() const noexcept { return p_; }

    bool operator==(const BellDiagonal&) const = default;

  private:
    std::array<double, 4> p_;
};

/// Werner state of fidelity f: weight f on Phi+ and g = (1-f)/3 on each
/// of the other three Bell states. Rejects f outside [0, 1].
BellDiagonal werner_state(double fidelity);

/// Von Neumann entropy of a Bell-diagonal state in bits, with 0 log 0 = 0.
/// Always in [0, 2].
double entropy(const BellDiagonal& m) noexcept;

}  // namespace purecode
