#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "purecode/bell.hpp"

namespace purecode {

/// A 2x2 complex operator, row-major: {K00, K01, K10, K11}.
using KrausOp = std::array<std::complex<double>, 4>;

enum class ChannelKind { Depolarizing, Pauli, Kraus };

/// A single-qubit channel acting on the transmitted half of each pair;
/// the kept half is noiseless. Only the fields of the active kind are
/// meaningful.
struct ChannelSpec {
    ChannelKind kind = ChannelKind::Depolarizing;
    double x = 1.0;                                    // depolarizing: P(not depolarized)
    std::array<double, 4> pauli{1.0, 0.0, 0.0, 0.0};   // pI, pX, pY, pZ
    std::vector<KrausOp> kraus;
};

struct WorkingFidelity {
    double f = 0.0;    // after twirling to Werner form
    double f_c = 0.0;  // threshold for the chosen block size
    bool usable = false;
};

/// f = (3x + 1) / 4: a depolarized qubit still lands on the initial
/// state a quarter of the time. Rejects x outside [0, 1].
double depolarizing_fidelity(double x);

/// (pI, pX, pY, pZ) to canonical Bell order (pI, pX, pZ, pY): each Pauli
/// on the transmitted half moves Phi+ to pauli_to_bell of it.
BellDiagonal pauli_to_bell_diagonal(const std::array<double, 4>& p);

/// Random bilateral rotations average any Bell-diagonal state to the
/// Werner state of its largest entry, after relabeling that entry to the
/// Phi+ slot. Idempotent; preserves the maximum entry.
BellDiagonal twirl_to_werner(const BellDiagonal& m);

/// Bell-diagonal state of one shared pair after the channel acts on the
/// transmitted half. For Kraus channels the Bell basis is first aligned
/// by the local-unitary search of fully_entangled_fraction, so the Phi+
/// entry is the (lower-bound) fully entangled fraction.
BellDiagonal channel_bell_diagonal(const ChannelSpec& spec);

/// Best-effort maximum of <zeta| rho |zeta> over maximally entangled
/// zeta, for rho the channel's Choi state: coarse grid plus pattern
/// refinement over one local unitary's three Euler angles. Deterministic;
/// a lower bound on the true maximum (exact for Bell-diagonal states up
/// to the refinement tolerance).
double fully_entangled_fraction(const std::vector<KrausOp>& kraus);

/// Twirl the channel's pair state to Werner form and compare against
/// solve_threshold(k). usable means f >= f_c, i.e. the size-k block
/// protocol extracts positive yield arbitrarily close to the threshold.
WorkingFidelity channel_usable(const ChannelSpec& spec, int k);

/// Parse a channel spec from JSON text. Shapes:
///   {"kind": "depolarizing", "x": 0.9}
///   {"kind": "pauli", "probabilities": [pI, pX, pY, pZ]}
///   {"kind": "kraus", "operators": [[[re,im],[re,im],[re,im],[re,im]], ...]}
/// Kraus operators are row-major 2x2. Probabilities must sum to 1 within
/// 1e-12; Kraus operators must satisfy completeness within 1e-9. Errors
/// name the offending field.
ChannelSpec parse_channel_spec(const std::string& text);

/// parse_channel_spec on the contents of a file.
ChannelSpec load_channel_spec(const std::string& path);

}  // namespace purecode
