#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

#include "purecode/bell.hpp"
#include "purecode/recursion.hpp"

namespace purecode {

/// Outcome of one block run at the Bell-label level. Bit i of
/// agreement_bits is 1 iff the target folded at stage i+1 (pair i+2)
/// ended up with its halves disagreeing, i.e. in a Psi state. With k
/// pairs only the low k-1 bits are meaningful.
struct BlockOutcome {
    std::uint32_t agreement_bits = 0;
    BellLabel residual = BellLabel::PhiPlus;

    auto operator<=>(const BlockOutcome&) const = default;
};

/// Outcome of one block run in the code view: which transmitted qubits
/// were amplitude-flipped relative to the first one, and the net Pauli
/// left on the encoded qubit. Bit i of syndrome_bits refers to qubit i+2.
struct CodeBlockOutcome {
    std::uint32_t syndrome_bits = 0;
    Pauli residual_error = Pauli::I;

    auto operator<=>(const CodeBlockOutcome&) const = default;
};

using BlockCounts = std::map<BlockOutcome, std::uint64_t>;
using BlockDistribution = std::map<BlockOutcome, double>;
using CodeCounts = std::map<CodeBlockOutcome, std::uint64_t>;
using CodeDistribution = std::map<CodeBlockOutcome, double>;

/// Monte Carlo run of the block protocol: per shot, draw k labels from
/// werner_state(fidelity), fold pairs 2..k into pair 1 with bxor_map in
/// ascending order, record (agreement bits, residual source label).
/// Shot i uses the stream shot_stream(seed, i); a call covers shots
/// [first_shot, first_shot + shots), so histograms from disjoint shot
/// ranges merge to the sequential result exactly.
BlockCounts simulate_block(int k, double fidelity, std::uint64_t shots, std::uint64_t seed,
                           std::uint64_t first_shot = 0);

/// Exact distribution of simulate_block outcomes by exhaustive sum over
/// all 4^k label assignments. Deliberately brute force: this is the
/// oracle the recursion engine and the sampler are both checked against.
/// source_index selects which pair keeps the residual; the remaining
/// pairs fold in ascending order. Rejects k > 12.
BlockDistribution enumerate_block(int k, double fidelity, int source_index = 0);

/// Monte Carlo run of the cat-state code view: per shot, draw one Pauli
/// error per transmitted qubit with weights (f, g, g, g) over (I, X, Z, Y),
/// read off relative amplitude flips as the syndrome and reduce the
/// pattern to the net logical Pauli (amplitude from qubit 1, phase as the
/// parity of phase flips across the whole block). Same per-shot stream
/// layout as simulate_block, and the draw order mirrors the Bell-label
/// order, so equal seeds give pointwise-corresponding shots.
CodeCounts simulate_code_block(int k, double fidelity, std::uint64_t shots, std::uint64_t seed,
                               std::uint64_t first_shot = 0);

/// Exact code-view distribution over all 4^k error patterns. Rejects
/// k > 12.
CodeDistribution enumerate_code_block(int k, double fidelity);

/// Relabel code-view outcomes as Bell-label outcomes: the syndrome bits
/// carry over, the residual Pauli maps through pauli_to_bell. This is
/// the bridge the two views are compared across.
BlockDistribution code_to_bell_view(const CodeDistribution& dist);
BlockCounts code_to_bell_view(const CodeCounts& counts);

/// Sum over agreement strings of P(string) times the entropy of the
/// conditional residual distribution. Agrees with expected_entropy by
/// construction of the protocol; tests pin that down numerically.
double expected_conditional_entropy(const BlockDistribution& dist);

/// The low k-1 bits of `bits` as a 0/1 string, stage 1 first. Empty for
/// k = 1.
std::string agreement_bit_string(std::uint32_t bits, int k);

/// CSV with header `agreement_bits,residual,count`, rows in key order.
void write_block_csv(std::ostream& os, const BlockCounts& counts, int k);

}  // namespace purecode
