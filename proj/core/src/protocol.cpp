#include "purecode/protocol.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "purecode/rng.hpp"

namespace purecode {

namespace {

constexpr int kMaxExhaustive = 12;

void check_block_args(const char* who, int k, double fidelity) {
    if (k < 1 || k > kMaxBlockSize) {
        throw std::invalid_argument(std::string(who) + ": k = " + std::to_string(k) +
                                    " outside [1, " + std::to_string(kMaxBlockSize) + "]");
    }
    if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
        throw std::invalid_argument(std::string(who) + ": fidelity outside [0, 1]");
    }
}

// Cumulative werner draw in canonical label order. The same cut points,
// read through pauli_to_bell, drive the code-view sampler, which is what
// makes equal-seed runs of the two views correspond shot by shot.
inline int draw_label_index(SplitMix64& rng, double f, double g) {
    const double u = rng.next_unit();
    if (u < f) return 0;
    if (u < f + g) return 1;
    if (u < f + 2 * g) return 2;
    return 3;
}

// Paulis listed so that position matches the canonical Bell index of
// pauli_to_bell(p): I, X, Z, Y.
constexpr std::array<Pauli, 4> kPauliByBellIndex{Pauli::I, Pauli::X, Pauli::Z, Pauli::Y};

inline int pauli_amplitude_bit(Pauli p) noexcept { return amplitude_bit(pauli_to_bell(p)); }
inline int pauli_phase_bit(Pauli p) noexcept { return phase_bit(pauli_to_bell(p)); }

}  // namespace

BlockCounts simulate_block(int k, double fidelity, std::uint64_t shots, std::uint64_t seed,
                           std::uint64_t first_shot) {
    check_block_args("simulate_block", k, fidelity);
    if (shots < 1) {
        throw std::invalid_argument("simulate_block: shots must be >= 1");
    }
    const double g = (1.0 - fidelity) / 3.0;

    BlockCounts counts;
    for (std::uint64_t shot = first_shot; shot < first_shot + shots; ++shot) {
        SplitMix64 rng(shot_stream(seed, shot));
        BellLabel source = static_cast<BellLabel>(draw_label_index(rng, fidelity, g));
        std::uint32_t bits = 0;
        for (int stage = 1; stage < k; ++stage) {
            const BellLabel target = static_cast<BellLabel>(draw_label_index(rng, fidelity, g));
            const auto [new_source, new_target] = bxor_map(source, target);
            source = new_source;
            bits |= static_cast<std::uint32_t>(amplitude_bit(new_target)) << (stage - 1);
        }
        ++counts[{bits, source}];
    }
    return counts;
}

BlockDistribution enumerate_block(int k, double fidelity, int source_index) {
    check_block_args("enumerate_block", k, fidelity);
    if (k > kMaxExhaustive) {
        throw std::invalid_argument("enumerate_block: k = " + std::to_string(k) +
                                    " exceeds the exhaustive limit " +
                                    std::to_string(kMaxExhaustive));
    }
    if (source_index < 0 || source_index >= k) {
        throw std::invalid_argument("enumerate_block: source_index outside [0, k)");
    }
    const double g = (1.0 - fidelity) / 3.0;
    const std::array<double, 4> w{fidelity, g, g, g};

    BlockDistribution dist;
    const std::uint64_t total = std::uint64_t{1} << (2 * k);
    for (std::uint64_t assignment = 0; assignment < total; ++assignment) {
        double prob = 1.0;
        for (int i = 0; i < k; ++i) {
            prob *= w[(assignment >> (2 * i)) & 3];
        }
        if (prob == 0.0) continue;

        BellLabel source = static_cast<BellLabel>((assignment >> (2 * source_index)) & 3);
        std::uint32_t bits = 0;
        int stage = 0;
        for (int i = 0; i < k; ++i) {
            if (i == source_index) continue;
            const BellLabel target = static_cast<BellLabel>((assignment >> (2 * i)) & 3);
            const auto [new_source, new_target] = bxor_map(source, target);
            source = new_source;
            bits |= static_cast<std::uint32_t>(amplitude_bit(new_target)) << stage;
            ++stage;
        }
        dist[{bits, source}] += prob;
    }
    return dist;
}

CodeCounts simulate_code_block(int k, double fidelity, std::uint64_t shots, std::uint64_t seed,
                               std::uint64_t first_shot) {
    check_block_args("simulate_code_block", k, fidelity);
    if (shots < 1) {
        throw std::invalid_argument("simulate_code_block: shots must be >= 1");
    }
    const double g = (1.0 - fidelity) / 3.0;

    CodeCounts counts;
    for (std::uint64_t shot = first_shot; shot < first_shot + shots; ++shot) {
        SplitMix64 rng(shot_stream(seed, shot));
        const Pauli first = kPauliByBellIndex[draw_label_index(rng, fidelity, g)];
        const int first_amp = pauli_amplitude_bit(first);
        int phase_parity = pauli_phase_bit(first);
        std::uint32_t syndrome = 0;
        for (int qubit = 1; qubit < k; ++qubit) {
            const Pauli e = kPauliByBellIndex[draw_label_index(rng, fidelity, g)];
            syndrome |= static_cast<std::uint32_t>(pauli_amplitude_bit(e) ^ first_amp)
                        << (qubit - 1);
            phase_parity ^= pauli_phase_bit(e);
        }
        const Pauli residual = kPauliByBellIndex[index_of(bell_label(phase_parity, first_amp))];
        ++counts[{syndrome, residual}];
    }
    return counts;
}

CodeDistribution enumerate_code_block(int k, double fidelity) {
    check_block_args("enumerate_code_block", k, fidelity);
    if (k > kMaxExhaustive) {
        throw std::invalid_argument("enumerate_code_block: k = " + std::to_string(k) +
                                    " exceeds the exhaustive limit " +
                                    std::to_string(kMaxExhaustive));
    }
    const double g = (1.0 - fidelity) / 3.0;
    const std::array<double, 4> w{fidelity, g, g, g};

    CodeDistribution dist;
    const std::uint64_t total = std::uint64_t{1} << (2 * k);
    for (std::uint64_t pattern = 0; pattern < total; ++pattern) {
        double prob = 1.0;
        for (int i = 0; i < k; ++i) {
            prob *= w[(pattern >> (2 * i)) & 3];
        }
        if (prob == 0.0) continue;

        const Pauli first = kPauliByBellIndex[(pattern >> 0) & 3];
        const int first_amp = pauli_amplitude_bit(first);
        int phase_parity = pauli_phase_bit(first);
        std::uint32_t syndrome = 0;
        for (int qubit = 1; qubit < k; ++qubit) {
            const Pauli e = kPauliByBellIndex[(pattern >> (2 * qubit)) & 3];
            syndrome |= static_cast<std::uint32_t>(pauli_amplitude_bit(e) ^ first_amp)
                        << (qubit - 1);
            phase_parity ^= pauli_phase_bit(e);
        }
        const Pauli residual = kPauliByBellIndex[index_of(bell_label(phase_parity, first_amp))];
        dist[{syndrome, residual}] += prob;
    }
    return dist;
}

BlockDistribution code_to_bell_view(const CodeDistribution& dist) {
    BlockDistribution out;
    for (const auto& [outcome, p] : dist) {
        out[{outcome.syndrome_bits, pauli_to_bell(outcome.residual_error)}] += p;
    }
    return out;
}

BlockCounts code_to_bell_view(const CodeCounts& counts) {
    BlockCounts out;
    for (const auto& [outcome, n] : counts) {
        out[{outcome.syndrome_bits, pauli_to_bell(outcome.residual_error)}] += n;
    }
    return out;
}

double expected_conditional_entropy(const BlockDistribution& dist) {
    // Group by agreement string; keys are bits-major so each group is a
    // contiguous run of at most four entries.
    double acc = 0.0;
    auto it = dist.begin();
    while (it != dist.end()) {
        const std::uint32_t bits = it->first.agreement_bits;
        std::array<double, 4> cond{0.0, 0.0, 0.0, 0.0};
        double mass = 0.0;
        for (; it != dist.end() && it->first.agreement_bits == bits; ++it) {
            cond[index_of(it->first.residual)] = it->second;
            mass += it->second;
        }
        if (mass <= 0.0) continue;
        double h = 0.0;
        for (double x : cond) {
            if (x > 0.0) h -= x * std::log2(x / mass);
        }
        acc += h;  // already mass-weighted: entries are unnormalized
    }
    return acc;
}

std::string agreement_bit_string(std::uint32_t bits, int k) {
    std::string s;
    s.reserve(static_cast<std::size_t>(k > 0 ? k - 1 : 0));
    for (int i = 0; i < k - 1; ++i) {
        s.push_back((bits >> i) & 1 ? '1' : '0');
    }
    return s;
}

void write_block_csv(std::ostream& os, const BlockCounts& counts, int k) {
    os << "agreement_bits,residual,count\n";
    for (const auto& [outcome, n] : counts) {
        os << agreement_bit_string(outcome.agreement_bits, k) << ','
           << label_name(outcome.residual) << ',' << n << '\n';
    }
}

}  // namespace purecode
