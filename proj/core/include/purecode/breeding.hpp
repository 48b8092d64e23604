#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "purecode/bell.hpp"
#include "purecode/rng.hpp"

namespace purecode {

/// A sequence of Bell labels stored as two bit planes: bit i of each
/// plane is pair i's amplitude / phase bit. Equivalent to the length-2n
/// interleaved bitstring (amplitude of pair i at position 2i, phase at
/// 2i+1).
struct SyndromeString {
    int n_pairs = 0;
    std::uint32_t amplitude_bits = 0;
    std::uint32_t phase_bits = 0;

    BellLabel label_at(int pair) const noexcept {
        return bell_label((phase_bits >> pair) & 1, (amplitude_bits >> pair) & 1);
    }

    auto operator<=>(const SyndromeString&) const = default;
};

SyndromeString syndrome_from_labels(const std::vector<BellLabel>& pairs);

/// One collected parity: which pairs' amplitude bits and which pairs'
/// phase bits enter the XOR.
struct ParityMask {
    std::uint32_t amplitude_subset = 0;
    std::uint32_t phase_subset = 0;

    auto operator<=>(const ParityMask&) const = default;
};

/// XOR of the selected bits of x. Throws std::out_of_range if a mask
/// bit refers to a pair index >= x.n_pairs.
int subset_parity(const SyndromeString& x, const ParityMask& mask);

/// m masks with every bit independently set with probability 1/2, in
/// both planes. Fixed seed gives a fixed list.
std::vector<ParityMask> random_masks(int m, int n_pairs, std::uint64_t seed);

/// min(1, 2^(n_pairs * entropy_per_pair + delta_bits - m)): the chance
/// some other string of the size-2^(n_pairs*S+delta) typical set matches
/// all m random parities.
double collision_bound(int n_pairs, double entropy_per_pair, int m, double delta_bits);

/// Draw n_pairs labels i.i.d. from werner_state(fidelity), consuming one
/// uniform variate per pair from rng.
SyndromeString random_syndrome_string(int n_pairs, double fidelity, SplitMix64& rng);

struct DecodeResult {
    SyndromeString best;
    double success_probability = 0.0;  // posterior mass of best
    std::uint64_t matched_candidates = 0;
    double matched_prior_mass = 0.0;
};

/// Exhaustive maximum-posterior decoding: enumerate all 4^n_pairs
/// candidate strings, keep those whose parities (bit j of `parities` for
/// masks[j]) all match, return the highest-prior match. Ties go to the
/// lowest candidate, all-Phi+ first. The prior is i.i.d. werner_state(f)
/// in the first overload and per-pair pair_priors in the second.
/// Rejects n_pairs > 10 and more than 64 masks; throws std::runtime_error
/// if nothing matches (impossible for parities read off a real string).
DecodeResult decode_posterior(std::uint64_t parities, const std::vector<ParityMask>& masks,
                              int n_pairs, double fidelity);
DecodeResult decode_posterior(std::uint64_t parities, const std::vector<ParityMask>& masks,
                              const std::vector<BellDiagonal>& pair_priors);

/// Parities of x under masks, packed as bit j = subset_parity(x, masks[j]).
std::uint64_t collect_parities(const SyndromeString& x, const std::vector<ParityMask>& masks);

struct TrialResult {
    std::uint64_t trial = 0;
    SyndromeString truth;
    SyndromeString decoded;
    double success_probability = 0.0;  // posterior the decoder assigns its answer
    double truth_posterior = 0.0;
    std::uint64_t matched_candidates = 0;
};

struct BreedingRun {
    int n_pairs = 0;
    int m = 0;
    double fidelity = 0.0;
    double delta_bits = 0.0;
    std::vector<ParityMask> masks;
    std::vector<TrialResult> trials;
    double collision_bound_value = 0.0;  // at entropy(werner_state(fidelity))
    double failure_probability = 0.0;    // mean over trials of 1 - truth_posterior
    double wrong_decode_rate = 0.0;      // fraction of trials with decoded != truth
};

/// One mask set drawn from `seed`, then n_trials independent truths on
/// streams shot_stream(seed, trial), each decoded exhaustively.
BreedingRun run_breeding(std::uint64_t n_trials, int n_pairs, int m, double fidelity,
                         double delta_bits, std::uint64_t seed);

/// CSV with header `trial,m,n_pairs,f,success_prob,matched_candidates`.
void write_breeding_csv(std::ostream& os, const BreedingRun& run, int precision = 6);

struct CollisionExperiment {
    int n_pairs = 0;
    int m = 0;
    std::uint64_t trials = 0;
    std::uint64_t collisions = 0;
    double expected_rate = 0.0;  // exactly 2^-m
};

/// Per trial: draw m fresh random masks and two distinct uniform strings
/// (the second is redrawn on the off chance it equals the first), count
/// the trials where every parity agrees. Conditioned on distinct strings
/// the agreement probability is exactly 2^-m per trial.
CollisionExperiment parity_collision_experiment(int n_pairs, int m, std::uint64_t trials,
                                                std::uint64_t seed);

}  // namespace purecode
