#include "purecode/breeding.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

namespace purecode {

namespace {

constexpr int kMaxExhaustivePairs = 10;
constexpr int kMaxMaskPairs = 32;

inline int parity_of(std::uint32_t word) noexcept { return std::popcount(word) & 1; }

void check_pairs(const char* who, int n_pairs, int limit) {
    if (n_pairs < 1 || n_pairs > limit) {
        throw std::invalid_argument(std::string(who) + ": n_pairs = " + std::to_string(n_pairs) +
                                    " outside [1, " + std::to_string(limit) + "]");
    }
}

}  // namespace

SyndromeString syndrome_from_labels(const std::vector<BellLabel>& pairs) {
    check_pairs("syndrome_from_labels", static_cast<int>(pairs.size()), kMaxMaskPairs);
    SyndromeString x;
    x.n_pairs = static_cast<int>(pairs.size());
    for (int i = 0; i < x.n_pairs; ++i) {
        x.amplitude_bits |= static_cast<std::uint32_t>(amplitude_bit(pairs[i])) << i;
        x.phase_bits |= static_cast<std::uint32_t>(phase_bit(pairs[i])) << i;
    }
    return x;
}

int subset_parity(const SyndromeString& x, const ParityMask& mask) {
    const std::uint32_t in_range =
        x.n_pairs >= 32 ? 0xFFFFFFFFu : ((std::uint32_t{1} << x.n_pairs) - 1);
    if ((mask.amplitude_subset | mask.phase_subset) & ~in_range) {
        throw std::out_of_range("subset_parity: mask selects a pair index >= n_pairs = " +
                                std::to_string(x.n_pairs));
    }
    return parity_of(x.amplitude_bits & mask.amplitude_subset) ^
           parity_of(x.phase_bits & mask.phase_subset);
}

std::vector<ParityMask> random_masks(int m, int n_pairs, std::uint64_t seed) {
    if (m < 1) {
        throw std::invalid_argument("random_masks: m must be >= 1");
    }
    check_pairs("random_masks", n_pairs, kMaxMaskPairs);
    const std::uint32_t all =
        n_pairs >= 32 ? 0xFFFFFFFFu : ((std::uint32_t{1} << n_pairs) - 1);

    SplitMix64 rng(seed);
    std::vector<ParityMask> masks(static_cast<std::size_t>(m));
    for (auto& mask : masks) {
        mask.amplitude_subset = static_cast<std::uint32_t>(rng.next()) & all;
        mask.phase_subset = static_cast<std::uint32_t>(rng.next()) & all;
    }
    return masks;
}

double collision_bound(int n_pairs, double entropy_per_pair, int m, double delta_bits) {
    if (m < 0) {
        throw std::invalid_argument("collision_bound: m must be >= 0");
    }
    check_pairs("collision_bound", n_pairs, kMaxMaskPairs);
    const double exponent = n_pairs * entropy_per_pair + delta_bits - m;
    return exponent >= 0.0 ? 1.0 : std::exp2(exponent);
}

SyndromeString random_syndrome_string(int n_pairs, double fidelity, SplitMix64& rng) {
    check_pairs("random_syndrome_string", n_pairs, kMaxMaskPairs);
    if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
        throw std::invalid_argument("random_syndrome_string: fidelity outside [0, 1]");
    }
    const double g = (1.0 - fidelity) / 3.0;
    SyndromeString x;
    x.n_pairs = n_pairs;
    for (int i = 0; i < n_pairs; ++i) {
        const double u = rng.next_unit();
        int label = 3;
        if (u < fidelity) {
            label = 0;
        } else if (u < fidelity + g) {
            label = 1;
        } else if (u < fidelity + 2 * g) {
            label = 2;
        }
        x.amplitude_bits |= static_cast<std::uint32_t>(label & 1) << i;
        x.phase_bits |= static_cast<std::uint32_t>((label >> 1) & 1) << i;
    }
    return x;
}

std::uint64_t collect_parities(const SyndromeString& x, const std::vector<ParityMask>& masks) {
    if (masks.size() > 64) {
        throw std::invalid_argument("collect_parities: more than 64 masks");
    }
    std::uint64_t parities = 0;
    for (std::size_t j = 0; j < masks.size(); ++j) {
        parities |= static_cast<std::uint64_t>(subset_parity(x, masks[j])) << j;
    }
    return parities;
}

DecodeResult decode_posterior(std::uint64_t parities, const std::vector<ParityMask>& masks,
                              const std::vector<BellDiagonal>& pair_priors) {
    const int n = static_cast<int>(pair_priors.size());
    check_pairs("decode_posterior", n, kMaxExhaustivePairs);
    if (masks.size() > 64) {
        throw std::invalid_argument("decode_posterior: more than 64 masks");
    }
    for (const auto& mask : masks) {
        const std::uint32_t all = (std::uint32_t{1} << n) - 1;
        if ((mask.amplitude_subset | mask.phase_subset) & ~all) {
            throw std::out_of_range("decode_posterior: mask selects a pair index >= n_pairs");
        }
    }

    DecodeResult result;
    double best_prior = -1.0;
    const std::uint32_t plane_max = std::uint32_t{1} << n;
    for (std::uint32_t phase = 0; phase < plane_max; ++phase) {
        for (std::uint32_t amp = 0; amp < plane_max; ++amp) {
            bool matches = true;
            for (std::size_t j = 0; j < masks.size(); ++j) {
                const int p = parity_of(amp & masks[j].amplitude_subset) ^
                              parity_of(phase & masks[j].phase_subset);
                if (static_cast<std::uint64_t>(p) != ((parities >> j) & 1)) {
                    matches = false;
                    break;
                }
            }
            if (!matches) continue;

            double prior = 1.0;
            for (int i = 0; i < n; ++i) {
                prior *= pair_priors[i].at(static_cast<int>(((phase >> i) & 1) << 1 |
                                                            ((amp >> i) & 1)));
            }
            ++result.matched_candidates;
            result.matched_prior_mass += prior;
            if (prior > best_prior) {
                best_prior = prior;
                result.best = SyndromeString{n, amp, phase};
            }
        }
    }

    if (result.matched_candidates == 0) {
        throw std::runtime_error("decode_posterior: no candidate matches the parities");
    }
    result.success_probability =
        result.matched_prior_mass > 0.0 ? best_prior / result.matched_prior_mass : 0.0;
    return result;
}

DecodeResult decode_posterior(std::uint64_t parities, const std::vector<ParityMask>& masks,
                              int n_pairs, double fidelity) {
    check_pairs("decode_posterior", n_pairs, kMaxExhaustivePairs);
    const std::vector<BellDiagonal> priors(static_cast<std::size_t>(n_pairs),
                                           werner_state(fidelity));
    return decode_posterior(parities, masks, priors);
}

BreedingRun run_breeding(std::uint64_t n_trials, int n_pairs, int m, double fidelity,
                         double delta_bits, std::uint64_t seed) {
    if (n_trials < 1) {
        throw std::invalid_argument("run_breeding: need at least one trial");
    }
    check_pairs("run_breeding", n_pairs, kMaxExhaustivePairs);

    BreedingRun run;
    run.n_pairs = n_pairs;
    run.m = m;
    run.fidelity = fidelity;
    run.delta_bits = delta_bits;
    run.masks = m > 0 ? random_masks(m, n_pairs, seed) : std::vector<ParityMask>{};
    run.collision_bound_value =
        collision_bound(n_pairs, entropy(werner_state(fidelity)), m, delta_bits);
    run.trials.reserve(n_trials);

    const std::vector<BellDiagonal> priors(static_cast<std::size_t>(n_pairs),
                                           werner_state(fidelity));
    double failure_sum = 0.0;
    std::uint64_t wrong = 0;
    for (std::uint64_t t = 0; t < n_trials; ++t) {
        SplitMix64 rng(shot_stream(seed, t));
        const SyndromeString truth = random_syndrome_string(n_pairs, fidelity, rng);
        const std::uint64_t parities = collect_parities(truth, run.masks);
        const DecodeResult decoded = decode_posterior(parities, run.masks, priors);

        double truth_prior = 1.0;
        for (int i = 0; i < n_pairs; ++i) {
            truth_prior *= priors[static_cast<std::size_t>(i)][truth.label_at(i)];
        }
        const double truth_posterior = decoded.matched_prior_mass > 0.0
                                           ? truth_prior / decoded.matched_prior_mass
                                           : 0.0;

        failure_sum += 1.0 - truth_posterior;
        if (decoded.best != truth) ++wrong;
        run.trials.push_back({t, truth, decoded.best, decoded.success_probability,
                              truth_posterior, decoded.matched_candidates});
    }
    run.failure_probability = failure_sum / static_cast<double>(n_trials);
    run.wrong_decode_rate = static_cast<double>(wrong) / static_cast<double>(n_trials);
    return run;
}

void write_breeding_csv(std::ostream& os, const BreedingRun& run, int precision) {
    os << "trial,m,n_pairs,f,success_prob,matched_candidates\n";
    char buf[64];
    for (const auto& t : run.trials) {
        os << t.trial << ',' << run.m << ',' << run.n_pairs << ',';
        std::snprintf(buf, sizeof buf, "%.*f", precision, run.fidelity);
        os << buf << ',';
        std::snprintf(buf, sizeof buf, "%.*f", precision, t.success_probability);
        os << buf << ',' << t.matched_candidates << '\n';
    }
}

CollisionExperiment parity_collision_experiment(int n_pairs, int m, std::uint64_t trials,
                                                std::uint64_t seed) {
    if (m < 1) {
        throw std::invalid_argument("parity_collision_experiment: m must be >= 1");
    }
    check_pairs("parity_collision_experiment", n_pairs, kMaxMaskPairs);
    if (trials < 1) {
        throw std::invalid_argument("parity_collision_experiment: need at least one trial");
    }
    const std::uint32_t all =
        n_pairs >= 32 ? 0xFFFFFFFFu : ((std::uint32_t{1} << n_pairs) - 1);

    CollisionExperiment ex;
    ex.n_pairs = n_pairs;
    ex.m = m;
    ex.trials = trials;
    ex.expected_rate = std::exp2(static_cast<double>(-m));
    for (std::uint64_t t = 0; t < trials; ++t) {
        SplitMix64 rng(shot_stream(seed, t));
        SyndromeString x{n_pairs, static_cast<std::uint32_t>(rng.next()) & all,
                         static_cast<std::uint32_t>(rng.next()) & all};
        SyndromeString y = x;
        while (y == x) {
            y = SyndromeString{n_pairs, static_cast<std::uint32_t>(rng.next()) & all,
                               static_cast<std::uint32_t>(rng.next()) & all};
        }

        bool agree = true;
        for (int j = 0; j < m && agree; ++j) {
            const ParityMask mask{static_cast<std::uint32_t>(rng.next()) & all,
                                  static_cast<std::uint32_t>(rng.next()) & all};
            agree = subset_parity(x, mask) == subset_parity(y, mask);
        }
        if (agree) ++ex.collisions;
    }
    return ex;
}

}  // namespace purecode
