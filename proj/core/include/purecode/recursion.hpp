#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "purecode/bell.hpp"

namespace purecode {

/// Largest block size the exact recursion accepts by default. 2^(k-1)
/// branches are enumerated, so 24 keeps a single evaluation sub-second.
inline constexpr int kMaxBlockSize = 24;

/// One BXOR-and-compare step against a fresh Werner target: the branch
/// probabilities and the post-selected source states.
///
/// When a branch has probability exactly zero its state slot holds a
/// uniform placeholder and the matching reachable flag is false.
struct BranchUpdate {
    double p0;        ///< probability the measured target amplitudes agree
    BellDiagonal m0;  ///< source state conditioned on agreement
    double p1;        ///< probability they disagree
    BellDiagonal m1;  ///< source state conditioned on disagreement
    bool m0_reachable;
    bool m1_reachable;
};

/// Branch probabilities and post-selected updates for source state `m`
/// folded with one target pair drawn from werner_state(fidelity).
BranchUpdate branch_update(const BellDiagonal& m, double fidelity);

/// Result of the expected-entropy recursion S(k, W_f).
struct RecursionResult {
    int k;
    double f;
    double s_value;                ///< expected residual entropy, bits
    std::uint64_t leaf_count;      ///< 2^(k-1)
    double leaf_probability_sum;   ///< total leaf mass, 1 up to rounding
};

/// Expected entropy of the residual source pair after folding k-1 target
/// pairs into one source, all drawn from werner_state(fidelity):
///   S(1, M) = h(M),  S(n, M) = p0 * S(n-1, M0) + p1 * S(n-1, M1).
/// Evaluated by exact enumeration of all 2^(k-1) branches carrying
/// unnormalized 4-vectors; states are normalized only inside h.
/// Rejects k < 1 and k > max_k.
RecursionResult expected_entropy(int k, double fidelity, int max_k = kMaxBlockSize);

/// One leaf of the branch tree: the disagreement pattern, its probability
/// and the conditional residual state.
struct BranchLeaf {
    std::uint32_t path;  ///< bit i-1 = 1 iff the stage-i comparison disagreed
    double probability;
    std::array<double, 4> residual;  ///< normalized; uniform placeholder if probability is 0
};

/// All 2^(k-1) leaves in path order. Materializes the whole tree, so k is
/// capped at 20 here; use expected_entropy for larger blocks.
std::vector<BranchLeaf> enumerate_branches(int k, double fidelity);

/// Yield of distillable Phi+ pairs per channel use at block size k.
struct YieldPoint {
    double f;
    int k;
    double d_value;  ///< max(0, (1 - S(k, f)) / k)
};

YieldPoint yield_at(int k, double fidelity);

/// The fidelity f* where S(k, f) = 1: the threshold below which block
/// size k stops producing yield. Locates a sign change of S - 1 by
/// scanning f in [0.75, 0.90] at step 1e-3, then bisects to |df| < 1e-8.
/// Throws std::runtime_error if no bracket is found.
double solve_threshold(int k);

/// Grid evaluation of yield_at, k outer (in the order given), f inner
/// ascending. The last grid point is clamped to f_max.
std::vector<YieldPoint> yield_curve(const std::vector<int>& k_list, double f_min, double f_max,
                                    double step);

}  // namespace purecode
