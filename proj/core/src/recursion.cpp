#include "purecode/recursion.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace purecode {

namespace {

using Vec4 = std::array<double, 4>;

// Linear pre-normalization images of one fold step. For v = (a, b, c, d)
// in canonical order and target weights (f, g, g, g):
//   agree:    (f a + g c,  g b + g d,  g a + f c,  g b + g d)
//   disagree: (g a + g c,  f b + g d,  g a + g c,  g b + f d)
// The entry sums are the branch probabilities; applied to an unnormalized
// branch vector they propagate (branch mass) * (conditional state) exactly.
inline Vec4 agree_image(const Vec4& v, double f, double g) {
    return {f * v[0] + g * v[2], g * v[1] + g * v[3], g * v[0] + f * v[2], g * v[1] + g * v[3]};
}

inline Vec4 disagree_image(const Vec4& v, double f, double g) {
    return {g * v[0] + g * v[2], f * v[1] + g * v[3], g * v[0] + g * v[2], g * v[1] + f * v[3]};
}

inline double sum4(const Vec4& v) {
    return v[0] + v[1] + v[2] + v[3];
}

// Entropy in bits of v / sum(v), with 0 log 0 = 0.
double entropy_of_unnormalized(const Vec4& v, double sum) {
    double acc = 0.0;
    for (double x : v) {
        if (x > 0.0) acc -= x * std::log2(x);
    }
    return acc / sum + std::log2(sum);
}

void check_fidelity(double fidelity, const char* who) {
    if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
        throw std::invalid_argument(std::string(who) + ": fidelity " + std::to_string(fidelity) +
                                    " outside [0, 1]");
    }
}

struct Accumulator {
    double entropy = 0.0;
    double mass = 0.0;
};

// Depth-first, agree branch before disagree branch, so contributions
// accumulate in a fixed order independent of any evaluation strategy.
void accumulate_leaves(const Vec4& v, int remaining_folds, double f, double g, Accumulator& acc) {
    const double mass = sum4(v);
    if (mass <= 0.0) return;  // unreachable branch, carries no weight
    if (remaining_folds == 0) {
        acc.entropy += mass * entropy_of_unnormalized(v, mass);
        acc.mass += mass;
        return;
    }
    accumulate_leaves(agree_image(v, f, g), remaining_folds - 1, f, g, acc);
    accumulate_leaves(disagree_image(v, f, g), remaining_folds - 1, f, g, acc);
}

}  // namespace

BranchUpdate branch_update(const BellDiagonal& m, double fidelity) {
    check_fidelity(fidelity, "branch_update");
    const double g = (1.0 - fidelity) / 3.0;
    const Vec4 v0 = agree_image(m.probs(), fidelity, g);
    const Vec4 v1 = disagree_image(m.probs(), fidelity, g);
    const double s0 = sum4(v0);
    const double s1 = sum4(v1);

    const BellDiagonal uniform(0.25, 0.25, 0.25, 0.25);
    if (s0 <= 0.0) {
        return {0.0, uniform, 1.0, BellDiagonal{{v1[0] / s1, v1[1] / s1, v1[2] / s1, v1[3] / s1}},
                false, true};
    }
    if (s1 <= 0.0) {
        return {1.0, BellDiagonal{{v0[0] / s0, v0[1] / s0, v0[2] / s0, v0[3] / s0}}, 0.0, uniform,
                true, false};
    }
    return {s0, BellDiagonal{{v0[0] / s0, v0[1] / s0, v0[2] / s0, v0[3] / s0}},
            s1, BellDiagonal{{v1[0] / s1, v1[1] / s1, v1[2] / s1, v1[3] / s1}}, true, true};
}

RecursionResult expected_entropy(int k, double fidelity, int max_k) {
    if (k < 1 || k > max_k) {
        throw std::invalid_argument("expected_entropy: k = " + std::to_string(k) +
                                    " outside [1, " + std::to_string(max_k) + "]");
    }
    check_fidelity(fidelity, "expected_entropy");
    const double g = (1.0 - fidelity) / 3.0;
    const Vec4 root{fidelity, g, g, g};

    Accumulator acc;
    accumulate_leaves(root, k - 1, fidelity, g, acc);
    return {k, fidelity, acc.entropy, std::uint64_t{1} << (k - 1), acc.mass};
}

std::vector<BranchLeaf> enumerate_branches(int k, double fidelity) {
    constexpr int kMaxMaterialized = 20;
    if (k < 1 || k > kMaxMaterialized) {
        throw std::invalid_argument("enumerate_branches: k = " + std::to_string(k) +
                                    " outside [1, " + std::to_string(kMaxMaterialized) + "]");
    }
    check_fidelity(fidelity, "enumerate_branches");
    const double g = (1.0 - fidelity) / 3.0;

    std::vector<BranchLeaf> leaves(std::size_t{1} << (k - 1));
    const auto fill = [&](const auto& self, const Vec4& v, int stage, std::uint32_t path) -> void {
        if (stage == k - 1) {
            BranchLeaf& leaf = leaves[path];
            leaf.path = path;
            leaf.probability = sum4(v);
            if (leaf.probability > 0.0) {
                for (int i = 0; i < 4; ++i) leaf.residual[i] = v[i] / leaf.probability;
            } else {
                leaf.probability = 0.0;
                leaf.residual = {0.25, 0.25, 0.25, 0.25};
            }
            return;
        }
        self(self, agree_image(v, fidelity, g), stage + 1, path);
        self(self, disagree_image(v, fidelity, g), stage + 1,
             path | (std::uint32_t{1} << stage));
    };
    fill(fill, Vec4{fidelity, g, g, g}, 0, 0);
    return leaves;
}

YieldPoint yield_at(int k, double fidelity) {
    const RecursionResult r = expected_entropy(k, fidelity);
    const double d = (1.0 - r.s_value) / static_cast<double>(k);
    return {fidelity, k, d > 0.0 ? d : 0.0};
}

double solve_threshold(int k) {
    constexpr double kScanLo = 0.75;
    constexpr double kScanHi = 0.90;
    constexpr double kScanStep = 1e-3;
    constexpr double kRootTolerance = 1e-8;

    const auto residual = [k](double f) { return expected_entropy(k, f).s_value - 1.0; };

    const int steps = static_cast<int>(std::round((kScanHi - kScanLo) / kScanStep));
    double prev_f = kScanLo;
    double prev_r = residual(prev_f);
    double lo = 0.0, hi = 0.0, lo_r = 0.0;
    bool bracketed = false;
    for (int i = 1; i <= steps; ++i) {
        const double f = kScanLo + i * kScanStep;
        const double r = residual(f);
        if (prev_r == 0.0) return prev_f;
        if ((prev_r > 0.0) != (r > 0.0)) {
            lo = prev_f;
            hi = f;
            lo_r = prev_r;
            bracketed = true;
            break;
        }
        prev_f = f;
        prev_r = r;
    }
    if (!bracketed) {
        throw std::runtime_error("solve_threshold: no sign change of S(k, f) - 1 for k = " +
                                 std::to_string(k) + " on [0.75, 0.90]; solver regression?");
    }

    while (hi - lo > kRootTolerance) {
        const double mid = 0.5 * (lo + hi);
        const double r = residual(mid);
        if (r == 0.0) return mid;
        if ((r > 0.0) == (lo_r > 0.0)) {
            lo = mid;
            lo_r = r;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<YieldPoint> yield_curve(const std::vector<int>& k_list, double f_min, double f_max,
                                    double step) {
    if (k_list.empty()) {
        throw std::invalid_argument("yield_curve: empty k list");
    }
    if (!(f_min >= 0.0 && f_min < f_max && f_max <= 1.0)) {
        throw std::invalid_argument("yield_curve: need 0 <= f_min < f_max <= 1");
    }
    if (!(step > 0.0)) {
        throw std::invalid_argument("yield_curve: step must be positive");
    }

    const int points = static_cast<int>(std::floor((f_max - f_min) / step + 1e-9)) + 1;
    std::vector<YieldPoint> curve;
    curve.reserve(k_list.size() * static_cast<std::size_t>(points));
    for (int k : k_list) {
        for (int i = 0; i < points; ++i) {
            const double f = std::min(f_min + i * step, f_max);
            curve.push_back(yield_at(k, f));
        }
    }
    return curve;
}

}  // namespace purecode
