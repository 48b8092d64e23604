#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "purecode/protocol.hpp"
#include "purecode/recursion.hpp"

using namespace purecode;

namespace {

double mass_of(const BlockDistribution& dist) {
    double total = 0.0;
    for (const auto& [outcome, p] : dist) total += p;
    return total;
}

bool distributions_close(const BlockDistribution& a, const BlockDistribution& b, double tol) {
    for (const auto& [outcome, p] : a) {
        const auto it = b.find(outcome);
        const double q = it == b.end() ? 0.0 : it->second;
        if (std::abs(p - q) > tol) return false;
    }
    for (const auto& [outcome, q] : b) {
        if (a.find(outcome) == a.end() && std::abs(q) > tol) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("one-pair enumeration is the pair state itself") {
    const auto dist = enumerate_block(1, 0.8);
    REQUIRE(dist.size() == 4);
    const auto w = werner_state(0.8);
    for (const auto& [outcome, p] : dist) {
        CHECK(outcome.agreement_bits == 0);
        CHECK(std::abs(p - w[outcome.residual]) <= 1e-15);
    }
}

TEST_CASE("two-pair agreement probability matches the fold step") {
    const double f = 0.7;
    const double g = (1.0 - f) / 3.0;
    const auto dist = enumerate_block(2, f);

    double agree_mass = 0.0;
    std::array<double, 4> conditional{};
    for (const auto& [outcome, p] : dist) {
        if (outcome.agreement_bits == 0) {
            agree_mass += p;
            conditional[static_cast<std::size_t>(index_of(outcome.residual))] = p;
        }
    }
    CHECK(std::abs(agree_mass - ((f + g) * (f + g) + 4 * g * g)) <= 1e-12);

    const auto step = branch_update(werner_state(f), f);
    for (int l = 0; l < 4; ++l) {
        CHECK(std::abs(conditional[static_cast<std::size_t>(l)] / agree_mass - step.m0.at(l)) <=
              1e-12);
    }
}

TEST_CASE("exhaustive conditional entropy equals the recursion value") {
    for (double f : {0.8, 0.85, 0.9, 0.95}) {
        for (int k = 1; k <= 8; ++k) {
            const double via_enumeration = expected_conditional_entropy(enumerate_block(k, f));
            const double via_recursion = expected_entropy(k, f).s_value;
            CHECK(std::abs(via_enumeration - via_recursion) <= 1e-12);
        }
    }
}

TEST_CASE("enumeration does not depend on which pair is the source") {
    const auto reference = enumerate_block(3, 0.8, 0);
    CHECK(distributions_close(reference, enumerate_block(3, 0.8, 1), 1e-15));
    CHECK(distributions_close(reference, enumerate_block(3, 0.8, 2), 1e-15));
    CHECK_THROWS_AS(enumerate_block(3, 0.8, 3), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_block(13, 0.8), std::invalid_argument);
}

TEST_CASE("sampler is deterministic and shards merge exactly") {
    const auto a = simulate_block(3, 0.85, 2000, 99);
    const auto b = simulate_block(3, 0.85, 2000, 99);
    CHECK(a == b);
    CHECK(a != simulate_block(3, 0.85, 2000, 100));

    BlockCounts merged = simulate_block(3, 0.85, 800, 99, 0);
    for (const auto& [outcome, n] : simulate_block(3, 0.85, 1200, 99, 800)) {
        merged[outcome] += n;
    }
    CHECK(merged == a);
}

TEST_CASE("sampled histogram approaches the exhaustive distribution") {
    const int k = 3;
    const double f = 0.85;
    const std::uint64_t shots = 1000000;
    const auto counts = simulate_block(k, f, shots, 1);
    const auto dist = enumerate_block(k, f);

    // Every cell within four binomial standard deviations.
    for (const auto& [outcome, p] : dist) {
        const auto it = counts.find(outcome);
        const double n = it == counts.end() ? 0.0 : static_cast<double>(it->second);
        const double sigma = std::sqrt(static_cast<double>(shots) * p * (1.0 - p));
        CHECK(std::abs(n - static_cast<double>(shots) * p) <= 4.0 * sigma);
    }

    // Conditional residual distribution per agreement string within
    // 5e-3 total variation.
    for (std::uint32_t bits = 0; bits < 4; ++bits) {
        double shots_here = 0.0, mass = 0.0;
        std::array<double, 4> emp{}, ana{};
        for (int l = 0; l < 4; ++l) {
            const BlockOutcome key{bits, kAllBellLabels[static_cast<std::size_t>(l)]};
            const auto ic = counts.find(key);
            emp[static_cast<std::size_t>(l)] =
                ic == counts.end() ? 0.0 : static_cast<double>(ic->second);
            shots_here += emp[static_cast<std::size_t>(l)];
            const auto id = dist.find(key);
            ana[static_cast<std::size_t>(l)] = id == dist.end() ? 0.0 : id->second;
            mass += ana[static_cast<std::size_t>(l)];
        }
        REQUIRE(shots_here > 0.0);
        double tvd = 0.0;
        for (int l = 0; l < 4; ++l) {
            tvd += std::abs(emp[static_cast<std::size_t>(l)] / shots_here -
                            ana[static_cast<std::size_t>(l)] / mass);
        }
        CHECK(0.5 * tvd < 5e-3);
    }
}

TEST_CASE("code view enumeration equals the pair view exactly") {
    for (double f : {0.81, 0.9, 0.99}) {
        for (int k = 1; k <= 5; ++k) {
            const auto bell_view = code_to_bell_view(enumerate_code_block(k, f));
            const auto direct = enumerate_block(k, f);
            REQUIRE(bell_view.size() == direct.size());
            CHECK(distributions_close(bell_view, direct, 1e-12));
            CHECK(std::abs(mass_of(bell_view) - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("code sampler corresponds to the pair sampler shot by shot") {
    const auto code = simulate_code_block(4, 0.85, 5000, 31);
    const auto pairs = simulate_block(4, 0.85, 5000, 31);
    CHECK(code_to_bell_view(code) == pairs);
}

TEST_CASE("two-qubit syndrome marginal") {
    const double f = 0.9;
    const double g = (1.0 - f) / 3.0;
    const auto dist = enumerate_code_block(2, f);
    double flipped = 0.0;
    for (const auto& [outcome, p] : dist) {
        if (outcome.syndrome_bits == 1) flipped += p;
    }
    // Relative amplitude flip: exactly one of the two qubits took X or Y.
    const double p_amp = 2.0 * g;
    CHECK(std::abs(flipped - 2.0 * p_amp * (1.0 - p_amp)) <= 1e-12);
}

TEST_CASE("perfect fidelity collapses both views") {
    const auto dist = enumerate_block(4, 1.0);
    REQUIRE(dist.size() == 1);
    CHECK(dist.begin()->first == BlockOutcome{0, BellLabel::PhiPlus});
    CHECK(dist.begin()->second == 1.0);

    const auto code = simulate_code_block(4, 1.0, 300, 5);
    REQUIRE(code.size() == 1);
    CHECK(code.begin()->first == CodeBlockOutcome{0, Pauli::I});
    CHECK(code.begin()->second == 300);
}

TEST_CASE("histogram csv format") {
    BlockCounts counts;
    counts[{0, BellLabel::PhiPlus}] = 7;
    counts[{2, BellLabel::PsiMinus}] = 1;
    std::ostringstream os;
    write_block_csv(os, counts, 3);
    CHECK(os.str() == "agreement_bits,residual,count\n00,Phi+,7\n01,Psi-,1\n");

    BlockCounts single;
    single[{0, BellLabel::PhiMinus}] = 2;
    std::ostringstream os1;
    write_block_csv(os1, single, 1);
    CHECK(os1.str() == "agreement_bits,residual,count\n,Phi-,2\n");
}

TEST_CASE("samplers validate their arguments") {
    CHECK_THROWS_AS(simulate_block(0, 0.8, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(simulate_block(3, 1.5, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(simulate_block(3, 0.8, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(simulate_code_block(25, 0.8, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_code_block(13, 0.8), std::invalid_argument);
}
