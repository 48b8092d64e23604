#include <doctest.h>

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "purecode/channel.hpp"

using namespace purecode;
using Complex = std::complex<double>;

namespace {

const KrausOp kOpI{Complex(1), Complex(0), Complex(0), Complex(1)};
const KrausOp kOpX{Complex(0), Complex(1), Complex(1), Complex(0)};
const KrausOp kOpY{Complex(0), Complex(0, -1), Complex(0, 1), Complex(0)};
const KrausOp kOpZ{Complex(1), Complex(0), Complex(0), Complex(-1)};

KrausOp scaled(const KrausOp& k, double s) {
    return {k[0] * s, k[1] * s, k[2] * s, k[3] * s};
}

std::vector<KrausOp> pauli_kraus(const std::array<double, 4>& p) {
    return {scaled(kOpI, std::sqrt(p[0])), scaled(kOpX, std::sqrt(p[1])),
            scaled(kOpY, std::sqrt(p[2])), scaled(kOpZ, std::sqrt(p[3]))};
}

std::string parse_failure(const std::string& text) {
    try {
        parse_channel_spec(text);
    } catch (const std::runtime_error& e) {
        return e.what();
    }
    return "(no exception)";
}

}  // namespace

TEST_CASE("depolarizing fidelity line") {
    CHECK(depolarizing_fidelity(1.0) == 1.0);
    CHECK(depolarizing_fidelity(0.0) == 0.25);
    CHECK(depolarizing_fidelity(0.7462) == (3.0 * 0.7462 + 1.0) / 4.0);
    CHECK_THROWS_AS(depolarizing_fidelity(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(depolarizing_fidelity(1.1), std::invalid_argument);
}

TEST_CASE("pauli probabilities land in canonical bell order") {
    const auto m = pauli_to_bell_diagonal({0.7, 0.1, 0.15, 0.05});
    CHECK(m[BellLabel::PhiPlus] == 0.7);
    CHECK(m[BellLabel::PsiPlus] == 0.1);   // X flips amplitude
    CHECK(m[BellLabel::PhiMinus] == 0.05); // Z flips phase
    CHECK(m[BellLabel::PsiMinus] == 0.15); // Y flips both
}

TEST_CASE("depolarizing channel state is the matching werner state") {
    ChannelSpec spec;
    spec.kind = ChannelKind::Depolarizing;
    spec.x = 0.9;
    CHECK(channel_bell_diagonal(spec) == werner_state(depolarizing_fidelity(0.9)));
    CHECK(channel_bell_diagonal(spec)[BellLabel::PhiPlus] == doctest::Approx(0.925));
}

TEST_CASE("twirling keeps the largest entry and forgets the rest") {
    CHECK(twirl_to_werner(werner_state(0.87)) == werner_state(0.87));

    const BellDiagonal skewed(0.1, 0.2, 0.6, 0.1);
    const auto t = twirl_to_werner(skewed);
    CHECK(t == werner_state(0.6));

    // Idempotent up to the constructor's renormalization (one ulp).
    const auto tt = twirl_to_werner(t);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(tt.at(i) - t.at(i)) <= 1e-15);

    CHECK(twirl_to_werner(BellDiagonal(0.25, 0.25, 0.25, 0.25)) == werner_state(0.25));
}

TEST_CASE("usable verdict straddles the threshold near 0.81") {
    ChannelSpec spec;
    spec.kind = ChannelKind::Depolarizing;
    spec.x = (4.0 * 0.81 - 1.0) / 3.0;  // working fidelity 0.81

    const auto k1 = channel_usable(spec, 1);
    CHECK(std::abs(k1.f - 0.81) <= 1e-12);
    CHECK(std::abs(k1.f_c - 0.8107) <= 2e-4);
    CHECK_FALSE(k1.usable);

    const auto k5 = channel_usable(spec, 5);
    CHECK(std::abs(k5.f_c - 0.8096) <= 2e-4);
    CHECK(k5.f_c < k1.f_c);
    CHECK(k5.usable);
}

TEST_CASE("usable verdict twirls non-werner channels first") {
    ChannelSpec spec;
    spec.kind = ChannelKind::Pauli;
    spec.pauli = {0.82, 0.06, 0.06, 0.06};
    CHECK(channel_usable(spec, 5).usable);
    CHECK(channel_usable(spec, 5).f == 0.82);

    // A channel dominated by X errors still works: twirling relabels the
    // largest Bell entry onto Phi+ before comparing with the threshold.
    spec.pauli = {0.05, 0.85, 0.05, 0.05};
    const auto r = channel_usable(spec, 2);
    CHECK(r.f == 0.85);
    CHECK(r.usable);
}

TEST_CASE("entangled fraction of pauli channels is the largest probability") {
    CHECK(fully_entangled_fraction(pauli_kraus({0.7, 0.1, 0.1, 0.1})) ==
          doctest::Approx(0.7).epsilon(1e-6));
    CHECK(fully_entangled_fraction(pauli_kraus({0.1, 0.7, 0.1, 0.1})) ==
          doctest::Approx(0.7).epsilon(1e-6));
    CHECK(fully_entangled_fraction(pauli_kraus({0.25, 0.25, 0.25, 0.25})) ==
          doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("entangled fraction of a unitary channel is one") {
    const double c = std::cos(0.55), s = std::sin(0.55);
    const Complex e = std::polar(1.0, 0.2);
    const KrausOp u{c / e, -s / e, s * e, c * e};
    const double fef = fully_entangled_fraction({u});
    CHECK(fef >= 1.0 - 1e-6);
    CHECK(fef <= 1.0 + 1e-9);
}

TEST_CASE("entangled fraction of amplitude damping matches the closed form") {
    const double gamma = 0.35;
    const KrausOp k0{Complex(1), Complex(0), Complex(0), Complex(std::sqrt(1.0 - gamma))};
    const KrausOp k1{Complex(0), Complex(std::sqrt(gamma)), Complex(0), Complex(0)};
    const double analytic = std::pow(1.0 + std::sqrt(1.0 - gamma), 2) / 4.0;

    const double fef = fully_entangled_fraction({k0, k1});
    CHECK(fef <= analytic + 1e-9);   // the search reports a lower bound
    CHECK(fef >= analytic - 1e-5);

    ChannelSpec spec;
    spec.kind = ChannelKind::Kraus;
    spec.kraus = {k0, k1};
    const auto verdict = channel_usable(spec, 5);
    CHECK(std::abs(verdict.f - analytic) <= 1e-4);
    CHECK(verdict.usable);
}

TEST_CASE("kraus lists are validated") {
    CHECK_THROWS_AS(fully_entangled_fraction({}), std::invalid_argument);
    const KrausOp half{Complex(1), Complex(0), Complex(0), Complex(std::sqrt(0.65))};
    CHECK_THROWS_AS(fully_entangled_fraction({half}), std::invalid_argument);
}

TEST_CASE("json specs round trip") {
    const auto depol = parse_channel_spec(R"({"kind": "depolarizing", "x": 0.9})");
    CHECK(depol.kind == ChannelKind::Depolarizing);
    CHECK(depol.x == 0.9);

    const auto pauli =
        parse_channel_spec(R"({"kind": "pauli", "probabilities": [0.7, 0.1, 0.15, 0.05]})");
    CHECK(pauli.kind == ChannelKind::Pauli);
    CHECK(pauli.pauli == std::array<double, 4>{0.7, 0.1, 0.15, 0.05});
    CHECK(channel_bell_diagonal(pauli) == pauli_to_bell_diagonal(pauli.pauli));

    const auto kraus = parse_channel_spec(
        R"({"kind": "kraus", "operators": [[[1,0],[0,0],[0,0],[1,0]]]})");
    CHECK(kraus.kind == ChannelKind::Kraus);
    REQUIRE(kraus.kraus.size() == 1);
    CHECK(fully_entangled_fraction(kraus.kraus) >= 1.0 - 1e-6);
}

TEST_CASE("json errors name the offending field") {
    CHECK(parse_failure(R"({"kind": "depolarizing"})") ==
          "channel spec: missing field 'x'");
    CHECK(parse_failure(R"({"kind": "depolarizing", "x": "hi"})") ==
          "channel spec: field 'x' must be a number");
    CHECK(parse_failure(R"({"kind": "depolarizing", "x": 1.5})") ==
          "channel spec: field 'x' outside [0, 1]");
    CHECK(parse_failure(R"({"kind": "pauli"})") ==
          "channel spec: missing field 'probabilities'");
    CHECK(parse_failure(R"({"kind": "pauli", "probabilities": [0.5, 0.5, 0.1]})") ==
          "channel spec: field 'probabilities' must be an array of 4 numbers (pI, pX, pY, pZ)");
    CHECK(parse_failure(R"({"kind": "pauli", "probabilities": [0.6, 0.5, 0.0, -0.1]})") ==
          "channel spec: field 'probabilities' has a negative entry");
    CHECK(parse_failure(R"({"kind": "pauli", "probabilities": [0.3, 0.3, 0.3, 0.3]})") ==
          "channel spec: field 'probabilities' must sum to 1 within 1e-12");
    CHECK(parse_failure(R"({"kind": "kraus", "operators": []})") ==
          "channel spec: field 'operators' must be a non-empty array");
    CHECK(parse_failure(R"({"kind": "banana"})") ==
          "channel spec: field 'kind' must be one of depolarizing, pauli, kraus");
    CHECK(parse_failure(R"([1, 2])") == "channel spec: top level must be an object");
    CHECK(parse_failure(R"({"x": 0.9})") == "channel spec: missing field 'kind'");

    const auto incomplete = parse_failure(
        R"({"kind": "kraus", "operators": [[[1,0],[0,0],[0,0],[0.5,0]]]})");
    CHECK(incomplete.find("channel spec: field 'operators':") == 0);
    CHECK(incomplete.find("completeness") != std::string::npos);

    CHECK(parse_failure("nonsense").find("channel spec: ") == 0);
}

TEST_CASE("channel spec files load and report their path on failure") {
    namespace fs = std::filesystem;
    const auto good = fs::temp_directory_path() / "purecode_channel_roundtrip.json";
    {
        std::ofstream out(good);
        out << R"({"kind": "depolarizing", "x": 0.8})";
    }
    const auto spec = load_channel_spec(good.string());
    CHECK(spec.kind == ChannelKind::Depolarizing);
    CHECK(spec.x == 0.8);
    fs::remove(good);

    const auto bad = fs::temp_directory_path() / "purecode_channel_bad.json";
    {
        std::ofstream out(bad);
        out << "{";
    }
    try {
        load_channel_spec(bad.string());
        CHECK(false);
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find(bad.string()) == 0);
    }
    fs::remove(bad);

    CHECK_THROWS_AS(load_channel_spec("/no/such/file.json"), std::runtime_error);
}
