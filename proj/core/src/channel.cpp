#include "purecode/channel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>
#include <json.hpp>

#include "purecode/recursion.hpp"

namespace purecode {

namespace {

using Eigen::Matrix2cd;
using Eigen::Matrix4cd;
using Eigen::Vector4cd;
using Complex = std::complex<double>;

constexpr double kCompletenessTolerance = 1e-9;
constexpr double kPauliSumTolerance = 1e-12;

Matrix2cd to_matrix(const KrausOp& k) {
    Matrix2cd m;
    m << k[0], k[1], k[2], k[3];
    return m;
}

void check_completeness(const std::vector<KrausOp>& kraus, const char* who) {
    if (kraus.empty()) {
        throw std::invalid_argument(std::string(who) + ": empty Kraus operator list");
    }
    Matrix2cd sum = Matrix2cd::Zero();
    for (const auto& k : kraus) {
        const Matrix2cd m = to_matrix(k);
        sum += m.adjoint() * m;
    }
    const double err = (sum - Matrix2cd::Identity()).cwiseAbs().maxCoeff();
    if (err > kCompletenessTolerance) {
        std::ostringstream os;
        os << who << ": Kraus operators violate completeness by " << err;
        throw std::invalid_argument(os.str());
    }
}

// Choi state of the channel acting on the transmitted (second) qubit of
// Phi+. Basis index = 2 * kept bit + transmitted bit.
Matrix4cd choi_state(const std::vector<KrausOp>& kraus) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Matrix4cd rho = Matrix4cd::Zero();
    for (const auto& k : kraus) {
        Vector4cd v;
        v << k[0] * inv_sqrt2, k[2] * inv_sqrt2, k[1] * inv_sqrt2, k[3] * inv_sqrt2;
        rho += v * v.adjoint();
    }
    return rho;
}

std::array<Vector4cd, 4> bell_basis() {
    const double s = 1.0 / std::sqrt(2.0);
    std::array<Vector4cd, 4> b;
    b[0] << s, 0, 0, s;    // Phi+
    b[1] << 0, s, s, 0;    // Psi+
    b[2] << s, 0, 0, -s;   // Phi-
    b[3] << 0, s, -s, 0;   // Psi-
    return b;
}

// W(alpha, beta, gamma) = Rz(alpha) Ry(beta) Rz(gamma).
Matrix2cd euler_unitary(double alpha, double beta, double gamma) {
    const double c = std::cos(beta / 2.0);
    const double s = std::sin(beta / 2.0);
    const Complex ea = std::polar(1.0, -alpha / 2.0);
    const Complex eg = std::polar(1.0, -gamma / 2.0);
    Matrix2cd w;
    w << ea * c * eg, -ea * s * std::conj(eg), std::conj(ea) * s * eg,
        std::conj(ea) * c * std::conj(eg);
    return w;
}

// <zeta| rho |zeta> with zeta = (W x I) Phi+, i.e. zeta[2i+j] = W_ij / sqrt(2).
double overlap_at(const Matrix4cd& rho, double alpha, double beta, double gamma) {
    const Matrix2cd w = euler_unitary(alpha, beta, gamma);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Vector4cd zeta;
    zeta << w(0, 0) * inv_sqrt2, w(0, 1) * inv_sqrt2, w(1, 0) * inv_sqrt2, w(1, 1) * inv_sqrt2;
    return (zeta.adjoint() * rho * zeta)(0, 0).real();
}

struct Alignment {
    double alpha = 0.0, beta = 0.0, gamma = 0.0;
    double value = 0.0;
};

constexpr double kPi = 3.14159265358979323846;

// Coarse 16 x 17 x 16 grid then pattern search with halving steps. The
// fixed grid keeps the result deterministic; the refined value is a
// lower bound on the true maximum.
Alignment search_alignment(const Matrix4cd& rho) {
    Alignment best;
    best.value = -1.0;
    for (int ia = 0; ia < 16; ++ia) {
        const double alpha = 2.0 * kPi * ia / 16.0;
        for (int ib = 0; ib <= 16; ++ib) {
            const double beta = kPi * ib / 16.0;
            for (int ig = 0; ig < 16; ++ig) {
                const double gamma = 2.0 * kPi * ig / 16.0;
                const double v = overlap_at(rho, alpha, beta, gamma);
                if (v > best.value) best = {alpha, beta, gamma, v};
            }
        }
    }

    double step = 2.0 * kPi / 16.0;
    while (step > 1e-6) {
        bool improved = false;
        const std::array<std::array<double, 3>, 6> moves{{{step, 0, 0},
                                                          {-step, 0, 0},
                                                          {0, step, 0},
                                                          {0, -step, 0},
                                                          {0, 0, step},
                                                          {0, 0, -step}}};
        for (const auto& mv : moves) {
            const double a = best.alpha + mv[0];
            const double b = std::clamp(best.beta + mv[1], 0.0, kPi);
            const double g = best.gamma + mv[2];
            const double v = overlap_at(rho, a, b, g);
            if (v > best.value) {
                best = {a, b, g, v};
                improved = true;
            }
        }
        if (!improved) step *= 0.5;
    }
    return best;
}

BellDiagonal aligned_bell_diagonal(const std::vector<KrausOp>& kraus) {
    const Matrix4cd rho = choi_state(kraus);
    const Alignment a = search_alignment(rho);

    // Rotate the maximizing zeta onto Phi+: conjugate rho by W^dagger on
    // the kept qubit and read the Bell-basis diagonal.
    const Matrix2cd w = euler_unitary(a.alpha, a.beta, a.gamma);
    Matrix4cd lift = Matrix4cd::Zero();
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            lift(2 * i, 2 * j) = std::conj(w(j, i));
            lift(2 * i + 1, 2 * j + 1) = std::conj(w(j, i));
        }
    }
    const Matrix4cd rotated = lift * rho * lift.adjoint();

    const auto basis = bell_basis();
    std::array<double, 4> diag{};
    for (int l = 0; l < 4; ++l) {
        diag[static_cast<std::size_t>(l)] =
            (basis[static_cast<std::size_t>(l)].adjoint() * rotated *
             basis[static_cast<std::size_t>(l)])(0, 0)
                .real();
    }
    return BellDiagonal(diag);
}

[[noreturn]] void spec_error(const std::string& message) {
    throw std::runtime_error("channel spec: " + message);
}

double require_number(const nlohmann::json& j, const char* field) {
    if (!j.contains(field)) spec_error(std::string("missing field '") + field + "'");
    const auto& v = j.at(field);
    if (!v.is_number()) spec_error(std::string("field '") + field + "' must be a number");
    return v.get<double>();
}

}  // namespace

double depolarizing_fidelity(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::invalid_argument("depolarizing_fidelity: x outside [0, 1]");
    }
    return (3.0 * x + 1.0) / 4.0;
}

BellDiagonal pauli_to_bell_diagonal(const std::array<double, 4>& p) {
    return BellDiagonal(p[0], p[1], p[3], p[2]);
}

BellDiagonal twirl_to_werner(const BellDiagonal& m) {
    const auto& p = m.probs();
    return werner_state(*std::max_element(p.begin(), p.end()));
}

double fully_entangled_fraction(const std::vector<KrausOp>& kraus) {
    check_completeness(kraus, "fully_entangled_fraction");
    return search_alignment(choi_state(kraus)).value;
}

BellDiagonal channel_bell_diagonal(const ChannelSpec& spec) {
    switch (spec.kind) {
        case ChannelKind::Depolarizing:
            return werner_state(depolarizing_fidelity(spec.x));
        case ChannelKind::Pauli:
            return pauli_to_bell_diagonal(spec.pauli);
        case ChannelKind::Kraus:
            check_completeness(spec.kraus, "channel_bell_diagonal");
            return aligned_bell_diagonal(spec.kraus);
    }
    throw std::invalid_argument("channel_bell_diagonal: unknown channel kind");
}

WorkingFidelity channel_usable(const ChannelSpec& spec, int k) {
    const BellDiagonal werner = twirl_to_werner(channel_bell_diagonal(spec));
    WorkingFidelity result;
    result.f = werner[BellLabel::PhiPlus];
    result.f_c = solve_threshold(k);
    result.usable = result.f >= result.f_c;
    return result;
}

ChannelSpec parse_channel_spec(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        spec_error(e.what());
    }
    if (!j.is_object()) spec_error("top level must be an object");
    if (!j.contains("kind")) spec_error("missing field 'kind'");
    if (!j.at("kind").is_string()) spec_error("field 'kind' must be a string");
    const std::string kind = j.at("kind").get<std::string>();

    ChannelSpec spec;
    if (kind == "depolarizing") {
        spec.kind = ChannelKind::Depolarizing;
        spec.x = require_number(j, "x");
        if (!(spec.x >= 0.0 && spec.x <= 1.0)) spec_error("field 'x' outside [0, 1]");
        return spec;
    }
    if (kind == "pauli") {
        spec.kind = ChannelKind::Pauli;
        if (!j.contains("probabilities")) spec_error("missing field 'probabilities'");
        const auto& probs = j.at("probabilities");
        if (!probs.is_array() || probs.size() != 4) {
            spec_error("field 'probabilities' must be an array of 4 numbers (pI, pX, pY, pZ)");
        }
        double sum = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            if (!probs[i].is_number()) spec_error("field 'probabilities' must hold numbers");
            spec.pauli[i] = probs[i].get<double>();
            if (spec.pauli[i] < 0.0) spec_error("field 'probabilities' has a negative entry");
            sum += spec.pauli[i];
        }
        if (std::abs(sum - 1.0) > kPauliSumTolerance) {
            spec_error("field 'probabilities' must sum to 1 within 1e-12");
        }
        return spec;
    }
    if (kind == "kraus") {
        spec.kind = ChannelKind::Kraus;
        if (!j.contains("operators")) spec_error("missing field 'operators'");
        const auto& ops = j.at("operators");
        if (!ops.is_array() || ops.empty()) {
            spec_error("field 'operators' must be a non-empty array");
        }
        for (const auto& op : ops) {
            if (!op.is_array() || op.size() != 4) {
                spec_error("field 'operators': each operator is 4 row-major [re, im] entries");
            }
            KrausOp k;
            for (std::size_t i = 0; i < 4; ++i) {
                const auto& entry = op[i];
                if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
                    !entry[1].is_number()) {
                    spec_error("field 'operators': entries must be [re, im] number pairs");
                }
                k[i] = Complex(entry[0].get<double>(), entry[1].get<double>());
            }
            spec.kraus.push_back(k);
        }
        try {
            check_completeness(spec.kraus, "parse_channel_spec");
        } catch (const std::invalid_argument& e) {
            spec_error(std::string("field 'operators': ") + e.what());
        }
        return spec;
    }
    spec_error("field 'kind' must be one of depolarizing, pauli, kraus");
}

ChannelSpec load_channel_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open channel spec file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_channel_spec(buffer.str());
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

}  // namespace purecode
