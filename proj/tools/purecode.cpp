#include <algorithm>
#include <array>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "purecode/breeding.hpp"
#include "purecode/channel.hpp"
#include "purecode/protocol.hpp"
#include "purecode/recursion.hpp"

namespace {

// Default seed for every randomized command; fixed so bare invocations
// are reproducible. Override with --seed or PURECODE_SEED.
constexpr std::uint64_t kDefaultSeed = 123456789;

std::string fmt(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, v);
    return buf;
}

std::uint64_t resolve_seed(bool flag_given, std::uint64_t flag_value) {
    if (flag_given) return flag_value;
    if (const char* env = std::getenv("PURECODE_SEED")) {
        char* end = nullptr;
        errno = 0;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (errno != 0 || end == env || *end != '\0') {
            throw std::runtime_error("PURECODE_SEED is not an unsigned 64-bit integer: " +
                                     std::string(env));
        }
        return v;
    }
    return kDefaultSeed;
}

// CSV goes to `out` when given, else to stdout; the human-readable
// summary then goes to stdout or stderr respectively, so piping the CSV
// stays clean.
struct OutputTargets {
    std::ofstream file;
    std::ostream* csv = nullptr;
    std::ostream* summary = nullptr;
};

OutputTargets open_outputs(const std::string& out_path) {
    OutputTargets t;
    if (!out_path.empty()) {
        t.file.open(out_path, std::ios::binary | std::ios::trunc);
        if (!t.file) throw std::runtime_error("cannot open output file: " + out_path);
        t.csv = &t.file;
        t.summary = &std::cout;
    } else {
        t.csv = &std::cout;
        t.summary = &std::cerr;
    }
    return t;
}

int cmd_table2(int k_max, const std::string& out_path, int precision) {
    std::vector<double> thresholds(static_cast<std::size_t>(k_max) + 1, 0.0);
    int best_k = 1;
    for (int k = 1; k <= k_max; ++k) {
        thresholds[static_cast<std::size_t>(k)] = purecode::solve_threshold(k);
        if (thresholds[static_cast<std::size_t>(k)] < thresholds[static_cast<std::size_t>(best_k)])
            best_k = k;
    }

    std::printf(" k  f_threshold\n");
    for (int k = 1; k <= k_max; ++k) {
        std::printf("%2d  %s%s\n", k, fmt(thresholds[static_cast<std::size_t>(k)], precision).c_str(),
                    k == best_k ? "  Best" : "");
    }

    if (!out_path.empty()) {
        auto t = open_outputs(out_path);
        *t.csv << "k,f_threshold\n";
        for (int k = 1; k <= k_max; ++k) {
            *t.csv << k << ',' << fmt(thresholds[static_cast<std::size_t>(k)], precision) << '\n';
        }
    }
    return 0;
}

int cmd_yield_curve(const std::vector<int>& k_list, double f_min, double f_max, double step,
                    const std::string& out_path, int precision) {
    const auto curve = purecode::yield_curve(k_list, f_min, f_max, step);
    auto t = open_outputs(out_path);
    *t.csv << "k,f,D\n";
    for (const auto& point : curve) {
        *t.csv << point.k << ',' << fmt(point.f, precision) << ','
               << fmt(point.d_value, precision) << '\n';
    }
    return 0;
}

int cmd_simulate(int k, double f, std::uint64_t shots, std::uint64_t seed,
                 const std::string& out_path, int precision) {
    const auto counts = purecode::simulate_block(k, f, shots, seed);
    auto t = open_outputs(out_path);
    purecode::write_block_csv(*t.csv, counts, k);

    std::ostream& os = *t.summary;
    os << "k=" << k << " f=" << fmt(f, precision) << " shots=" << shots << " seed=" << seed
       << '\n';
    if (k > 12) {
        os << "analytic comparison skipped (exhaustive reference limited to k <= 12)\n";
        return 0;
    }

    const auto dist = purecode::enumerate_block(k, f);
    for (int stage = 1; stage < k; ++stage) {
        const std::uint32_t bit = std::uint32_t{1} << (stage - 1);
        std::uint64_t zero_count = 0;
        for (const auto& [outcome, n] : counts) {
            if (!(outcome.agreement_bits & bit)) zero_count += n;
        }
        double zero_mass = 0.0;
        for (const auto& [outcome, p] : dist) {
            if (!(outcome.agreement_bits & bit)) zero_mass += p;
        }
        os << "stage " << stage << ": p0 empirical "
           << fmt(static_cast<double>(zero_count) / static_cast<double>(shots), precision)
           << " analytic " << fmt(zero_mass, precision) << '\n';
    }

    // Conditional residual TVD per agreement string, worst case over the
    // strings that drew at least one shot.
    std::map<std::uint32_t, std::array<double, 4>> analytic;
    for (const auto& [outcome, p] : dist) {
        analytic[outcome.agreement_bits][static_cast<std::size_t>(
            purecode::index_of(outcome.residual))] = p;
    }
    double max_tvd = 0.0;
    for (auto it = counts.begin(); it != counts.end();) {
        const std::uint32_t bits = it->first.agreement_bits;
        std::array<double, 4> empirical{};
        double shots_here = 0.0;
        for (; it != counts.end() && it->first.agreement_bits == bits; ++it) {
            empirical[static_cast<std::size_t>(purecode::index_of(it->first.residual))] =
                static_cast<double>(it->second);
            shots_here += static_cast<double>(it->second);
        }
        const auto& ana = analytic.at(bits);
        const double mass = ana[0] + ana[1] + ana[2] + ana[3];
        double tvd = 0.0;
        for (std::size_t l = 0; l < 4; ++l) {
            tvd += std::abs(empirical[l] / shots_here - ana[l] / mass);
        }
        max_tvd = std::max(max_tvd, 0.5 * tvd);
    }
    os << "max conditional TVD: " << fmt(max_tvd, precision) << '\n';
    return 0;
}

int cmd_breed(int n_pairs, int m, double f, std::uint64_t trials, double delta_bits,
              std::uint64_t seed, const std::string& out_path, int precision) {
    const auto run = purecode::run_breeding(trials, n_pairs, m, f, delta_bits, seed);
    auto t = open_outputs(out_path);
    purecode::write_breeding_csv(*t.csv, run, precision);

    *t.summary << "trials " << trials << ": wrong-decode rate "
               << fmt(run.wrong_decode_rate, precision) << ", mean posterior failure "
               << fmt(run.failure_probability, precision) << ", collision bound "
               << fmt(run.collision_bound_value, precision) << " (delta "
               << fmt(delta_bits, 1) << " bits)\n";
    return 0;
}

int cmd_channel(const std::string& spec_path, int k, const std::string& out_path,
                int precision) {
    const auto spec = purecode::load_channel_spec(spec_path);
    const auto wf = purecode::channel_usable(spec, k);
    const char* verdict = wf.usable ? "yes" : "no";
    std::printf("f=%s f_c=%s k=%d usable=%s\n", fmt(wf.f, precision).c_str(),
                fmt(wf.f_c, precision).c_str(), k, verdict);

    if (!out_path.empty()) {
        auto t = open_outputs(out_path);
        *t.csv << "f,f_c,k,usable\n"
               << fmt(wf.f, precision) << ',' << fmt(wf.f_c, precision) << ',' << k << ','
               << verdict << '\n';
    }
    return wf.usable ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Yields and thresholds of incomplete-syndrome block purification on "
        "depolarizing channels"};
    app.require_subcommand(1);

    int k_max = 14;
    std::vector<int> k_list{1, 2, 3, 4, 5, 6, 7};
    int k = 5;
    double f = 0.85, breed_f = 0.95, f_min = 0.80, f_max = 1.0, step = 0.005, delta_bits = 2.0;
    std::uint64_t shots = 1000000, trials = 1000, seed = kDefaultSeed;
    int n_pairs = 8, m = 12;
    std::string out_path, spec_path;
    int precision = -1;  // per-command default when unset

    auto* table2 = app.add_subcommand("table2", "Threshold fidelity per block size");
    table2->add_option("--k-max", k_max, "Largest block size (1..24)")->capture_default_str();
    table2->add_option("--out", out_path, "Write CSV here as well");
    table2->add_option("--precision", precision, "Decimal places (default 4)");

    auto* yield = app.add_subcommand("yield_curve", "Yield D over a fidelity grid");
    yield->add_option("--k-list", k_list, "Block sizes")->capture_default_str();
    yield->add_option("--f-min", f_min, "Grid start")->capture_default_str();
    yield->add_option("--f-max", f_max, "Grid end (inclusive)")->capture_default_str();
    yield->add_option("--step", step, "Grid step")->capture_default_str();
    yield->add_option("--out", out_path, "CSV path (default stdout)");
    yield->add_option("--precision", precision, "Decimal places (default 4)");

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo block protocol histogram");
    simulate->add_option("--k", k, "Block size")->required();
    simulate->add_option("--f", f, "Pair fidelity")->required();
    simulate->add_option("--shots", shots, "Shots")->capture_default_str();
    simulate->add_option("--seed", seed, "RNG seed (also PURECODE_SEED)");
    simulate->add_option("--out", out_path, "Histogram CSV path (default stdout)");
    simulate->add_option("--precision", precision, "Decimal places (default 6)");

    auto* breed = app.add_subcommand("breed", "Random-parity collection and exhaustive decoding");
    breed->add_option("--n-pairs", n_pairs, "Pairs per trial (exhaustive limit 10)")
        ->capture_default_str();
    breed->add_option("--m", m, "Parities collected per trial")->capture_default_str();
    breed->add_option("--f", breed_f, "Pair fidelity")->capture_default_str();
    breed->add_option("--shots", trials, "Number of trials")->capture_default_str();
    breed->add_option("--delta-bits", delta_bits, "Typical-set slack in bits")
        ->capture_default_str();
    breed->add_option("--seed", seed, "RNG seed (also PURECODE_SEED)");
    breed->add_option("--out", out_path, "Per-trial CSV path (default stdout)");
    breed->add_option("--precision", precision, "Decimal places (default 6)");

    auto* channel = app.add_subcommand("channel", "Usability verdict for a channel spec");
    channel->add_option("spec", spec_path, "Channel spec JSON file")->required();
    channel->add_option("--k", k, "Block size to test against")->capture_default_str();
    channel->add_option("--out", out_path, "Verdict CSV path");
    channel->add_option("--precision", precision, "Decimal places (default 6)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (table2->parsed()) {
            if (k_max < 1 || k_max > 24) {
                throw std::runtime_error("table2: --k-max must be in [1, 24]");
            }
            return cmd_table2(k_max, out_path, precision < 0 ? 4 : precision);
        }
        if (yield->parsed()) {
            return cmd_yield_curve(k_list, f_min, f_max, step, out_path,
                                   precision < 0 ? 4 : precision);
        }
        if (simulate->parsed()) {
            const std::uint64_t s = resolve_seed(simulate->count("--seed") > 0, seed);
            return cmd_simulate(k, f, shots, s, out_path, precision < 0 ? 6 : precision);
        }
        if (breed->parsed()) {
            if (n_pairs < 1 || n_pairs > 10) {
                throw std::runtime_error(
                    "breed: --n-pairs exceeds the exhaustive decoding limit 10");
            }
            const std::uint64_t s = resolve_seed(breed->count("--seed") > 0, seed);
            return cmd_breed(n_pairs, m, breed_f, trials, delta_bits, s, out_path,
                             precision < 0 ? 6 : precision);
        }
        if (channel->parsed()) {
            return cmd_channel(spec_path, k, out_path, precision < 0 ? 6 : precision);
        }
    } catch (const std::exception& e) {
        std::cerr << "purecode: error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
