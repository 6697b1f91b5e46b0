// vdwforge: constructs r-colorings of Z/NZ with no monochromatic non-trivial
// k-term arithmetic progression, and exhaustively verifies certificates.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include "vdwforge/certificate.hpp"
#include "vdwforge/constructions.hpp"
#include "vdwforge/group.hpp"
#include "vdwforge/oracle.hpp"
#include "vdwforge/planner.hpp"
#include "vdwforge/progressions.hpp"
#include "vdwforge/rng.hpp"

namespace {

constexpr int kExitVerifyFail = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitRetryExhausted = 3;
constexpr int kExitIndeterminate = 4;
constexpr int kExitUsage = 64;
constexpr int kExitBadCertificate = 65;

std::string element_str(const vdw::Element& e) {
    if (e.size() == 1) return std::to_string(e[0]);
    std::string out = "(";
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(e[i]);
    }
    return out + ")";
}

void print_witness(const vdw::APWitness& w) {
    std::cout << "witness: color="
              << (w.color ? std::to_string(*w.color) : std::string("-"))
              << " x=" << element_str(w.start) << " d=" << element_str(w.diff)
              << " elements:";
    for (const auto& e : w.elements) std::cout << " " << element_str(e);
    std::cout << "\n";
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> parse_window(
    const std::string& text) {
    if (text.empty()) return std::nullopt;
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw CLI::ValidationError("--window", "expected lo:hi");
    try {
        const std::uint64_t lo = std::stoull(text.substr(0, colon));
        const std::uint64_t hi = std::stoull(text.substr(colon + 1));
        if (lo >= hi) throw CLI::ValidationError("--window", "need lo < hi");
        return std::make_pair(lo, hi);
    } catch (const std::invalid_argument&) {
        throw CLI::ValidationError("--window", "expected integers lo:hi");
    }
}

int resolve_threads(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("VDWFORGE_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

int cmd_construct(int k, int r, const std::string& eps_text, std::uint64_t seed,
                  const std::string& mode_text, const std::string& window_text,
                  const std::string& out_path, std::uint64_t retry_cap,
                  std::uint64_t resample_cap, int threads) {
    const vdw::Rational eps = vdw::parse_rational(eps_text);
    const auto mode = mode_text == "strict" ? vdw::PipelineMode::strict
                                            : vdw::PipelineMode::forced;
    vdw::PipelineOptions opts;
    opts.retry_cap = retry_cap;
    opts.resample_cap = resample_cap;
    opts.threads = resolve_threads(threads);

    const auto result = vdw::build_pipeline(k, r, eps, seed, mode,
                                            parse_window(window_text), opts);
    switch (result.status) {
        case vdw::PipelineResult::Status::verified: {
            vdw::save_certificate(out_path, *result.certificate);
            std::cout << "VERIFIED N=" << result.certificate->n << " k=" << k
                      << " r=" << r << " seed=" << seed
                      << " attempts=" << result.attempts << "\n";
            std::cout << "certificate written to " << out_path << "\n";
            return 0;
        }
        case vdw::PipelineResult::Status::infeasible:
            std::cout << "INFEASIBLE: " << result.message << "\n";
            if (result.plan) std::cout << result.plan->to_text();
            return kExitInfeasible;
        case vdw::PipelineResult::Status::retry_exhausted:
            std::cout << "RETRY-EXHAUSTED: " << result.message << "\n";
            return kExitRetryExhausted;
    }
    return kExitUsage;
}

int cmd_verify(const std::string& path, int threads) {
    vdw::Certificate cert;
    try {
        cert = vdw::load_certificate(path);
    } catch (const vdw::CertParseError& e) {
        std::cout << "malformed certificate: " << e.what() << "\n";
        return kExitBadCertificate;
    }
    vdw::Coloring coloring(vdw::Group::cyclic(cert.n), cert.r, cert.colors);
    const auto quick = vdw::find_mono_ap(coloring, cert.k, vdw::VerifyMode::fast,
                                         resolve_threads(threads));
    if (!quick) {
        std::cout << "VERIFIED N=" << cert.n << " k=" << cert.k << " r=" << cert.r
                  << "\n";
        return 0;
    }
    // report the canonical (lowest color, d, x) witness so output does not
    // depend on the thread count
    const auto witness = vdw::find_mono_ap_canonical(coloring, cert.k);
    std::cout << "FAILED N=" << cert.n << " k=" << cert.k << " r=" << cert.r << "\n";
    print_witness(*witness);
    return kExitVerifyFail;
}

int cmd_vdw(int k, int r, int limit, std::uint64_t budget) {
    const vdw::VdwResult res = vdw::vdw(k, r, limit, budget);
    std::cerr << "elapsed " << res.seconds << " s\n";
    if (res.kind == vdw::SearchKind::exact) {
        std::cout << "w(" << k << ";" << r << ") = " << res.value
                  << " nodes=" << res.nodes << "\n";
        return 0;
    }
    std::cout << "w(" << k << ";" << r << ") >= " << res.value
              << (res.kind == vdw::SearchKind::at_least ? " [limit reached]"
                                                        : " [indeterminate: node budget]")
              << " nodes=" << res.nodes << "\n";
    return kExitIndeterminate;
}

int cmd_kappa(std::uint64_t n, int r, int k_limit, std::uint64_t budget) {
    const vdw::KappaResult res = vdw::kappa_cyclic(n, r, k_limit, budget);
    if (res.kind == vdw::SearchKind::exact) {
        std::cout << "kappa(Z/" << n << "Z;" << r << ") = " << res.value
                  << " nodes=" << res.nodes << "\n";
        if (res.witness) {
            std::cout << "witness colors:";
            for (auto c : res.witness->colors) std::cout << " " << c;
            std::cout << "\n";
        }
        return 0;
    }
    std::cout << "kappa(Z/" << n << "Z;" << r << ") >= " << res.value
              << (res.kind == vdw::SearchKind::at_least ? " [k-limit reached]"
                                                        : " [indeterminate: node budget]")
              << " nodes=" << res.nodes << "\n";
    return kExitIndeterminate;
}

int cmd_params(int r, int k, const std::string& eps_text,
               const std::string& window_text, int k_min, int k_max) {
    const vdw::PaletteSplit split = vdw::decompose_palette(r);
    const vdw::BigInt base =
        vdw::BigInt(split.a) * vdw::big_pow(3, static_cast<std::uint64_t>(split.b));
    std::cout << "a=" << split.a << " b=" << split.b << " base=" << base.str()
              << (base > r ? " (beats " + std::to_string(r) + ")"
                           : " (no improvement)")
              << "\n";
    if (k_min > 0 && k_max >= k_min) {
        const vdw::BoundTable table = vdw::bound_table(r, k_min, k_max);
        for (const auto& row : table.rows) {
            std::cout << "k=" << row.k
                      << " erdos_lovasz=" << vdw::rational_to_string(row.erdos_lovasz)
                      << "\n";
        }
    }
    if (k > 0) {
        try {
            const auto plan = vdw::plan_pipeline(k, r, vdw::parse_rational(eps_text),
                                                 parse_window(window_text));
            std::cout << plan.to_text();
        } catch (const std::invalid_argument& e) {
            std::cout << "plan: " << e.what() << "\n";
            return kExitInfeasible;
        }
    }
    return 0;
}

int cmd_etset(std::uint64_t p, unsigned t) {
    const auto set = vdw::erdos_turan_set(p, t);
    for (std::size_t i = 0; i < set.size(); ++i)
        std::cout << (i ? " " : "") << set[i];
    std::cout << "\n";
    return 0;
}

int cmd_bench(std::uint64_t n, int k, int r, std::uint64_t seed, int threads) {
    vdw::Rng rng(seed);
    vdw::Coloring coloring(vdw::Group::cyclic(n), r);
    for (auto& c : coloring.colors)
        c = static_cast<std::uint16_t>(1 + rng.bounded(static_cast<std::uint64_t>(r)));
    const int nthreads = resolve_threads(threads);
    const auto t0 = std::chrono::steady_clock::now();
    const auto witness = vdw::find_mono_ap(coloring, k, vdw::VerifyMode::fast, nthreads);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "N=" << n << " k=" << k << " r=" << r << " threads=" << nthreads
              << " verdict=" << (witness ? "witness" : "free") << "\n";
    std::cout << "wall=" << secs << " s  elements/s=" << (secs > 0 ? n / secs : 0)
              << "\n";
    if (witness) print_witness(*witness);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vdwforge: AP-free colorings of Z/NZ with verified certificates"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "verifier threads (env VDWFORGE_THREADS)");

    // construct
    auto* construct = app.add_subcommand("construct", "build a coloring certificate");
    int c_k = 0, c_r = 0;
    std::string c_eps = "1/20", c_mode = "strict", c_window, c_out = "certificate.txt";
    std::uint64_t c_seed = 0, c_retry = 100, c_resample = 200000;
    construct->add_option("--k", c_k, "progression length")->required();
    construct->add_option("--r", c_r, "palette size")->required();
    construct->add_option("--epsilon", c_eps, "window/exponent parameter (default 1/20)");
    construct->add_option("--seed", c_seed, "RNG seed");
    construct->add_option("--mode", c_mode, "strict|forced")
        ->check(CLI::IsMember({"strict", "forced"}));
    construct->add_option("--window", c_window, "prime window override lo:hi, (lo, hi]");
    construct->add_option("--out", c_out, "certificate output path");
    construct->add_option("--retry-cap", c_retry, "blow-up attempts per stage");
    construct->add_option("--resample-cap", c_resample, "resampling cap per stage");

    // verify
    auto* verify = app.add_subcommand("verify", "re-verify a certificate file");
    std::string v_path;
    verify->add_option("path", v_path, "certificate file")->required();

    // vdw
    auto* vdw_cmd = app.add_subcommand("vdw", "exact van der Waerden number by backtracking");
    int w_k = 0, w_r = 0, w_limit = 100;
    std::uint64_t w_budget = 2'000'000'000;
    vdw_cmd->add_option("--k", w_k)->required();
    vdw_cmd->add_option("--r", w_r)->required();
    vdw_cmd->add_option("--limit", w_limit, "search horizon");
    vdw_cmd->add_option("--budget", w_budget, "node budget");

    // kappa
    auto* kappa = app.add_subcommand("kappa", "exact kappa(Z/NZ;r) by backtracking");
    std::uint64_t q_n = 0;
    int q_r = 0, q_klimit = 16;
    std::uint64_t q_budget = 500'000'000;
    kappa->add_option("--n", q_n)->required();
    kappa->add_option("--r", q_r)->required();
    kappa->add_option("--k-limit", q_klimit);
    kappa->add_option("--budget", q_budget, "node budget");

    // params
    auto* params = app.add_subcommand("params", "palette decomposition and feasibility");
    int p_r = 0, p_k = 0, p_kmin = 0, p_kmax = 0;
    std::string p_eps = "1/20", p_window;
    params->add_option("--r", p_r)->required();
    params->add_option("--k", p_k, "evaluate the pipeline plan for this k");
    params->add_option("--epsilon", p_eps);
    params->add_option("--window", p_window, "prime window override lo:hi");
    params->add_option("--k-min", p_kmin, "bound table range start");
    params->add_option("--k-max", p_kmax, "bound table range end");

    // etset
    auto* etset = app.add_subcommand("etset", "Erdos-Turan digit set of Z/p^tZ");
    std::uint64_t e_p = 0;
    unsigned e_t = 0;
    etset->add_option("--p", e_p)->required();
    etset->add_option("--t", e_t)->required();

    // bench
    auto* bench = app.add_subcommand("bench", "verifier throughput benchmark");
    std::uint64_t b_n = 100000, b_seed = 1;
    int b_k = 10, b_r = 4;
    bench->add_option("--n", b_n);
    bench->add_option("--k", b_k);
    bench->add_option("--r", b_r);
    bench->add_option("--seed", b_seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*construct)
            return cmd_construct(c_k, c_r, c_eps, c_seed, c_mode, c_window, c_out,
                                 c_retry, c_resample, threads);
        if (*verify) return cmd_verify(v_path, threads);
        if (*vdw_cmd) return cmd_vdw(w_k, w_r, w_limit, w_budget);
        if (*kappa) return cmd_kappa(q_n, q_r, q_klimit, q_budget);
        if (*params) return cmd_params(p_r, p_k, p_eps, p_window, p_kmin, p_kmax);
        if (*etset) return cmd_etset(e_p, e_t);
        if (*bench) return cmd_bench(b_n, b_k, b_r, b_seed, threads);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
