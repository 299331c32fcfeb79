// swnfock: CLI front end for the SWN Fock-representation toolkit.
//
// Exit codes: 0 success/converged, 1 parse or usage error, 2 domain
// violation (inadmissible input), 3 no convergence / undetermined verdict.

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "swnfock/io.hpp"
#include "swnfock/swnfock.hpp"

namespace fs = std::filesystem;
using namespace swnfock;

namespace {

struct GlobalOpts {
    std::string numeric_mode = "float";
    std::string format = "json";
};

std::vector<int> parse_levels(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

void print_report(const VerificationReport& rep, const GlobalOpts& g) {
    if (g.format == "csv")
        std::cout << io::emit_report_csv(rep);
    else
        std::cout << io::emit_report_json(rep) << "\n";
}

int cmd_kernel(const std::string& fpath, const std::string& gpath, const KernelConfig& cfg) {
    auto jf = io::load_json(fpath);
    auto jg = io::load_json(gpath);
    KernelValue k;
    if (io::looks_like_step(jf) && io::looks_like_step(jg)) {
        k = kernel_step(io::parse_step<double>(jf), io::parse_step<double>(jg), cfg);
    } else if (!io::looks_like_step(jf) && !io::looks_like_step(jg)) {
        k = kernel_quad(io::parse_sampled(jf), io::parse_sampled(jg), cfg);
    } else if (io::looks_like_step(jf)) {
        k = kernel_mixed(io::parse_step<double>(jf), io::parse_sampled(jg), cfg);
    } else {
        auto kv = kernel_mixed(io::parse_step<double>(jg), io::parse_sampled(jf), cfg);
        kv.value = std::conj(kv.value);
        k = kv;
    }
    std::cout << io::emit_kernel_value(k) << "\n";
    return 0;
}

template <class S>
int cmd_moment(const std::string& wordpath, double c) {
    auto word = io::parse_word<S>(io::load_json(wordpath));
    cplx<S> v = vacuum_expectation(word, scalar_from_double<S>(c));
    if constexpr (std::is_same_v<S, rational>) {
        std::cout << "{\"re\": " << io::fmt(v.re) << ", \"im\": " << io::fmt(v.im) << "}\n";
    } else {
        std::cout << io::fmt_cplx(v) << "\n";
    }
    return 0;
}

template <class S>
int cmd_verify(const std::string& fpath, const std::string& gpath, double c, int M, double tol) {
    auto f = io::parse_step<S>(io::load_json(fpath));
    auto g = gpath.empty() ? f : io::parse_step<S>(io::load_json(gpath));
    auto d = series_vs_closed(f, g, scalar_from_double<S>(c), M, tol);
    std::cout << io::emit_series_diagnostics(d) << "\n";
    return d.verdict == Verdict::Converged ? 0 : 3;
}

int cmd_gram(const std::string& dir, double c, const GlobalOpts&) {
    std::vector<fs::path> paths;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".json") paths.push_back(e.path());
    std::sort(paths.begin(), paths.end());
    if (paths.empty()) throw ParseError("gram: no .json files in " + dir);
    std::vector<StepFunction<double>> fs_;
    for (const auto& p : paths) fs_.push_back(io::parse_step<double>(io::load_json(p.string())));
    auto g = gram(fs_, c);
    std::cout << io::emit_gram(g) << "\n";
    return g.verdict == Verdict::Converged ? 0 : 3;
}

template <class S>
int cmd_probe(const std::string& fpath, double c, int M) {
    auto f = io::parse_step<S>(io::load_json(fpath));
    auto d = divergence_probe(f, scalar_from_double<S>(c), M);
    std::cout << io::emit_series_diagnostics(d) << "\n";
    return d.verdict == Verdict::Undetermined ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SWN algebra Fock-representation toolkit"};
    app.require_subcommand(1);
    GlobalOpts g;
    app.add_option("--numeric-mode", g.numeric_mode, "rational|float")
        ->check(CLI::IsMember({"rational", "float"}));
    app.add_option("--format", g.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

    std::string fpath, gpath, wordpath, fsdir, levels = "16,64,256,1024";
    KernelConfig cfg;
    int M = 40;
    double tol = 1e-8;

    auto* kernel_cmd = app.add_subcommand("kernel", "evaluate the exponential-vector kernel");
    kernel_cmd->add_option("--f", fpath)->required();
    kernel_cmd->add_option("--g", gpath)->required();
    kernel_cmd->add_option("--c", cfg.c);
    kernel_cmd->add_option("--tol", cfg.tol);

    auto* moment_cmd = app.add_subcommand("moment", "vacuum expectation of a generator word");
    moment_cmd->add_option("--word", wordpath)->required();
    moment_cmd->add_option("--c", cfg.c);

    auto* verify_cmd = app.add_subcommand("verify", "truncated series against the closed form");
    verify_cmd->add_option("--f", fpath)->required();
    verify_cmd->add_option("--g", gpath);
    verify_cmd->add_option("--c", cfg.c);
    verify_cmd->add_option("--M", M);
    verify_cmd->add_option("--tol", tol);

    auto* gram_cmd = app.add_subcommand("gram", "Gram matrix positivity over a directory");
    gram_cmd->add_option("--fs", fsdir)->required();
    gram_cmd->add_option("--c", cfg.c);

    auto* approx_cmd = app.add_subcommand("approx", "dominated convergence table");
    approx_cmd->add_option("--f", fpath)->required();
    approx_cmd->add_option("--levels", levels);
    approx_cmd->add_option("--c", cfg.c);
    approx_cmd->add_option("--tol", cfg.tol);

    auto* exchange_cmd = app.add_subcommand("exchange", "exchange-of-limits table");
    exchange_cmd->add_option("--f", fpath)->required();
    exchange_cmd->add_option("--levels", levels);
    exchange_cmd->add_option("--M", M);
    exchange_cmd->add_option("--c", cfg.c);

    auto* probe_cmd = app.add_subcommand("probe", "series divergence diagnostic");
    probe_cmd->add_option("--f", fpath)->required();
    probe_cmd->add_option("--c", cfg.c);
    probe_cmd->add_option("--M", M);

    CLI11_PARSE(app, argc, argv);
    const bool rational_mode = g.numeric_mode == "rational";

    try {
        if (*kernel_cmd) return cmd_kernel(fpath, gpath, cfg);
        if (*moment_cmd)
            return rational_mode ? cmd_moment<rational>(wordpath, cfg.c)
                                 : cmd_moment<double>(wordpath, cfg.c);
        if (*verify_cmd)
            return rational_mode ? cmd_verify<rational>(fpath, gpath, cfg.c, M, tol)
                                 : cmd_verify<double>(fpath, gpath, cfg.c, M, tol);
        if (*gram_cmd) return cmd_gram(fsdir, cfg.c, g);
        if (*approx_cmd) {
            auto f = io::parse_sampled(io::load_json(fpath));
            ApproxSchedule sched{parse_levels(levels)};
            print_report(convergence_report(f, sched, cfg), g);
            return 0;
        }
        if (*exchange_cmd) {
            auto f = io::parse_sampled(io::load_json(fpath));
            ApproxSchedule sched{parse_levels(levels)};
            auto rep = exchange_limits_report(f, sched, cfg.c, M);
            print_report(rep, g);
            return rep.pass() ? 0 : 3;
        }
        if (*probe_cmd)
            return rational_mode ? cmd_probe<rational>(fpath, cfg.c, M)
                                 : cmd_probe<double>(fpath, cfg.c, M);
    } catch (const DomainViolation& e) {
        std::cout << "{\"error\": \"DomainViolation\", \"detail\": \"" << e.what() << "\"}\n";
        return 2;
    } catch (const NoConvergence& e) {
        std::cout << "{\"error\": \"NoConvergence\", \"detail\": \"" << e.what() << "\"}\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
