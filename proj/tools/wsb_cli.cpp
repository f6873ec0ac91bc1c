// Command-line front end: build an artifact, verify it, simulate the
// protocol, search for solution vectors, and export tables.
//
// Exit codes: 0 success, 1 verification violation, 2 unsupported or invalid
// input, 3 internal pipeline fault.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "wsb/assembly.hpp"
#include "wsb/export_tables.hpp"
#include "wsb/iis_sim.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUnsupported = 2;
constexpr int kInternal = 3;

wsb::ProtocolArtifact load_artifact(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open artifact file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return wsb::read_artifact(buf.str());
}

int cmd_build(int n, const std::string& out_path) {
    wsb::ProtocolArtifact art = wsb::pipeline(n);
    std::cout << "n=" << n << "\nx=";
    for (std::size_t i = 0; i < art.x.x.size(); ++i)
        std::cout << (i ? "," : "") << art.x.x[i];
    std::cout << "\ntunnels=" << art.tunnels.size()
              << "\naugmenting paths=" << art.path_count
              << "\nrenamed fiber orders=" << art.fiber_orders.size()
              << "\noverride vertices=" << art.overrides.size() << "\n";
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("cannot write artifact file: " + out_path);
        out << wsb::write_artifact(art);
        std::cout << "written=" << out_path << "\n";
    }
    return kOk;
}

int cmd_verify(const std::string& in_path, const std::string& mode,
               std::optional<std::uint64_t> seed, std::size_t trials) {
    wsb::ProtocolArtifact art = load_artifact(in_path);
    bool ok = true;
    if (mode == "targeted") {
        wsb::MatchingReport mr = wsb::verify_matching_exhaustive(art);
        std::cout << "matching vertices=" << mr.vertex_count
                  << " criticals=" << mr.critical_count << " perfect=" << mr.perfect() << "\n";
        for (const std::string& d : mr.details) std::cout << "violation " << d << "\n";
        ok = ok && mr.perfect();
        if (!ok) {  // the symmetry sweep presumes a perfect matching
            std::cout << "VERIFY FAIL\n";
            return kViolation;
        }
        wsb::SymmetryReport sr = wsb::verify_symmetry_targeted(art);
        std::cout << "symmetry checked=" << sr.vertices_checked
                  << " cross-checked=" << sr.cross_checked
                  << " violations=" << sr.violations.size() << "\n";
        for (std::size_t i = 0; i < sr.violations.size() && i < 10; ++i)
            std::cout << "violation " << sr.violations[i] << "\n";
        ok = ok && sr.ok();
    } else {  // sampled
        wsb::SymmetryReport sr = wsb::verify_symmetry_sampled(art, trials, *seed);
        std::cout << "symmetry sampled=" << sr.vertices_checked
                  << " violations=" << sr.violations.size() << "\n";
        for (std::size_t i = 0; i < sr.violations.size() && i < 10; ++i)
            std::cout << "violation " << sr.violations[i] << "\n";
        ok = ok && sr.ok();
        wsb::ComplianceReport cr = wsb::verify_compliance_sampled(art, trials / 10 + 1, *seed + 1);
        std::cout << "compliance sampled=" << cr.checked
                  << " violations=" << cr.violations.size() << "\n";
        for (std::size_t i = 0; i < cr.violations.size() && i < 10; ++i)
            std::cout << "violation " << cr.violations[i] << "\n";
        ok = ok && cr.ok();
    }
    std::cout << (ok ? "VERIFY PASS" : "VERIFY FAIL") << "\n";
    return ok ? kOk : kViolation;
}

int cmd_simulate(const std::string& in_path, std::size_t trials, std::uint64_t seed) {
    wsb::ProtocolArtifact art = load_artifact(in_path);
    wsb::SimReport rep = wsb::batch_simulate(art, trials, seed);
    std::cout << rep.summary() << "\n";
    return rep.ok() ? kOk : kViolation;
}

int cmd_search(int n) {
    wsb::SolveResult sr = wsb::primitive_solution_search(n);
    if (sr.status != wsb::SolveStatus::found) {
        std::cout << "n=" << n << ": no primitive solution"
                  << (wsb::is_prime_power(n) ? " (prime power)" : "") << "\n";
        return kUnsupported;
    }
    const wsb::PrimitiveSolution& x = *sr.solution;
    std::cout << "n=" << n << "\nx=";
    for (std::size_t i = 0; i < x.x.size(); ++i) std::cout << (i ? "," : "") << x.x[i];
    wsb::Int128 plus = 0, minus = 0;
    for (int k = 1; k <= n - 1; ++k) {
        wsb::Int128 c = wsb::binomial(n, k);
        int coeff = x.x[static_cast<std::size_t>(k - 1)];
        if (coeff == 1) plus += c;
        if (coeff == -1) minus += c;
    }
    std::cout << "\n|Sigma|=" << wsb::int128_to_string(plus + 1)
              << "\n|Lambda|=" << wsb::int128_to_string(minus + 1) << "\n";
    return kOk;
}

int cmd_export(const std::string& what, int t, const std::string& in_path,
               const std::string& out_path) {
    std::string text;
    if (what == "lambda-table") {
        text = wsb::export_lambda_tables(t);
    } else if (what == "paths") {
        wsb::ProtocolArtifact art = load_artifact(in_path);
        std::ostringstream os;
        for (const std::string& line : art.provenance) os << line << "\n";
        text = os.str();
    } else if (what == "artifact") {
        text = wsb::write_artifact(load_artifact(in_path));
    } else {
        throw std::invalid_argument("unknown export target: " + what);
    }
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("cannot write output file: " + out_path);
        out << text;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weak symmetry breaking protocol toolkit"};
    app.require_subcommand(1);

    int n = 6;
    std::uint64_t seed_value = 0;
    bool seed_set = false;
    std::size_t trials = 100000;
    std::string out_path, in_path, mode = "targeted", what = "lambda-table";
    int t = 1;
    int workers = 1;  // reserved; all current commands are single-threaded

    auto* build = app.add_subcommand("build", "construct and save a protocol artifact");
    build->add_option("--n", n, "number of ids")->required();
    build->add_option("--out", out_path, "artifact output path");

    auto* verify = app.add_subcommand("verify", "check an artifact");
    verify->add_option("--in", in_path, "artifact path")->required();
    verify->add_option("--mode", mode, "targeted or sampled")
        ->check(CLI::IsMember({"targeted", "sampled"}));
    verify->add_option("--trials", trials, "sample count for sampled mode");
    auto* vseed = verify->add_option("--seed", seed_value, "rng seed");

    auto* simulate = app.add_subcommand("simulate", "run random executions");
    simulate->add_option("--in", in_path, "artifact path")->required();
    simulate->add_option("--trials", trials, "number of executions");
    simulate->add_option("--seed", seed_value, "rng seed")->required();

    auto* search = app.add_subcommand("search", "find a solution vector");
    search->add_option("--n", n, "number of ids")->required();

    auto* exp = app.add_subcommand("export", "emit tables or path systems");
    exp->add_option("--what", what, "lambda-table, paths, or artifact");
    exp->add_option("--t", t, "table scale (ids = 6t)");
    exp->add_option("--in", in_path, "artifact path (paths/artifact export)");
    exp->add_option("--out", out_path, "output path (default stdout)");

    app.add_option("--workers", workers, "worker threads (reserved)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUnsupported;
    }
    seed_set = vseed->count() > 0 || simulate->parsed();

    try {
        if (build->parsed()) return cmd_build(n, out_path);
        if (verify->parsed()) {
            if (mode == "sampled" && !seed_set) {
                std::cerr << "error: sampled mode requires --seed\n";
                return kUnsupported;
            }
            return cmd_verify(in_path, mode, seed_value, trials);
        }
        if (simulate->parsed()) return cmd_simulate(in_path, trials, seed_value);
        if (search->parsed()) return cmd_search(n);
        if (exp->parsed()) return cmd_export(what, t, in_path, out_path);
        std::cerr << "error: no subcommand\n";
        return kUnsupported;
    } catch (const wsb::UnsupportedN& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUnsupported;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUnsupported;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUnsupported;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}
