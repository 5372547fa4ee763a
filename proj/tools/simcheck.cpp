// ============================================================================
// simcheck — refinement checking from the command line
// ============================================================================
//
// Reads two automata (or generates a benchmark pair) and decides whether the
// first implements the second, with optional non-Zeno restriction, both
// directions, relation dumps, and a region-level oracle cross-check.
//
// Exit codes: 0 the relation holds, 1 it does not, 2 usage or input error.
//
// ============================================================================

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "tsim/generators.hpp"
#include "tsim/nonzeno.hpp"
#include "tsim/oracle.hpp"
#include "tsim/parser.hpp"
#include "tsim/simulation.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void dump(const std::string& path, const tsim::SymbolicSet& s) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << s.to_string(true) << "\n";
}

void print_stats(const tsim::SimStats& st) {
    std::cout << "sweeps: " << st.sweeps
              << ", relation cells: " << st.relation_cells << ", time: " << st.seconds
              << " s\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Timed refinement checker"};
    app.get_formatter()->column_width(26);

    std::string impl_path, spec_path;
    bool nz = false, equiv = false, oracle = false, no_edgf = false,
         stats = false;
    std::string dump_relation, dump_nz;
    std::string bench, variant = "sim", scale = "1";
    std::size_t m = 1;

    app.add_option("--impl", impl_path, "implementation automaton file");
    app.add_option("--spec", spec_path, "specification automaton file");
    app.add_flag("--nz", nz, "restrict to non-Zeno implementation states");
    app.add_flag("--equiv", equiv, "check both directions");
    app.add_option("--dump-relation", dump_relation,
                   "write the converged relation to a file");
    app.add_option("--dump-nz", dump_nz,
                   "write the implementation's non-Zeno states to a file");
    app.add_flag("--oracle", oracle,
                 "cross-check the verdict against the region-game oracle");
    app.add_flag("--no-edgf", no_edgf,
                 "disable the early initial-state failure check");
    app.add_option("--bench", bench,
                   "generate a benchmark pair: fischer, csma, or prodcons")
        ->check(CLI::IsMember({"fischer", "csma", "prodcons"}));
    app.add_option("--m", m, "number of benchmark processes")
        ->check(CLI::PositiveNumber);
    app.add_option("--variant", variant,
                   "benchmark variant: ok/broken (fischer), "
                   "sim/nz-only/none (csma), sim/none (prodcons)");
    app.add_option("--scale", scale,
                   "rescale benchmark constants by num or num/den");
    app.add_flag("--stats", stats, "print iteration and size counters");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        tsim::Tea impl, spec;
        if (!bench.empty()) {
            if (!impl_path.empty() || !spec_path.empty())
                throw std::runtime_error("--bench excludes --impl/--spec");
            tsim::TeaPair pair;
            if (bench == "fischer") {
                if (variant != "ok" && variant != "broken")
                    throw std::runtime_error(
                        "fischer variants: ok, broken");
                pair = tsim::fischer_pair(
                    m, 10, 19,
                    variant == "ok" ? tsim::FischerVariant::Ok
                                    : tsim::FischerVariant::Broken);
            } else if (bench == "csma") {
                if (variant != "sim" && variant != "nz-only" &&
                    variant != "none")
                    throw std::runtime_error(
                        "csma variants: sim, nz-only, none");
                pair = tsim::csma_pair(
                    m, variant == "sim"       ? tsim::CsmaVariant::Sim
                       : variant == "nz-only" ? tsim::CsmaVariant::NzOnly
                                              : tsim::CsmaVariant::None);
            } else {
                if (variant != "sim" && variant != "none")
                    throw std::runtime_error("prodcons variants: sim, none");
                pair = tsim::prodcons_pair(
                    m, variant == "sim" ? tsim::ProdConsVariant::Sim
                                        : tsim::ProdConsVariant::None);
            }
            if (scale != "1") {
                const auto slash = scale.find('/');
                const std::int64_t num =
                    std::stoll(scale.substr(0, slash));
                const std::int64_t den =
                    slash == std::string::npos
                        ? 1
                        : std::stoll(scale.substr(slash + 1));
                pair = tsim::scaled_pair(pair, num, den);
            }
            impl = std::move(pair.impl);
            spec = std::move(pair.spec);
        } else {
            if (impl_path.empty() || spec_path.empty())
                throw std::runtime_error(
                    "need --impl and --spec (or --bench)");
            impl = tsim::parse_tea(slurp(impl_path), impl_path);
            spec = tsim::parse_tea(slurp(spec_path), spec_path);
        }
        if (oracle && nz)
            throw std::runtime_error(
                "--oracle covers the plain simulation check only");

        tsim::SimOptions opt;
        opt.early_initial_check = !no_edgf;

        auto check = [&](const tsim::Tea& a, const tsim::Tea& b) {
            return nz ? tsim::nz_simulation_check(a, b, opt)
                      : tsim::simulation_check(a, b, opt);
        };

        const tsim::SimVerdict fwd = check(impl, spec);
        std::cout << (fwd.holds ? "A1 implements A2.\n"
                                : "A1 does not implement A2.\n");
        if (stats) print_stats(fwd.stats);
        bool ok = fwd.holds;

        std::optional<tsim::SimVerdict> bwd;
        if (equiv) {
            bwd = check(spec, impl);
            std::cout << (bwd->holds ? "A2 implements A1.\n"
                                     : "A2 does not implement A1.\n");
            if (stats) print_stats(bwd->stats);
            ok = ok && bwd->holds;
        }

        if (oracle) {
            const tsim::OracleSimulation g =
                tsim::oracle_simulation(impl, spec);
            std::cout << (g.holds == fwd.holds
                              ? "oracle: agrees\n"
                              : "oracle: DISAGREES\n");
            if (stats)
                std::cout << "oracle relation regions: " << g.relation_regions
                          << "\n";
            if (bwd) {
                const tsim::OracleSimulation gb =
                    tsim::oracle_simulation(spec, impl);
                std::cout << (gb.holds == bwd->holds
                                  ? "oracle (reverse): agrees\n"
                                  : "oracle (reverse): DISAGREES\n");
            }
        }

        if (!dump_relation.empty()) dump(dump_relation, fwd.relation);
        if (!dump_nz.empty()) dump(dump_nz, tsim::non_zeno_states(impl));

        return ok ? 0 : 1;
    } catch (const tsim::ParseError& e) {
        std::cerr << "parse error at " << e.line() << ":" << e.col() << ": "
                  << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
