#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qwalk/bounds.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/graph_io.hpp"
#include "qwalk/hamiltonian.hpp"
#include "qwalk/oracle.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/walks.hpp"

using nlohmann::json;
using namespace qwalk;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitUsage = 64;

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

int thread_budget() {
    const char* env = std::getenv("QWALK_THREADS");
    const int requested = env ? std::atoi(env) : 0;
    if (requested < 0) return 1;
    if (requested == 0) { // auto
        const unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : static_cast<int>(hw);
    }
    return requested;
}

struct WellPair {
    Vertex well;
    Vertex image;
    Involution inv;
};

WellPair require_well_pair(const GraphFile& gf) {
    if (!gf.involution || !gf.well)
        throw DomainError("this command needs a graph file with an involution and a well");
    if (gf.involution->fixes(*gf.well))
        throw DomainError("the well must not be fixed by the involution");
    return WellPair{*gf.well, (*gf.involution)(*gf.well), *gf.involution};
}

json spectrum_json(const Spectrum& spec) {
    json j;
    j["eigenvalues"] = spec.eigenvalues;
    if (spec.tagged()) {
        std::vector<std::string> tags;
        for (Block b : spec.tags) tags.push_back(b == Block::plus ? "plus" : "minus");
        j["sectors"] = tags;
    }
    return j;
}

json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

int cmd_validate(const std::string& path) {
    try {
        load_graph_file(path);
        std::cout << json{{"ok", true}}.dump() << "\n";
        return kExitOk;
    } catch (const ValidationError& e) {
        std::cout << json{{"ok", false}, {"violations", {e.what()}}}.dump() << "\n";
        return kExitInvalid;
    }
}

int cmd_spectrum(const std::string& path, std::optional<double> q, bool matrices,
                 bool residuals) {
    GraphFile gf = load_graph_file(path);
    Graph g = gf.graph;
    if (q) {
        const WellPair wp = require_well_pair(gf);
        g = g.with_double_well(wp.well, wp.image, *q);
    }
    const Hamiltonian h = assemble_hamiltonian(g);

    json out;
    if (gf.involution && gf.well) {
        const auto part = partition_vertices(g, *gf.involution, *gf.well);
        const auto blocks = block_reduce(h, part);
        out = spectrum_json(tagged_spectrum(h, blocks));
        if (matrices) {
            out["hamiltonian"] = matrix_json(h.matrix);
            out["h_plus_asym"] = matrix_json(blocks.plus_asym);
            out["h_plus_sym"] = matrix_json(blocks.plus_sym);
            out["h_minus"] = matrix_json(blocks.minus);
        }
        if (residuals) {
            const WellPair wp = require_well_pair(gf);
            const double well_q = g.potential(wp.well);
            const double l1 = eig_symmetric(blocks.plus_sym).eigenvalues.front();
            const double l2 = eig_symmetric(blocks.minus).eigenvalues.front();
            const int length = default_truncation_length(max_degree(g), l2);
            const auto at1 = well_system_residual(g, wp.inv, wp.well, l1, well_q, length);
            const auto at2 = well_system_residual(g, wp.inv, wp.well, l2, well_q, length);
            const auto cert = gap_certificate_check(g, wp.inv, wp.well, well_q);
            out["well_system"] = {
                {"truncation_length", length},
                {"sym_residual_at_lambda1", at1.sym},
                {"antisym_residual_at_lambda2", at2.antisym},
                {"gap", cert.gap},
                {"distance", cert.distance},
                {"walk_identity_rhs", cert.walk_identity_rhs},
                {"identity_residual", cert.identity_residual},
                {"identity_tolerance", cert.identity_tolerance},
                {"identity_holds", cert.identity_holds},
                {"shortest_term", cert.shortest_term},
                {"shortest_term_below_gap", cert.shortest_term_below_gap},
                {"final_bound", cert.final_bound},
                {"final_holds", cert.final_holds}};
        }
    } else {
        out = spectrum_json(eig_symmetric(h.matrix));
        if (matrices) out["hamiltonian"] = matrix_json(h.matrix);
    }
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int cmd_transfer(const std::string& path, std::optional<double> q,
                 std::optional<double> t, bool optimal, bool oracle) {
    GraphFile gf = load_graph_file(path);
    const WellPair wp = require_well_pair(gf);
    Graph g = q ? gf.graph.with_double_well(wp.well, wp.image, *q) : gf.graph;

    const Hamiltonian h = assemble_hamiltonian(g);
    const auto part = partition_vertices(g, wp.inv, wp.well);
    const auto blocks = block_reduce(h, part);
    const Spectrum spec = tagged_spectrum(h, blocks);

    json out;
    if (optimal) {
        double gap = spec.eigenvalues[0] - spec.eigenvalues[1];
        bool refined = false;
        const double resolvable = 1e-8 * std::max(1.0, std::abs(spec.eigenvalues[0]));
        if (gap < resolvable && spec.tags[1] == Block::minus &&
            spec.eigenvalues[1] > max_degree(g)) {
            gap = refine_spectral_gap(g, wp.inv, wp.well, g.potential(wp.well),
                                      spec.eigenvalues[0], spec.eigenvalues[1])
                      .gap;
            refined = true;
        }
        const double tstar = M_PI / gap;
        const TransferResult tr = transfer_probability(spec, wp.well, wp.image, tstar);
        out = {{"t", tstar},
               {"p", p_at_optimal_time(spec, wp.well, wp.image, gap)},
               {"amplitude_re", tr.amplitude.re},
               {"amplitude_im", tr.amplitude.im}};
        if (refined) out["gap_refined"] = true;
        if (oracle) out["p_oracle"] = matexp_probability(h, wp.well, wp.image, tstar);
    } else {
        const TransferResult tr = transfer_probability(spec, wp.well, wp.image, *t);
        out = {{"t", tr.t},
               {"p", tr.p},
               {"amplitude_re", tr.amplitude.re},
               {"amplitude_im", tr.amplitude.im}};
        if (oracle) out["p_oracle"] = matexp_probability(h, wp.well, wp.image, *t);
    }
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int cmd_bounds(const std::string& path, double q) {
    GraphFile gf = load_graph_file(path);
    const WellPair wp = require_well_pair(gf);
    const BoundReport report = certify(gf.graph, wp.inv, wp.well, q);
    std::cout << bound_report_to_json(report) << "\n";
    return kExitOk;
}

int cmd_minq(const std::optional<std::string>& path, std::optional<double> m_flag,
             double epsilon) {
    double m;
    if (path) {
        m = max_degree(load_graph_file(*path).graph);
    } else if (m_flag) {
        m = *m_flag;
    } else {
        throw DomainError("min-q needs either a graph file or --m");
    }
    const MinPotential mp = min_potential(epsilon, m);
    std::cout << json{{"q_formula", mp.q_formula},
                      {"q_sufficient_256", mp.q_sufficient_256}}
                     .dump(2)
              << "\n";
    return kExitOk;
}

int cmd_sweep(const std::string& path, double q_min, double q_max, int steps,
              const std::optional<std::string>& out_path) {
    if (q_min <= 0.0 || q_min > q_max) throw DomainError("need 0 < q-min <= q-max");
    if (steps < 1) throw DomainError("steps must be at least 1");

    GraphFile gf = load_graph_file(path);
    const WellPair wp = require_well_pair(gf);

    std::vector<double> qs(steps);
    for (int i = 0; i < steps; ++i)
        qs[i] = steps == 1 ? q_min : q_min + (q_max - q_min) * i / (steps - 1);

    std::vector<std::string> rows(steps);
    auto compute = [&](int i) {
        const BoundReport r = certify(gf.graph, wp.inv, wp.well, qs[i]);
        const double fid = r.fidelity.applicable ? r.fidelity.value
                                                 : std::nan("");
        rows[i] = fmt17(r.q) + "," + fmt17(r.lambda1.computed) + "," +
                  fmt17(r.lambda2.computed) + "," + fmt17(r.gap.computed) + "," +
                  fmt17(r.gap.value) + "," + fmt17(r.fidelity.computed) + "," +
                  fmt17(fid) + "," + fmt17(r.tstar);
    };

    const int threads = std::min(thread_budget(), steps);
    if (threads <= 1) {
        for (int i = 0; i < steps; ++i) compute(i);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w)
            pool.emplace_back([&, w]() {
                for (int i = w; i < steps; i += threads) compute(i);
            });
        for (auto& th : pool) th.join();
    }

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (out_path) {
        file.open(*out_path);
        if (!file) throw ParseError("cannot write " + *out_path);
        os = &file;
    }
    *os << "q,lambda1,lambda2,gap,gap_lower,p_at_tstar,fidelity_lower,tstar\n";
    for (const auto& row : rows) *os << row << "\n";
    return kExitOk;
}

int cmd_find_involution(const std::string& path) {
    GraphFile gf = load_graph_file(path);
    json out = json::array();
    for (const auto& found : enumerate_involutions(gf.graph))
        out.push_back({{"map", found.involution.map}, {"identity", found.is_identity}});
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Continuous-time quantum walks on double-well graphs with certified bounds"};
    app.require_subcommand(1);

    std::string path;
    std::optional<double> q_opt, t_opt, m_opt;
    double q = 0.0, epsilon = 0.0, q_min = 0.0, q_max = 0.0;
    int steps = 0;
    bool optimal = false, oracle = false, matrices = false, residuals = false;
    std::optional<std::string> out_path, minq_path;

    auto* validate = app.add_subcommand("validate", "Check a graph file");
    validate->add_option("path", path)->required();

    auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues and sector tags");
    spectrum->add_option("path", path)->required();
    spectrum->add_option("--q", q_opt, "Double-well potential on the well pair");
    spectrum->add_flag("--matrices", matrices, "Include H and the reduced blocks");
    spectrum->add_flag("--walk-residuals", residuals,
                       "Append the well-system residual report");

    auto* transfer = app.add_subcommand("transfer", "Transfer probability between the wells");
    transfer->add_option("path", path)->required();
    transfer->add_option("--q", q_opt, "Double-well potential on the well pair");
    auto* t_option = transfer->add_option("--t", t_opt, "Evaluation time (nonnegative)");
    auto* optimal_flag =
        transfer->add_flag("--optimal", optimal, "Evaluate at t* = pi/(lambda1-lambda2)");
    t_option->excludes(optimal_flag);
    transfer->add_flag("--oracle", oracle, "Cross-check with the matrix-exponential oracle")
        ->group("");

    auto* bounds_cmd = app.add_subcommand("bounds", "Certified bound report");
    bounds_cmd->add_option("path", path)->required();
    bounds_cmd->add_option("--q", q, "Double-well potential")->required();

    auto* minq = app.add_subcommand("min-q", "Potential needed for fidelity 1-epsilon");
    minq->add_option("path", minq_path, "Graph file supplying the maximum degree");
    minq->add_option("--m", m_opt, "Maximum degree (instead of a graph file)");
    minq->add_option("--epsilon", epsilon, "Fidelity shortfall in (0,1)")->required();

    auto* sweep = app.add_subcommand("sweep", "CSV sweep over the potential");
    sweep->add_option("path", path)->required();
    sweep->add_option("--q-min", q_min)->required();
    sweep->add_option("--q-max", q_max)->required();
    sweep->add_option("--steps", steps)->required();
    sweep->add_option("--out", out_path, "Write CSV here instead of stdout");

    auto* findinv = app.add_subcommand("find-involution", "Enumerate all involutions");
    findinv->add_option("path", path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (validate->parsed()) return cmd_validate(path);
        if (spectrum->parsed()) return cmd_spectrum(path, q_opt, matrices, residuals);
        if (transfer->parsed()) {
            if (!optimal && !t_opt)
                throw DomainError("transfer needs --t or --optimal");
            if (t_opt && *t_opt < 0.0) throw DomainError("time must be nonnegative");
            return cmd_transfer(path, q_opt, t_opt, optimal, oracle);
        }
        if (bounds_cmd->parsed()) return cmd_bounds(path, q);
        if (minq->parsed()) return cmd_minq(minq_path, m_opt, epsilon);
        if (sweep->parsed()) return cmd_sweep(path, q_min, q_max, steps, out_path);
        if (findinv->parsed()) return cmd_find_involution(path);
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
}
