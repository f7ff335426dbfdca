// Command-line front end: geometry queries, Dirichlet solves, supremal
// combinations, mean-width rearrangements, and the verification
// experiments with machine-readable reports.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include "CLI11.hpp"
#include "json.hpp"

#include "mwr/convolve.hpp"
#include "mwr/errors.hpp"
#include "mwr/field.hpp"
#include "mwr/geometry.hpp"
#include "mwr/io.hpp"
#include "mwr/pde.hpp"
#include "mwr/rearrange.hpp"
#include "mwr/verify.hpp"

namespace fs = std::filesystem;
using namespace mwr;

namespace {

struct CommonFlags {
    double h = 1.0 / 32;
    double p = 0.5;
    double mu = 0.5;
    int m = 8;
    std::string out_dir;
    std::uint64_t seed = 20240101;
    std::string format = "json";
};

void ensure_out(const std::string& dir) {
    if (!dir.empty()) fs::create_directories(dir);
}

OperatorSpec make_operator(const std::string& op_name, double lambda, double Lambda, int K,
                           const std::string& source_spec) {
    OperatorSpec op;
    op.kind = (op_name == "pucci" || op_name == "pucci_minus") ? OperatorKind::PucciMinus : OperatorKind::Poisson;
    op.lambda = lambda;
    op.Lambda = Lambda;
    op.direction_count = K;
    std::istringstream is(source_spec);
    std::string head;
    is >> head;
    if (head == "constant") {
        double c = 1.0;
        is >> c;
        op.source = SourceTerm::constant(c);
    } else if (head == "radial") {
        std::string id;
        is >> id;
        op.source = SourceTerm::radial(id);
    } else if (head == "sampled") {
        std::string path;
        is >> path;
        op.source = SourceTerm::sampled(read_grid_csv(path));
    } else {
        throw CLI::ValidationError("--source", "expected 'constant c', 'radial id' or 'sampled base_path'");
    }
    op.validate();
    return op;
}

int run_verify(const std::string& target, const CommonFlags& flags, bool have_h, bool have_p, bool have_mu,
               bool have_m) {
    std::vector<std::pair<std::string, ExperimentConfig>> jobs;
    const auto names = preset_names();
    if (std::find(names.begin(), names.end(), target) != names.end()) {
        jobs = preset_configs(target);
    } else {
        ExperimentConfig cfg = config_from_kv(read_key_value_file(target));
        jobs.push_back({cfg.experiment, cfg});
    }
    int exit_code = 0;
    for (auto& [name, cfg] : jobs) {
        if (have_h) cfg.solver.h = flags.h;
        if (have_p) cfg.p = flags.p;
        if (have_mu) cfg.mu = flags.mu;
        if (have_m) cfg.m = flags.m;
        cfg.seed = flags.seed;
        const auto t0 = std::chrono::steady_clock::now();
        ComparisonReport rep = run_experiment(cfg);
        rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const nlohmann::json j = rep.to_json();
        if (!flags.out_dir.empty()) {
            ensure_out(flags.out_dir);
            std::ofstream f(flags.out_dir + "/" + name + ".json");
            f << j.dump(2) << '\n';
            if (flags.format == "csv") {
                std::ofstream c(flags.out_dir + "/" + name + ".csv");
                c << rep.to_csv();
            }
        }
        std::cout << j.dump(2) << '\n';
        exit_code = std::max(exit_code, rep.exit_code());
    }
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minkowski combinations and mean-width rearrangements of elliptic solutions"};
    app.set_help_flag("--help", "print help");  // keep -h free: --h is the grid spacing
    app.require_subcommand(1);
    CommonFlags flags;

    auto* geom = app.add_subcommand("geom", "geometry of convex bodies");
    geom->set_help_flag("--help", "print help");
    std::string g_body0, g_body1;
    double g_mu = 0.5;
    int g_rotmean = 0;
    geom->add_option("--body0", g_body0, "body literal or polygon file")->required();
    geom->add_option("--body1", g_body1, "second body for combination / distance");
    geom->add_option("--mu", g_mu, "combination weight");
    geom->add_option("--rotation-mean", g_rotmean, "also report the m-fold rotation mean");
    geom->add_option("--out", flags.out_dir, "output directory");

    auto* solve = app.add_subcommand("solve", "Dirichlet solve on a convex body");
    solve->set_help_flag("--help", "print help");
    std::string s_body, s_op = "poisson", s_source = "constant 1";
    double s_lambda = 1.0, s_Lambda = 1.0, s_tol = -1.0;
    int s_K = 8;
    solve->add_option("--body", s_body, "body literal or polygon file")->required();
    solve->add_option("--operator", s_op, "poisson | pucci");
    solve->add_option("--lambda", s_lambda, "Pucci lambda");
    solve->add_option("--Lambda", s_Lambda, "Pucci Lambda");
    solve->add_option("--K", s_K, "Pucci frame count");
    solve->add_option("--source", s_source, "constant c | radial id | sampled base");
    solve->add_option("--h", flags.h, "grid spacing");
    solve->add_option("--tol", s_tol, "residual tolerance");
    solve->add_option("--out", flags.out_dir, "output directory")->required();

    auto* conv = app.add_subcommand("convolve", "(p,mu)-combination of two saved fields");
    conv->set_help_flag("--help", "print help");
    std::string c_f0, c_f1;
    double c_hout = 0.0;
    conv->add_option("--field0", c_f0, "grid csv base path")->required();
    conv->add_option("--field1", c_f1, "grid csv base path")->required();
    conv->add_option("--mu", flags.mu, "weight");
    conv->add_option("--p", flags.p, "mean exponent in [0,1)");
    conv->add_option("--h-out", c_hout, "output spacing (default max of inputs)");
    conv->add_option("--out", flags.out_dir, "output directory")->required();

    auto* rear = app.add_subcommand("rearrange", "mean-width rearrangement of a saved field");
    rear->set_help_flag("--help", "print help");
    std::string r_field;
    std::string r_mlist = "2,4,8";
    rear->add_option("--field", r_field, "grid csv base path")->required();
    rear->add_option("--p", flags.p, "mean exponent in (0,1)");
    rear->add_option("--m", r_mlist, "comma-separated rotation counts");
    rear->add_option("--out", flags.out_dir, "output directory")->required();

    auto* verify = app.add_subcommand("verify", "run a verification preset or config file");
    verify->set_help_flag("--help", "print help");
    std::string v_target;
    verify->add_option("target", v_target, "preset name or key=value config file")->required();
    auto* vh = verify->add_option("--h", flags.h, "grid spacing override");
    auto* vp = verify->add_option("--p", flags.p, "exponent override");
    auto* vmu = verify->add_option("--mu", flags.mu, "weight override");
    auto* vm = verify->add_option("--m", flags.m, "rotation count override");
    verify->add_option("--out", flags.out_dir, "report directory");
    verify->add_option("--seed", flags.seed, "seed for randomized sweeps");
    verify->add_option("--format", flags.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 3;
    }

    try {
        if (*geom) {
            const ConvexBody b0 = parse_body_spec(g_body0);
            nlohmann::json j;
            j["body0"] = {{"mean_width", mean_width(b0)},
                          {"mean_width_quadrature", mean_width_quadrature(b0)},
                          {"area", area(b0)}};
            if (!g_body1.empty()) {
                const ConvexBody b1 = parse_body_spec(g_body1);
                const ConvexBody c = minkowski_combine(b0, b1, g_mu);
                j["body1"] = {{"mean_width", mean_width(b1)}, {"area", area(b1)}};
                j["combination"] = {{"mu", g_mu},
                                    {"mean_width", mean_width(c)},
                                    {"area", area(c)},
                                    {"hausdorff_distance", hausdorff_distance(b0, b1)}};
            }
            if (g_rotmean >= 1) {
                const ConvexBody rm = rotation_mean(b0, g_rotmean);
                const ConvexBody ball = ConvexBody::disc({0, 0}, 0.5 * mean_width(b0));
                j["rotation_mean"] = {{"m", g_rotmean},
                                      {"mean_width", mean_width(rm)},
                                      {"hausdorff_to_ball", hausdorff_distance(rm, ball)}};
            }
            std::cout << j.dump(2) << '\n';
            return 0;
        }
        if (*solve) {
            const ConvexBody body = parse_body_spec(s_body);
            const OperatorSpec op = make_operator(s_op, s_lambda, s_Lambda, s_K, s_source);
            SolveParams sp;
            sp.h = flags.h;
            sp.tol = s_tol;
            const GridFunction u =
                op.kind == OperatorKind::Poisson ? solve_poisson(body, op.source, sp) : solve_pucci(body, op, sp);
            ensure_out(flags.out_dir);
            write_grid_csv(u, flags.out_dir + "/solution");
            nlohmann::json j;
            j["max"] = u.max_abs();
            j["l1"] = lq_norm(u, 1.0);
            j["l2"] = lq_norm(u, 2.0);
            if (op.source.kind == SourceTerm::Kind::Constant && op.source.value == 1.0)
                j["torsional_rigidity"] = torsional_rigidity(u);
            std::cout << j.dump(2) << '\n';
            return 0;
        }
        if (*conv) {
            const GridFunction u0 = read_grid_csv(c_f0);
            const GridFunction u1 = read_grid_csv(c_f1);
            const ConvolutionResult res = convolve_binary(u0, u1, flags.mu, flags.p, c_hout);
            ensure_out(flags.out_dir);
            write_grid_csv(res.field, flags.out_dir + "/convolution");
            write_argmax_csv(res, flags.out_dir + "/argmax.csv");
            nlohmann::json j;
            j["max"] = res.field.max_abs();
            j["in_nodes"] = res.field.in_count();
            std::cout << j.dump(2) << '\n';
            return 0;
        }
        if (*rear) {
            const GridFunction u = read_grid_csv(r_field);
            std::vector<int> ms;
            std::istringstream is(r_mlist);
            std::string tok;
            while (std::getline(is, tok, ',')) ms.push_back(std::stoi(tok));
            const RearrangementRun run = run_rearrangement(u, flags.p, ms, 0.0);
            ensure_out(flags.out_dir);
            std::ofstream manifest(flags.out_dir + "/manifest.txt");
            manifest << "p " << flags.p << "\n";
            for (std::size_t i = 0; i < run.m_list.size(); ++i) {
                const std::string base = flags.out_dir + "/rearranged_m" + std::to_string(run.m_list[i]);
                write_grid_csv(run.outputs[i], base);
                manifest << "m " << run.m_list[i] << " mean_width " << mean_width(run.domains[i])
                         << " source_mean_width " << mean_width(run.source.body) << " max "
                         << run.outputs[i].max_abs() << "\n";
            }
            if (run.m_list.size() >= 3) {
                const ConvergenceReport conv_rep = rearrangement_convergence(run);
                manifest << "interpolation_slack " << conv_rep.slack << "\n";
                manifest << "sup_diffs";
                for (double d : conv_rep.sup_diffs) manifest << ' ' << d;
                manifest << "\nhausdorff_to_ball";
                for (double d : conv_rep.domain_dists) manifest << ' ' << d;
                manifest << "\nmonotone " << (conv_rep.monotone ? "yes" : "no") << "\n";
            }
            std::cout << "wrote " << run.m_list.size() << " rearrangements to " << flags.out_dir << '\n';
            return 0;
        }
        if (*verify) {
            return run_verify(v_target, flags, vh->count() > 0, vp->count() > 0, vmu->count() > 0,
                              vm->count() > 0);
        }
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 3;
}
