// Command-line front end: invariant traces, signatures, the classification
// benchmark, and the numerical verification battery.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "intsig/bench.hpp"
#include "intsig/curve.hpp"
#include "intsig/invariants.hpp"
#include "intsig/matching.hpp"
#include "intsig/signatures.hpp"
#include "intsig/verify.hpp"

namespace {

using namespace intsig;

// Column labels stay CSV-safe: "Y_SE[1,0]" -> "Y_SE_10".
std::string csv_name(const std::string& name) {
    std::string out;
    for (char ch : name) {
        if (ch == '[') out += '_';
        else if (ch == ',' || ch == ']') continue;
        else out += ch;
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot write " + out_path);
    out << text;
}

struct InputOptions {
    std::string input_path;
    std::string example;
    std::size_t samples = 1000;
    bool param_column = false;
    int dim = 0;  // 0 = accept either
    long long shift = -1;
};

void add_input_options(CLI::App* cmd, InputOptions& io) {
    cmd->add_option("input", io.input_path, "curve file (CSV columns x,y[,z] or JSON)");
    cmd->add_option("--example", io.example,
                    "generate a named curve instead of reading a file "
                    "(gamma2d, beta3d, circle, quarter_circle, helix, planar3d, line2d, line3d)");
    cmd->add_option("--samples", io.samples, "sample count for --example")->default_val(1000);
    cmd->add_flag("--param-column", io.param_column, "first CSV column is the parameter");
    cmd->add_option("--dim", io.dim, "require this dimension (2 or 3)")
        ->check(CLI::IsMember({0, 2, 3}));
    cmd->add_option("--shift-start", io.shift, "relabel sample k as the initial point");
}

Curve load_input(const InputOptions& io) {
    Curve c;
    if (!io.example.empty()) {
        c = generate_example(io.example, io.samples);
    } else if (!io.input_path.empty()) {
        c = load_curve(io.input_path, io.param_column);
    } else {
        throw ParseError("no input: give a curve file or --example");
    }
    if (io.dim != 0 && c.dim != io.dim)
        throw ParseError("curve is " + std::to_string(c.dim) + "-D, --dim " +
                         std::to_string(io.dim) + " requested");
    if (io.shift >= 0) c = shift_start(c, static_cast<std::size_t>(io.shift));
    return c;
}

Group parse_group(const std::string& s) {
    if (s == "special") return Group::special;
    if (s == "full") return Group::full;
    if (s == "euclidean") return Group::euclidean;
    throw ParseError("unknown group: " + s);
}

int cmd_invariants(const InputOptions& io, const std::string& group_s,
                   const std::string& out_path) {
    const Curve c = load_input(io);
    const Group group = parse_group(group_s);
    const CenteredCurve cc = CenteredCurve::from(c);
    const PotentialTable table = potential_table(cc);

    std::vector<std::string> names;
    std::vector<std::vector<double>> cols;
    auto push_bundle = [&](const TraceBundle& b) {
        for (std::size_t k = 0; k < b.names.size(); ++k) {
            names.push_back(csv_name(b.names[k]));
            cols.push_back(b.tr[k]);
        }
    };
    if (c.dim == 2) {
        const PlanarInvariants inv = planar_invariants(cc, table);
        if (group == Group::euclidean) {
            push_bundle(planar_rotation_invariants(cc, table));
        } else {
            names = {"I1", "I2", "I3"};
            cols = {inv.I1, inv.I2, inv.I3};
            if (group == Group::full) {
                push_bundle(planar_affine_quotients(inv));
                push_bundle(planar_normalized_invariants(inv));
            }
        }
    } else {
        const SpatialInvariants inv = spatial_invariants(cc, table);
        if (group == Group::euclidean) {
            push_bundle(spatial_rotation_invariants(cc, table));
        } else {
            names = {"J1", "J2", "J3"};
            cols = {inv.J1, inv.J2, inv.J3};
            if (group == Group::full) {
                push_bundle(spatial_affine_quotients(inv));
                push_bundle(spatial_normalized_invariants(inv));
            }
        }
    }

    std::ostringstream os;
    os << "t";
    for (const auto& n : names) os << ',' << n;
    os << '\n';
    char buf[32];
    for (std::size_t i = 0; i < c.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", c.params[i]);
        os << buf;
        for (const auto& col : cols) {
            std::snprintf(buf, sizeof buf, "%.17g", col[i]);
            os << ',' << buf;
        }
        os << '\n';
    }
    write_output(out_path, os.str());
    return 0;
}

int cmd_signature(const InputOptions& io, const std::string& group_s, const std::string& mode,
                  std::size_t M, const std::string& out_path) {
    const Curve c = load_input(io);
    const Group group = parse_group(group_s);
    if (group == Group::euclidean)
        throw ParseError("signatures are defined for the special and full groups");

    nlohmann::json j;
    j["mode"] = mode;
    j["group"] = group_s;
    j["dim"] = c.dim;
    auto points_json = [](const SignaturePoints& sp) {
        auto arr = nlohmann::json::array();
        for (const auto& p : sp.pts) arr.push_back({p[0], p[1]});
        return arr;
    };
    if (mode == "global") {
        const SignaturePoints sp = global_signature(c, group);
        j["n_points"] = sp.size();
        j["points"] = points_json(sp);
    } else if (mode == "local") {
        const LocalSignature ls = local_signature(c, group, M);
        j["n_points"] = ls.points.size();
        j["partition"] = {{"M", M},
                          {"delta", ls.partition.delta},
                          {"anchor", ls.partition.anchor},
                          {"tol", ls.partition.tol},
                          {"breakpoints", ls.partition.breakpoints}};
        j["points"] = points_json(ls.points);
    } else {
        throw ParseError("unknown mode: " + mode);
    }
    write_output(out_path, j.dump(2) + "\n");
    return 0;
}

int cmd_bench(const std::string& config_path, const std::string& scenario_s,
              std::uint64_t seed, bool seed_set, const std::string& data_dir,
              const std::string& out_path, int threads) {
    BenchConfig cfg;
    if (!config_path.empty()) cfg = BenchConfig::from_json_text(read_file(config_path));
    if (!scenario_s.empty()) cfg.scenario = scenario_from_string(scenario_s);
    if (seed_set) cfg.seed = seed;
    if (!data_dir.empty()) cfg.data_dir = data_dir;
    const BenchReport rep = run_bench(cfg, threads);
    std::cout << rep.table_text();
    std::cout << "elapsed: " << rep.elapsed_seconds << " s\n";
    if (!out_path.empty()) write_output(out_path, rep.to_json_text() + "\n");
    return 0;
}

int cmd_verify(bool quick, std::uint64_t seed, bool seed_set, const std::string& mutate,
               const std::string& out_path) {
    VerifyOptions opts;
    opts.quick = quick;
    if (seed_set) opts.seed = seed;
    if (!mutate.empty()) {
        // self-test hook: family:expr:term perturbs one printed coefficient
        MutationSpec spec;
        std::istringstream is(mutate);
        std::string fam;
        char c1 = 0, c2 = 0;
        if (!(std::getline(is, fam, ':') && (is >> spec.expr >> c1 >> spec.term)) || c1 != ':')
            throw ParseError("--mutate expects family:expr:term, e.g. se3:2:5");
        (void)c2;
        if (fam == "se2") spec.family = ExprFamily::se2;
        else if (fam == "aux3d") spec.family = ExprFamily::aux3d;
        else if (fam == "se3") spec.family = ExprFamily::se3;
        else throw ParseError("unknown expression family: " + fam);
        opts.mutation = spec;
        std::cout << "perturbing " << mutated_expression_name(spec) << " by "
                  << spec.rel_delta * 100 << "%\n";
    }
    const VerifyReport rep = run_verify(opts);
    std::cout << rep.table_text();
    if (!out_path.empty()) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& ch : rep.checks)
            j.push_back({{"name", ch.name},
                         {"residual", ch.residual},
                         {"tolerance", ch.tolerance},
                         {"pass", ch.pass},
                         {"detail", ch.detail}});
        write_output(out_path, j.dump(2) + "\n");
    }
    if (!rep.all_pass()) {
        for (const auto& ch : rep.checks)
            if (!ch.pass) {
                std::cerr << "verification failed: " << ch.name
                          << (ch.detail.empty() ? "" : " (" + ch.detail + ")")
                          << " residual " << ch.residual << " > " << ch.tolerance << "\n";
                break;
            }
        return 1;
    }
    std::cout << "all checks passed\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"integral invariants and signatures of sampled curves"};
    app.require_subcommand(1);

    InputOptions inv_io, sig_io;
    std::string inv_group = "special", inv_out;
    auto* inv_cmd = app.add_subcommand("invariants", "write invariant traces as CSV");
    add_input_options(inv_cmd, inv_io);
    inv_cmd->add_option("--group", inv_group, "special | full | euclidean")
        ->check(CLI::IsMember({"special", "full", "euclidean"}));
    inv_cmd->add_option("--out", inv_out, "output path (default stdout)");

    std::string sig_group = "special", sig_mode = "global", sig_out;
    std::size_t sig_M = 16;
    auto* sig_cmd = app.add_subcommand("signature", "write a curve signature as JSON");
    add_input_options(sig_cmd, sig_io);
    sig_cmd->add_option("--group", sig_group, "special | full")
        ->check(CLI::IsMember({"special", "full", "euclidean"}));
    sig_cmd->add_option("--mode", sig_mode, "global | local")
        ->check(CLI::IsMember({"global", "local"}));
    sig_cmd->add_option("--M", sig_M, "partition resolution for --mode local")->default_val(16);
    sig_cmd->add_option("--out", sig_out, "output path (default stdout)");

    std::string bench_config, bench_scenario, bench_data_dir, bench_out;
    std::uint64_t bench_seed = 0;
    int bench_threads = 0;
    auto* bench_cmd = app.add_subcommand("bench", "nearest-neighbor classification benchmark");
    bench_cmd->add_option("--config", bench_config, "JSON benchmark configuration");
    bench_cmd->add_option("--scenario", bench_scenario,
                          "same_param | reparam | reparam_shifted_start")
        ->check(CLI::IsMember({"same_param", "reparam", "reparam_shifted_start"}));
    auto* bench_seed_opt = bench_cmd->add_option("--seed", bench_seed, "override config seed");
    bench_cmd->add_option("--data-dir", bench_data_dir,
                          "directory of 3-D CSV curves replacing the synthetic classes");
    bench_cmd->add_option("--out", bench_out, "write the full report JSON here");
    bench_cmd->add_option("--threads", bench_threads, "worker threads (0 = all cores)");

    bool verify_quick = false;
    std::string verify_mutate, verify_out;
    std::uint64_t verify_seed = 0;
    auto* verify_cmd = app.add_subcommand("verify", "run the numerical verification battery");
    verify_cmd->add_flag("--quick", verify_quick, "reduced trial counts (seconds, not minutes)");
    auto* verify_seed_opt = verify_cmd->add_option("--seed", verify_seed, "battery RNG seed");
    verify_cmd->add_option("--mutate", verify_mutate,
                           "self-test: perturb one coefficient (family:expr:term; families "
                           "se2, aux3d, se3) and demonstrate the battery catches it");
    verify_cmd->add_option("--out", verify_out, "write the check table JSON here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (inv_cmd->parsed()) return cmd_invariants(inv_io, inv_group, inv_out);
        if (sig_cmd->parsed()) return cmd_signature(sig_io, sig_group, sig_mode, sig_M, sig_out);
        if (bench_cmd->parsed())
            return cmd_bench(bench_config, bench_scenario, bench_seed,
                             bench_seed_opt->count() > 0, bench_data_dir, bench_out,
                             bench_threads);
        if (verify_cmd->parsed())
            return cmd_verify(verify_quick, verify_seed, verify_seed_opt->count() > 0,
                              verify_mutate, verify_out);
    } catch (const DegenerateError& e) {
        std::cerr << "error: signature does not exist: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
