#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace intsig {

enum class Scenario : std::uint8_t { same_param, reparam, reparam_shifted_start };
Scenario scenario_from_string(const std::string& s);
std::string to_string(Scenario s);

struct BenchConfig {
    int n_classes = 20;
    int variants_per_class = 9;
    std::vector<double> sigma_list{0.0, 0.002, 0.005};  // relative to bbox diagonal
    std::size_t samples_per_curve = 2000;
    std::size_t M = 16;  // local-signature partition granularity
    std::uint64_t seed = 1;
    Scenario scenario = Scenario::same_param;
    // When set, the 3-D CSV curves in this directory replace the synthetic
    // class prototypes (sorted by filename, resampled to samples_per_curve).
    std::string data_dir;

    static BenchConfig from_json_text(const std::string& text);
};

// One row per (sigma, method): nearest-neighbour error rate of matching the
// transformed variants back to their source classes.
struct BenchResult {
    Scenario scenario;
    double sigma;
    std::string method;  // J1-trace, J2-trace, global_sig, local_sig
    double error_rate;
    int n_errors;
    int n_items;
};
struct BenchReport {
    BenchConfig config;
    std::vector<BenchResult> rows;
    double elapsed_seconds = 0.0;
    std::string table_text() const;
    std::string to_json_text() const;
    double error(Scenario sc, double sigma, const std::string& method) const;
};

// Deterministic for a fixed config regardless of thread count.
BenchReport run_bench(const BenchConfig& config, int n_threads = 0);
// Run the same classes through each scenario in `scenarios`.
BenchReport run_bench_scenarios(BenchConfig config, const std::vector<Scenario>& scenarios,
                                int n_threads = 0);

}  // namespace intsig
