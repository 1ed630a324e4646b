#include "intsig/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <future>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "intsig/curve.hpp"
#include "intsig/invariants.hpp"
#include "intsig/matching.hpp"
#include "intsig/signatures.hpp"

namespace intsig {

namespace {

constexpr double kPi = std::numbers::pi;

// stable per-item seed stream, independent of scheduling
std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// strictly increasing warp of [0,1] with a smooth random density
std::vector<double> random_warp(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> amp(0.3, 0.7), phase(0.0, 2.0 * kPi);
    const double a = amp(rng), ph = phase(rng);
    const double n1 = static_cast<double>(n) - 1.0;
    std::vector<double> cum(n, 0.0);
    auto density = [&](double t) { return 1.0 + a * std::sin(2.0 * kPi * t + ph); };
    for (std::size_t i = 1; i < n; ++i) {
        const double t0 = static_cast<double>(i - 1) / n1;
        const double t1 = static_cast<double>(i) / n1;
        cum[i] = cum[i - 1] + 0.5 * (density(t0) + density(t1)) * (t1 - t0);
    }
    for (auto& v : cum) v /= cum.back();
    cum.front() = 0.0;
    cum.back() = 1.0;
    return cum;
}

struct Descriptors {
    std::vector<double> j1, j2;
    SignaturePoints gsig;
    SignaturePoints lsig;
    bool lsig_ok = false;
};

Descriptors make_descriptors(const Curve& c, std::size_t M) {
    Descriptors d;
    const CenteredCurve cc = CenteredCurve::from(c);
    const PotentialTable table = potential_table(cc);
    const SpatialInvariants inv = spatial_invariants(cc, table);
    d.j1 = inv.J1;
    d.j2 = inv.J2;
    d.gsig.pts.reserve(inv.J1.size());
    for (std::size_t i = 0; i < inv.J1.size(); ++i) d.gsig.pts.push_back({inv.J1[i], inv.J2[i]});
    try {
        d.lsig = local_signature(c, Group::special, M).points;
        d.lsig_ok = true;
    } catch (const DegenerateError&) {
        d.lsig_ok = false;
    }
    return d;
}

}  // namespace

Scenario scenario_from_string(const std::string& s) {
    if (s == "same_param") return Scenario::same_param;
    if (s == "reparam") return Scenario::reparam;
    if (s == "reparam_shifted_start") return Scenario::reparam_shifted_start;
    throw std::invalid_argument("unknown scenario: " + s);
}

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::same_param: return "same_param";
        case Scenario::reparam: return "reparam";
        case Scenario::reparam_shifted_start: return "reparam_shifted_start";
    }
    return "?";
}

BenchConfig BenchConfig::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid bench config: ") + e.what());
    }
    BenchConfig c;
    try {
        if (j.contains("n_classes")) c.n_classes = j["n_classes"].get<int>();
        if (j.contains("variants_per_class")) c.variants_per_class = j["variants_per_class"].get<int>();
        if (j.contains("sigma_list")) c.sigma_list = j["sigma_list"].get<std::vector<double>>();
        if (j.contains("samples_per_curve"))
            c.samples_per_curve = j["samples_per_curve"].get<std::size_t>();
        if (j.contains("M")) c.M = j["M"].get<std::size_t>();
        if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("scenario")) c.scenario = scenario_from_string(j["scenario"].get<std::string>());
        if (j.contains("data_dir")) c.data_dir = j["data_dir"].get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid bench config: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("invalid bench config: ") + e.what());
    }
    if (c.n_classes < 2 || c.variants_per_class < 1 || c.samples_per_curve < 16 || c.M < 2)
        throw ParseError("bench config out of range");
    return c;
}

std::string BenchReport::table_text() const {
    std::ostringstream os;
    os << "scenario                sigma     J1-trace  J2-trace  global_sig  local_sig\n";
    for (const auto& sc : {Scenario::same_param, Scenario::reparam,
                           Scenario::reparam_shifted_start}) {
        bool any = false;
        for (const auto& r : rows)
            if (r.scenario == sc) any = true;
        if (!any) continue;
        for (double sig : config.sigma_list) {
            os << to_string(sc);
            for (std::size_t i = to_string(sc).size(); i < 24; ++i) os << ' ';
            char buf[32];
            std::snprintf(buf, sizeof buf, "%-9.4f", sig);
            os << buf;
            for (const char* m : {"J1-trace", "J2-trace", "global_sig", "local_sig"}) {
                std::snprintf(buf, sizeof buf, " %-9.4f", error(sc, sig, m));
                os << buf;
            }
            os << '\n';
        }
    }
    return os.str();
}

std::string BenchReport::to_json_text() const {
    nlohmann::json j;
    j["config"] = {{"n_classes", config.n_classes},
                   {"variants_per_class", config.variants_per_class},
                   {"sigma_list", config.sigma_list},
                   {"samples_per_curve", config.samples_per_curve},
                   {"M", config.M},
                   {"seed", config.seed},
                   {"scenario", to_string(config.scenario)}};
    j["elapsed_seconds"] = elapsed_seconds;
    auto arr = nlohmann::json::array();
    for (const auto& r : rows)
        arr.push_back({{"scenario", to_string(r.scenario)},
                       {"sigma", r.sigma},
                       {"method", r.method},
                       {"error_rate", r.error_rate},
                       {"n_errors", r.n_errors},
                       {"n_items", r.n_items}});
    j["rows"] = arr;
    return j.dump(2);
}

double BenchReport::error(Scenario sc, double sigma, const std::string& method) const {
    for (const auto& r : rows)
        if (r.scenario == sc && std::abs(r.sigma - sigma) < 1e-12 && r.method == method)
            return r.error_rate;
    throw std::invalid_argument("no bench row for " + to_string(sc) + "/" + method);
}

BenchReport run_bench(const BenchConfig& config, int n_threads) {
    return run_bench_scenarios(config, {config.scenario}, n_threads);
}

BenchReport run_bench_scenarios(BenchConfig config, const std::vector<Scenario>& scenarios,
                                int n_threads) {
    const auto t0 = std::chrono::steady_clock::now();
    BenchReport rep;
    rep.config = config;
    if (n_threads <= 0)
        n_threads = std::max(1u, std::thread::hardware_concurrency());

    const std::size_t n_var = static_cast<std::size_t>(config.variants_per_class);
    const std::size_t n_samp = config.samples_per_curve;

    // class prototypes and training descriptors
    std::vector<Curve> classes;
    if (config.data_dir.empty()) {
        classes.resize(static_cast<std::size_t>(config.n_classes));
        for (std::size_t c = 0; c < classes.size(); ++c)
            classes[c] = random_trig_curve(3, 4, n_samp, mix(config.seed, 1000 + c));
    } else {
        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::directory_iterator(config.data_dir))
            if (entry.is_regular_file() && entry.path().extension() == ".csv")
                files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        if (files.size() < 2) throw ParseError("bench data dir needs at least two CSV curves");
        for (const auto& f : files) {
            Curve c = load_curve(f.string());
            if (c.dim != 3) throw ParseError("bench curves must be 3-D: " + f.string());
            classes.push_back(resample_arclength(c, n_samp));
        }
        rep.config.n_classes = static_cast<int>(classes.size());
        config.n_classes = rep.config.n_classes;
    }
    const std::size_t n_classes = classes.size();
    std::vector<Descriptors> train(n_classes);
    {
        std::vector<std::future<Descriptors>> fut;
        for (std::size_t c = 0; c < n_classes; ++c)
            fut.push_back(std::async(std::launch::async,
                                     [&, c] { return make_descriptors(classes[c], config.M); }));
        for (std::size_t c = 0; c < n_classes; ++c) train[c] = fut[c].get();
    }
    std::vector<int> train_labels(n_classes);
    for (std::size_t c = 0; c < n_classes; ++c) train_labels[c] = static_cast<int>(c);

    struct Item {
        Scenario scenario;
        std::size_t sigma_idx;
        int label;
        Descriptors desc;
    };

    // enumerate all test items deterministically
    struct ItemSpec {
        Scenario scenario;
        std::size_t sigma_idx, cls, var;
    };
    std::vector<ItemSpec> specs;
    for (Scenario sc : scenarios)
        for (std::size_t s = 0; s < config.sigma_list.size(); ++s)
            for (std::size_t c = 0; c < n_classes; ++c)
                for (std::size_t v = 0; v < n_var; ++v) specs.push_back({sc, s, c, v});

    auto build_item = [&](const ItemSpec& sp) {
        Curve c = classes[sp.cls];
        const std::uint64_t base = mix(config.seed, sp.cls * 1009 + sp.var);
        if (sp.scenario == Scenario::reparam_shifted_start) {
            const std::size_t n_distinct = c.pts.size() - 1;
            const std::size_t k = 1 + mix(base, 7) % (n_distinct - 2);
            c = shift_start(c, k);
        }
        if (sp.scenario != Scenario::same_param)
            c = reparameterize(c, random_warp(n_samp, mix(base, 11)));
        c = apply_affine(c, random_affine(3, MapKind::special, mix(base, 13)));
        const double sigma_rel = config.sigma_list[sp.sigma_idx];
        if (sigma_rel > 0.0) {
            NoiseSpec ns;
            ns.sigma = sigma_rel * bbox_diagonal(c);
            ns.seed = mix(base, 17 + sp.sigma_idx);
            c = add_noise(c, ns);
        }
        Item item;
        item.scenario = sp.scenario;
        item.sigma_idx = sp.sigma_idx;
        item.label = static_cast<int>(sp.cls);
        item.desc = make_descriptors(c, config.M);
        return item;
    };

    std::vector<Item> items(specs.size());
    {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= specs.size()) break;
                items[i] = build_item(specs[i]);
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // classify per (scenario, sigma, method)
    for (Scenario sc : scenarios) {
        for (std::size_t s = 0; s < config.sigma_list.size(); ++s) {
            std::vector<const Item*> group;
            for (const auto& it : items)
                if (it.scenario == sc && it.sigma_idx == s) group.push_back(&it);
            std::vector<int> test_labels(group.size());
            for (std::size_t i = 0; i < group.size(); ++i) test_labels[i] = group[i]->label;

            const std::vector<std::string> methods = {"J1-trace", "J2-trace", "global_sig",
                                                      "local_sig"};
            for (const auto& method : methods) {
                auto dist = [&](std::size_t t, std::size_t r) -> double {
                    const Descriptors& a = group[t]->desc;
                    const Descriptors& b = train[r];
                    if (method == "J1-trace") return trace_distance(a.j1, b.j1);
                    if (method == "J2-trace") return trace_distance(a.j2, b.j2);
                    if (method == "global_sig") return global_signature_distance(a.gsig, b.gsig);
                    if (!a.lsig_ok || !b.lsig_ok) return 1e300;
                    return local_signature_distance(a.lsig, b.lsig);
                };
                const ClassificationReport cr =
                    nn_classify(n_classes, group.size(), train_labels, test_labels, dist);
                BenchResult row;
                row.scenario = sc;
                row.sigma = config.sigma_list[s];
                row.method = method;
                row.error_rate = cr.error_rate;
                row.n_items = static_cast<int>(group.size());
                row.n_errors = static_cast<int>(std::lround(cr.error_rate * row.n_items));
                rep.rows.push_back(row);
            }
        }
    }

    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace intsig
