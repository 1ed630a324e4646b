#include "intsig/curve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

namespace intsig {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool ok, const std::string& msg) {
    if (!ok) throw CurveError(msg);
}

std::mt19937_64 seeded_rng(std::uint64_t seed) {
    // splitmix64 scramble so nearby seeds give unrelated streams
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return std::mt19937_64(z ^ (z >> 31));
}

}  // namespace

void Curve::validate() const {
    require(dim == 2 || dim == 3, "curve dimension must be 2 or 3");
    require(pts.size() >= 2, "curve needs at least two samples");
    require(params.empty() || params.size() == pts.size(),
            "parameter list length must match the sample count");
    for (std::size_t i = 0; i + 1 < params.size(); ++i)
        require(params[i] < params[i + 1], "parameters must be strictly increasing");
    if (dim == 2)
        for (const auto& p : pts)
            require(p[2] == 0.0, "2-D samples must have zero third coordinate");
    for (const auto& p : pts)
        for (int c = 0; c < dim; ++c)
            require(std::isfinite(p[c]), "sample coordinates must be finite");
}

void Curve::default_params() {
    params.resize(pts.size());
    const double n1 = static_cast<double>(pts.size()) - 1.0;
    for (std::size_t i = 0; i < pts.size(); ++i) params[i] = static_cast<double>(i) / n1;
}

double AffineMap::det() const {
    const auto& a = linear;
    if (dim == 2) return a[0][0] * a[1][1] - a[0][1] * a[1][0];
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

void AffineMap::validate() const {
    require(dim == 2 || dim == 3, "map dimension must be 2 or 3");
    const double d = det();
    require(std::isfinite(d) && std::abs(d) > 1e-12, "map must be nonsingular");
    if (kind == MapKind::special)
        require(std::abs(d - 1.0) <= 1e-12, "special map must have unit determinant");
    if (kind == MapKind::special_euclidean) {
        require(std::abs(d - 1.0) <= 1e-12, "rigid map must have unit determinant");
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                double dot = 0.0;
                for (int k = 0; k < dim; ++k) dot += linear[i][k] * linear[j][k];
                require(std::abs(dot - (i == j ? 1.0 : 0.0)) <= 1e-12,
                        "rigid map must have orthonormal rows");
            }
    }
}

AffineMap AffineMap::inverse() const {
    AffineMap inv;
    inv.dim = dim;
    inv.kind = kind;
    const double d = det();
    require(std::abs(d) > 1e-14, "cannot invert a singular map");
    const auto& a = linear;
    if (dim == 2) {
        inv.linear[0][0] = a[1][1] / d;
        inv.linear[0][1] = -a[0][1] / d;
        inv.linear[1][0] = -a[1][0] / d;
        inv.linear[1][1] = a[0][0] / d;
        inv.linear[2][2] = 1.0;
    } else {
        // adjugate / det
        inv.linear[0][0] = (a[1][1] * a[2][2] - a[1][2] * a[2][1]) / d;
        inv.linear[0][1] = (a[0][2] * a[2][1] - a[0][1] * a[2][2]) / d;
        inv.linear[0][2] = (a[0][1] * a[1][2] - a[0][2] * a[1][1]) / d;
        inv.linear[1][0] = (a[1][2] * a[2][0] - a[1][0] * a[2][2]) / d;
        inv.linear[1][1] = (a[0][0] * a[2][2] - a[0][2] * a[2][0]) / d;
        inv.linear[1][2] = (a[0][2] * a[1][0] - a[0][0] * a[1][2]) / d;
        inv.linear[2][0] = (a[1][0] * a[2][1] - a[1][1] * a[2][0]) / d;
        inv.linear[2][1] = (a[0][1] * a[2][0] - a[0][0] * a[2][1]) / d;
        inv.linear[2][2] = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) / d;
    }
    // A^{-1}(p - v)
    for (int r = 0; r < dim; ++r) {
        double s = 0.0;
        for (int c = 0; c < dim; ++c) s += inv.linear[r][c] * translation[c];
        inv.translation[r] = -s;
    }
    return inv;
}

AffineMap compose(const AffineMap& g1, const AffineMap& g2) {
    require(g1.dim == g2.dim, "composed maps must share a dimension");
    AffineMap r;
    r.dim = g1.dim;
    r.kind = (g1.kind == g2.kind) ? g1.kind : MapKind::full;
    for (int i = 0; i < r.dim; ++i)
        for (int j = 0; j < r.dim; ++j) {
            double s = 0.0;
            for (int k = 0; k < r.dim; ++k) s += g1.linear[i][k] * g2.linear[k][j];
            r.linear[i][j] = s;
        }
    for (int i = 0; i < r.dim; ++i) {
        double s = g1.translation[i];
        for (int k = 0; k < r.dim; ++k) s += g1.linear[i][k] * g2.translation[k];
        r.translation[i] = s;
    }
    if (r.dim == 2) r.linear[2][2] = 1.0;
    return r;
}

Curve apply_affine(const Curve& c, const AffineMap& m) {
    require(c.dim == m.dim, "curve and map dimensions differ");
    Curve out = c;
    for (auto& p : out.pts) {
        Point q{0, 0, 0};
        for (int r = 0; r < m.dim; ++r) {
            double s = m.translation[r];
            for (int col = 0; col < m.dim; ++col) s += m.linear[r][col] * p[col];
            q[r] = s;
        }
        p = q;
    }
    return out;
}

AffineMap random_affine(int dim, MapKind kind, std::uint64_t seed) {
    auto rng = seeded_rng(seed);
    std::uniform_real_distribution<double> entry(-3.0, 3.0);
    AffineMap m;
    m.dim = dim;
    m.kind = kind;

    if (kind == MapKind::special_euclidean) {
        if (dim == 2) {
            std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
            const double a = ang(rng), ca = std::cos(a), sa = std::sin(a);
            m.linear = {{{ca, -sa, 0}, {sa, ca, 0}, {0, 0, 1}}};
        } else {
            // uniform rotation from a random unit quaternion
            std::normal_distribution<double> g(0.0, 1.0);
            double q[4] = {g(rng), g(rng), g(rng), g(rng)};
            double n = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
            for (double& v : q) v /= n;
            const double w = q[0], x = q[1], y = q[2], z = q[3];
            m.linear = {{{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
                         {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
                         {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}}};
        }
        for (int i = 0; i < dim; ++i) m.translation[i] = entry(rng);
        return m;
    }

    for (int attempt = 0; attempt < 1000; ++attempt) {
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) m.linear[i][j] = entry(rng);
        if (dim == 2) m.linear[2][2] = 1.0;
        double d = m.det();
        if (kind == MapKind::special) {
            // keep orientation and reject small determinants: normalization
            // scales entries by det^(-1/dim), and oversized entries amplify
            // roundoff through the degree-6 invariant polynomials
            if (d < 0.3) continue;
            // normalize the determinant to 1; a second pass removes the
            // rounding left by the first so validation's 1e-12 bound holds
            for (int pass = 0; pass < 2; ++pass) {
                const double s = std::pow(m.det(), -1.0 / dim);
                for (int i = 0; i < dim; ++i)
                    for (int j = 0; j < dim; ++j) m.linear[i][j] *= s;
            }
        } else {
            if (std::abs(d) < 0.3) continue;  // well-conditioned full map
        }
        for (int i = 0; i < dim; ++i) m.translation[i] = entry(rng);
        return m;
    }
    throw CurveError("failed to draw a nonsingular random map");
}

Curve add_noise(const Curve& c, const NoiseSpec& spec) {
    Curve out = c;
    if (spec.sigma <= 0.0) return out;
    const bool closed = is_closed(c);
    auto rng = seeded_rng(spec.seed);
    std::normal_distribution<double> g(0.0, spec.sigma);
    for (auto& p : out.pts)
        for (int i = 0; i < c.dim; ++i) p[i] += g(rng);
    // a noisy sample of a closed contour is still a closed contour: the
    // repeated end point must move together with its twin, not independently
    if (closed) out.pts.back() = out.pts.front();
    return out;
}

double bbox_diagonal(const Curve& c) {
    Point lo{1e300, 1e300, 1e300}, hi{-1e300, -1e300, -1e300};
    for (const auto& p : c.pts)
        for (int i = 0; i < c.dim; ++i) {
            lo[i] = std::min(lo[i], p[i]);
            hi[i] = std::max(hi[i], p[i]);
        }
    double s = 0.0;
    for (int i = 0; i < c.dim; ++i) s += (hi[i] - lo[i]) * (hi[i] - lo[i]);
    return std::sqrt(s);
}

double total_chord_length(const Curve& c) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < c.pts.size(); ++i) {
        double d2 = 0.0;
        for (int k = 0; k < c.dim; ++k) {
            const double d = c.pts[i + 1][k] - c.pts[i][k];
            d2 += d * d;
        }
        s += std::sqrt(d2);
    }
    return s;
}

bool is_closed(const Curve& c) {
    const double diag = bbox_diagonal(c);
    double d2 = 0.0;
    for (int k = 0; k < c.dim; ++k) {
        const double d = c.pts.back()[k] - c.pts.front()[k];
        d2 += d * d;
    }
    return std::sqrt(d2) <= 1e-9 * std::max(diag, 1e-30);
}

namespace {

// Piecewise-linear point at normalized parameter u given node parameters.
Point interp_at(const Curve& c, double u) {
    const auto& t = c.params;
    if (u <= t.front()) return c.pts.front();
    if (u >= t.back()) return c.pts.back();
    const auto it = std::upper_bound(t.begin(), t.end(), u);
    const std::size_t j = static_cast<std::size_t>(it - t.begin());
    const double w = (u - t[j - 1]) / (t[j] - t[j - 1]);
    Point p{0, 0, 0};
    for (int k = 0; k < c.dim; ++k) p[k] = (1.0 - w) * c.pts[j - 1][k] + w * c.pts[j][k];
    return p;
}

}  // namespace

Curve resample_arclength(const Curve& c, std::size_t m) {
    require(m >= 2, "resampling needs at least two output samples");
    std::vector<double> cum(c.pts.size(), 0.0);
    for (std::size_t i = 1; i < c.pts.size(); ++i) {
        double d2 = 0.0;
        for (int k = 0; k < c.dim; ++k) {
            const double d = c.pts[i][k] - c.pts[i - 1][k];
            d2 += d * d;
        }
        cum[i] = cum[i - 1] + std::sqrt(d2);
    }
    const double total = cum.back();
    require(total > 0.0, "cannot resample a curve of zero length");

    Curve out;
    out.dim = c.dim;
    out.label = c.label;
    out.pts.resize(m);
    std::size_t j = 1;
    for (std::size_t i = 0; i < m; ++i) {
        const double target = total * static_cast<double>(i) / static_cast<double>(m - 1);
        while (j + 1 < cum.size() && cum[j] < target) ++j;
        const double seg = cum[j] - cum[j - 1];
        const double w = seg > 0.0 ? (target - cum[j - 1]) / seg : 0.0;
        for (int k = 0; k < c.dim; ++k)
            out.pts[i][k] = (1.0 - w) * c.pts[j - 1][k] + w * c.pts[j][k];
    }
    out.pts.front() = c.pts.front();
    out.pts.back() = c.pts.back();
    out.default_params();
    return out;
}

Curve reparameterize(const Curve& c, const std::vector<double>& warped_params) {
    Curve base = c;
    if (base.params.empty()) base.default_params();
    require(!warped_params.empty(), "warp needs at least one parameter");
    for (std::size_t i = 0; i + 1 < warped_params.size(); ++i)
        require(warped_params[i] < warped_params[i + 1], "warp parameters must increase");
    require(warped_params.front() >= base.params.front() - 1e-12 &&
                warped_params.back() <= base.params.back() + 1e-12,
            "warp parameters must stay inside the original range");
    Curve out;
    out.dim = c.dim;
    out.label = c.label;
    out.pts.reserve(warped_params.size());
    for (double u : warped_params) out.pts.push_back(interp_at(base, u));
    out.default_params();
    return out;
}

std::vector<double> sqrt_warp(std::size_t n) {
    std::vector<double> w(n);
    const double n1 = static_cast<double>(n) - 1.0;
    const double denom = std::sqrt(2.0) - 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / n1;
        w[i] = (std::sqrt(t + 1.0) - 1.0) / denom;
    }
    w.front() = 0.0;
    w.back() = 1.0;
    return w;
}

Curve shift_start(const Curve& closed_curve, std::size_t k) {
    require(is_closed(closed_curve), "start shifting requires a closed curve");
    const std::size_t n = closed_curve.pts.size() - 1;  // distinct samples
    Curve out;
    out.dim = closed_curve.dim;
    out.label = closed_curve.label;
    out.pts.resize(n + 1);
    for (std::size_t i = 0; i < n; ++i) out.pts[i] = closed_curve.pts[(i + k) % n];
    out.pts[n] = out.pts[0];
    out.default_params();
    return out;
}

Curve generate_example(const std::string& name, std::size_t n_samples) {
    require(n_samples >= 2, "example curves need at least two samples");
    Curve c;
    c.label = name;
    const double n1 = static_cast<double>(n_samples) - 1.0;
    auto grid = [&](double t0, double t1, std::size_t i) {
        return t0 + (t1 - t0) * static_cast<double>(i) / n1;
    };
    c.pts.resize(n_samples);
    if (name == "gamma2d") {
        c.dim = 2;
        for (std::size_t i = 0; i < n_samples; ++i) {
            const double t = grid(0.0, 2.0 * kPi, i);
            c.pts[i] = {0.5 * std::sin(t) - std::cos(t) + 1.0,
                        std::sin(t) * std::sin(t) + std::cos(t) - 1.0, 0.0};
        }
    } else if (name == "beta3d") {
        c.dim = 3;
        for (std::size_t i = 0; i < n_samples; ++i) {
            const double t = grid(0.0, 2.0 * kPi, i);
            c.pts[i] = {std::sin(t) - 0.2 * std::cos(t) * std::cos(t) + 0.2,
                        0.5 * std::sin(t) - std::cos(t) + 1.0,
                        std::sin(t) * std::sin(t) + std::cos(t) - 1.0};
        }
    } else if (name == "circle") {
        c.dim = 2;
        for (std::size_t i = 0; i < n_samples; ++i) {
            const double t = grid(0.0, 2.0 * kPi, i);
            c.pts[i] = {std::cos(t), std::sin(t), 0.0};
        }
    } else if (name == "quarter_circle") {
        c.dim = 2;
        for (std::size_t i = 0; i < n_samples; ++i) {
            const double t = grid(0.0, kPi / 2.0, i);
            c.pts[i] = {std::cos(t), std::sin(t), 0.0};
        }
    } else if (name == "helix") {
        c.dim = 3;
        for (std::size_t i = 0; i < n_samples; ++i) {
            const double t = grid(0.0, 4.0 * kPi, i);
            c.pts[i] = {std::cos(t), std::sin(t), 0.25 * t};
        }
    } else if (name == "planar3d") {
        // gamma2d embedded in the z = 0 plane
        c.dim = 3;
        for (std::size_t i = 0; i < n_samples; ++i) {
            const double t = grid(0.0, 2.0 * kPi, i);
            c.pts[i] = {0.5 * std::sin(t) - std::cos(t) + 1.0,
                        std::sin(t) * std::sin(t) + std::cos(t) - 1.0, 0.0};
        }
    } else if (name == "line2d" || name == "line3d") {
        c.dim = (name == "line2d") ? 2 : 3;
        for (std::size_t i = 0; i < n_samples; ++i) {
            const double t = static_cast<double>(i) / n1;
            c.pts[i] = {1.0 + 2.0 * t, -0.5 + 0.7 * t, c.dim == 3 ? 0.3 + 1.3 * t : 0.0};
        }
    } else {
        throw ParseError("unknown example curve: " + name);
    }
    // the periodic examples close exactly: snap away the trig rounding at 2*pi
    if (name == "gamma2d" || name == "beta3d" || name == "circle" || name == "planar3d")
        c.pts.back() = c.pts.front();
    c.default_params();
    return c;
}

Curve random_trig_curve(int dim, int harmonics, std::size_t n_samples, std::uint64_t seed) {
    if (dim != 2 && dim != 3) throw CurveError("random_trig_curve: dim must be 2 or 3");
    auto rng = seeded_rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<std::vector<double>> ca(static_cast<std::size_t>(dim)),
        cb(static_cast<std::size_t>(dim));
    for (int c = 0; c < dim; ++c)
        for (int h = 1; h <= harmonics; ++h) {
            ca[static_cast<std::size_t>(c)].push_back(g(rng) / h);
            cb[static_cast<std::size_t>(c)].push_back(g(rng) / h);
        }
    Curve out;
    out.dim = dim;
    out.label = "random";
    out.pts.resize(n_samples);
    const double n1 = static_cast<double>(n_samples) - 1.0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double t = 2.0 * kPi * static_cast<double>(i) / n1;
        Point p{0, 0, 0};
        for (int c = 0; c < dim; ++c)
            for (int h = 1; h <= harmonics; ++h)
                p[c] += ca[static_cast<std::size_t>(c)][static_cast<std::size_t>(h - 1)] *
                            std::cos(h * t) +
                        cb[static_cast<std::size_t>(c)][static_cast<std::size_t>(h - 1)] *
                            std::sin(h * t);
        out.pts[i] = p;
    }
    out.pts.back() = out.pts.front();  // exact closure against roundoff
    out.default_params();
    return out;
}

// ---------------- I/O ----------------

namespace {

std::vector<double> parse_csv_row(const std::string& line, std::size_t lineno) {
    std::vector<double> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        // trim
        const auto b = cell.find_first_not_of(" \t\r");
        if (b == std::string::npos) throw ParseError("empty cell at line " + std::to_string(lineno));
        const auto e = cell.find_last_not_of(" \t\r");
        cell = cell.substr(b, e - b + 1);
        try {
            std::size_t used = 0;
            const double v = std::stod(cell, &used);
            if (used != cell.size()) throw std::invalid_argument(cell);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ParseError("cannot parse number '" + cell + "' at line " + std::to_string(lineno));
        }
    }
    return out;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

Curve curve_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid curve JSON: ") + e.what());
    }
    Curve c;
    try {
        c.dim = j.at("dim").get<int>();
        for (const auto& row : j.at("points")) {
            Point p{0, 0, 0};
            if (static_cast<int>(row.size()) != c.dim)
                throw ParseError("point arity does not match dim");
            for (int k = 0; k < c.dim; ++k) p[k] = row[k].get<double>();
            c.pts.push_back(p);
        }
        if (j.contains("params")) c.params = j["params"].get<std::vector<double>>();
        if (j.contains("label")) c.label = j["label"].get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid curve JSON: ") + e.what());
    }
    if (c.params.empty()) c.default_params();
    c.validate();
    return c;
}

std::string curve_to_json_text(const Curve& c) {
    nlohmann::json j;
    j["dim"] = c.dim;
    auto pts = nlohmann::json::array();
    for (const auto& p : c.pts) {
        auto row = nlohmann::json::array();
        for (int k = 0; k < c.dim; ++k) row.push_back(p[k]);
        pts.push_back(row);
    }
    j["points"] = pts;
    if (!c.params.empty()) j["params"] = c.params;
    if (!c.label.empty()) j["label"] = c.label;
    return j.dump(2);
}

Curve load_curve(const std::string& path, bool leading_param_column) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open curve file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    if (ends_with(path, ".json")) return curve_from_json_text(text);

    Curve c;
    std::stringstream ss(text);
    std::string line;
    std::size_t lineno = 0;
    std::size_t width = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (lineno == 1 && line.find_first_of("xyzXYZt") != std::string::npos &&
            line.find_first_of("0123456789") == std::string::npos)
            continue;  // header row
        const auto row = parse_csv_row(line, lineno);
        if (width == 0) {
            width = row.size();
            const std::size_t coords = leading_param_column ? width - 1 : width;
            if (coords != 2 && coords != 3)
                throw ParseError("expected 2 or 3 coordinate columns, got " +
                                 std::to_string(coords));
            c.dim = static_cast<int>(coords);
        } else if (row.size() != width) {
            throw ParseError("ragged row at line " + std::to_string(lineno));
        }
        Point p{0, 0, 0};
        const std::size_t off = leading_param_column ? 1 : 0;
        if (leading_param_column) c.params.push_back(row[0]);
        for (int k = 0; k < c.dim; ++k) p[k] = row[off + k];
        c.pts.push_back(p);
    }
    if (c.pts.size() < 2) throw ParseError("curve file has fewer than two samples: " + path);
    if (c.params.empty()) c.default_params();
    c.validate();
    return c;
}

void save_curve_csv(const Curve& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw CurveError("cannot write curve file: " + path);
    out.precision(17);
    for (const auto& p : c.pts) {
        out << p[0] << "," << p[1];
        if (c.dim == 3) out << "," << p[2];
        out << "\n";
    }
}

}  // namespace intsig
