#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "intsig/curve.hpp"
#include "test_util.hpp"

using namespace intsig;

namespace {

double points_linf(const Curve& a, const Curve& b) {
    REQUIRE(a.size() == b.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (int d = 0; d < 3; ++d) worst = std::max(worst, std::abs(a.pts[i][d] - b.pts[i][d]));
    return worst;
}

std::string temp_file(const std::string& name) {
    return std::string("/tmp/intsig_test_") + name;
}

}  // namespace

TEST_CASE("generated examples validate and close where expected") {
    for (const char* name : {"gamma2d", "beta3d", "circle", "planar3d"}) {
        const Curve c = generate_example(name, 128);
        CAPTURE(name);
        CHECK_NOTHROW(c.validate());
        CHECK(is_closed(c));
        CHECK(c.size() == 128);
        CHECK(c.params.front() == 0.0);
        CHECK(c.params.back() == 1.0);
    }
    CHECK_NOTHROW(generate_example("helix", 128).validate());
    CHECK_FALSE(is_closed(generate_example("helix", 128)));  // z climbs along the turns
    CHECK_FALSE(is_closed(generate_example("quarter_circle", 64)));
    CHECK_FALSE(is_closed(generate_example("line2d", 64)));
    CHECK(generate_example("beta3d", 64).dim == 3);
    CHECK(generate_example("gamma2d", 64).dim == 2);
    CHECK_THROWS_AS(generate_example("nonsense", 64), ParseError);
}

TEST_CASE("start-point shifts compose back to the identity") {
    const Curve c = generate_example("gamma2d", 65);
    const std::size_t distinct = c.size() - 1;
    const Curve s = shift_start(c, 20);
    CHECK(is_closed(s));
    CHECK(s.size() == c.size());
    // the shifted curve starts at old sample 20
    CHECK(s.pts[0][0] == doctest::Approx(c.pts[20][0]).epsilon(1e-15));
    const Curve back = shift_start(s, distinct - 20);
    CHECK(points_linf(back, c) == 0.0);  // pure relabeling, bitwise equal
    CHECK_THROWS_AS(shift_start(generate_example("line2d", 64), 5), CurveError);
}

TEST_CASE("arclength resampling equalizes chords and keeps endpoints") {
    // equal steps along the polyline give equal output chords only where the
    // turning per step is uniform, so the sharp witness is a dense circle
    const Curve c = generate_example("circle", 20001);
    const Curve r = resample_arclength(c, 157);
    CHECK(r.size() == 157);
    for (int d = 0; d < 2; ++d) {
        CHECK(r.pts.front()[d] == doctest::Approx(c.pts.front()[d]).epsilon(1e-12));
        CHECK(r.pts.back()[d] == doctest::Approx(c.pts.back()[d]).epsilon(1e-12));
    }
    double lo = 1e300, hi = 0.0;
    for (std::size_t i = 1; i < r.size(); ++i) {
        const double ch = std::hypot(r.pts[i][0] - r.pts[i - 1][0],
                                     r.pts[i][1] - r.pts[i - 1][1]);
        lo = std::min(lo, ch);
        hi = std::max(hi, ch);
    }
    CHECK(hi / lo <= 1.0 + 1e-6);

    // varying curvature shortens chords only at second order in the step
    const Curve b = generate_example("beta3d", 20001);
    const Curve rb = resample_arclength(b, 157);
    CHECK(rb.size() == 157);
    double blo = 1e300, bhi = 0.0;
    for (std::size_t i = 1; i < rb.size(); ++i) {
        const double ch = std::hypot(std::hypot(rb.pts[i][0] - rb.pts[i - 1][0],
                                                rb.pts[i][1] - rb.pts[i - 1][1]),
                                     rb.pts[i][2] - rb.pts[i - 1][2]);
        blo = std::min(blo, ch);
        bhi = std::max(bhi, ch);
    }
    CHECK(bhi / blo <= 1.0 + 1e-2);

    // polyline distances are exact on a straight segment regardless of density
    const Curve line = generate_example("line2d", 23);
    const Curve rl = resample_arclength(line, 9);
    const double step = total_chord_length(line) / 8.0;
    for (std::size_t i = 1; i < rl.size(); ++i) {
        const double ch = std::hypot(rl.pts[i][0] - rl.pts[i - 1][0],
                                     rl.pts[i][1] - rl.pts[i - 1][1]);
        CHECK(ch == doctest::Approx(step).epsilon(1e-12));
    }
}

TEST_CASE("affine maps compose and invert") {
    for (int dim : {2, 3}) {
        CAPTURE(dim);
        const AffineMap g1 = random_affine(dim, MapKind::full, 11);
        const AffineMap g2 = random_affine(dim, MapKind::special, 12);
        const Curve c = dim == 2 ? generate_example("gamma2d", 40) : generate_example("beta3d", 40);
        // compose(g1, g2) acts as g1 after g2
        const Curve lhs = apply_affine(c, compose(g1, g2));
        const Curve rhs = apply_affine(apply_affine(c, g2), g1);
        CHECK(points_linf(lhs, rhs) < 1e-10);
        // inverse undoes the map
        const Curve round = apply_affine(apply_affine(c, g1), g1.inverse());
        CHECK(points_linf(round, c) < 1e-10);
    }
}

TEST_CASE("random affine maps respect their group constraints") {
    for (int dim : {2, 3}) {
        for (std::uint64_t seed : {1ull, 2ull, 3ull, 99ull}) {
            CAPTURE(dim);
            CAPTURE(seed);
            const AffineMap sp = random_affine(dim, MapKind::special, seed);
            CHECK(std::abs(sp.det() - 1.0) < 1e-12);
            const AffineMap fu = random_affine(dim, MapKind::full, seed);
            CHECK(std::abs(fu.det()) >= 0.3);
            const AffineMap eu = random_affine(dim, MapKind::special_euclidean, seed);
            CHECK(std::abs(eu.det() - 1.0) < 1e-12);
            // orthonormal rows
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) {
                    double dot = 0.0;
                    for (int k = 0; k < dim; ++k) dot += eu.linear[i][k] * eu.linear[j][k];
                    CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) < 1e-12);
                }
            CHECK_NOTHROW(sp.validate());
            CHECK_NOTHROW(fu.validate());
            CHECK_NOTHROW(eu.validate());
        }
    }
}

TEST_CASE("curve JSON round trip") {
    const Curve c = generate_example("beta3d", 17);
    const Curve back = curve_from_json_text(curve_to_json_text(c));
    CHECK(back.dim == c.dim);
    CHECK(points_linf(back, c) == 0.0);
    CHECK(back.params == c.params);
    CHECK_THROWS_AS(curve_from_json_text("{not json"), ParseError);
    CHECK_THROWS_AS(curve_from_json_text("{\"dim\": 2}"), ParseError);
}

TEST_CASE("curve CSV round trip and parse failures") {
    const Curve c = generate_example("gamma2d", 23);
    const std::string path = temp_file("roundtrip.csv");
    save_curve_csv(c, path);
    const Curve back = load_curve(path);
    CHECK(back.dim == 2);
    CHECK(points_linf(back, c) < 1e-14);

    const std::string bad = temp_file("bad.csv");
    {
        std::ofstream out(bad);
        out << "x\n1.0\n2.0\n";  // one column is not a curve
    }
    CHECK_THROWS_AS(load_curve(bad), ParseError);
    {
        std::ofstream out(bad);
        out << "1.0,2.0\nfoo,bar\n";
    }
    CHECK_THROWS_AS(load_curve(bad), ParseError);
    CHECK_THROWS_AS(load_curve(temp_file("does_not_exist.csv")), ParseError);
    std::remove(path.c_str());
    std::remove(bad.c_str());
}

TEST_CASE("reparameterization and the square-root warp") {
    const std::vector<double> w = sqrt_warp(101);
    CHECK(w.front() == doctest::Approx(0.0));
    CHECK(w.back() == doctest::Approx(1.0));
    for (std::size_t i = 1; i < w.size(); ++i) CHECK(w[i] > w[i - 1]);
    // warping by the identity grid leaves the polyline samples unchanged
    const Curve c = generate_example("gamma2d", 101);
    std::vector<double> ident(101);
    for (std::size_t i = 0; i < ident.size(); ++i) ident[i] = static_cast<double>(i) / 100.0;
    CHECK(points_linf(reparameterize(c, ident), c) < 1e-12);
    // a genuine warp moves interior samples but fixes the endpoints
    const Curve wc = reparameterize(c, w);
    CHECK(std::abs(wc.pts.front()[0] - c.pts.front()[0]) < 1e-15);
    CHECK(std::abs(wc.pts.back()[0] - c.pts.back()[0]) < 1e-15);
    CHECK(points_linf(wc, c) > 1e-3);
}

TEST_CASE("random curves and noise are deterministic in the seed") {
    const Curve a = random_trig_curve(3, 4, 200, 42);
    const Curve b = random_trig_curve(3, 4, 200, 42);
    const Curve c = random_trig_curve(3, 4, 200, 43);
    CHECK(points_linf(a, b) == 0.0);
    CHECK(points_linf(a, c) > 1e-6);
    CHECK(is_closed(a));
    CHECK(a.dim == 3);
    CHECK(random_trig_curve(2, 4, 64, 7).dim == 2);

    NoiseSpec ns;
    ns.sigma = 0.01;
    ns.seed = 5;
    const Curve n1 = add_noise(a, ns);
    const Curve n2 = add_noise(a, ns);
    CHECK(points_linf(n1, n2) == 0.0);
    CHECK(points_linf(n1, a) > 1e-4);
    ns.sigma = 0.0;
    CHECK(points_linf(add_noise(a, ns), a) == 0.0);
}

TEST_CASE("curve validation rejects malformed input") {
    Curve c = generate_example("gamma2d", 16);
    Curve bad = c;
    bad.params[5] = bad.params[4];  // not strictly increasing
    CHECK_THROWS_AS(bad.validate(), CurveError);
    bad = c;
    bad.pts[3][0] = std::nan("");
    CHECK_THROWS_AS(bad.validate(), CurveError);
    bad = c;
    bad.params.pop_back();
    CHECK_THROWS_AS(bad.validate(), CurveError);
    bad = c;
    bad.dim = 4;
    CHECK_THROWS_AS(bad.validate(), CurveError);
}
