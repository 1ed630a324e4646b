#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "intsig/curve.hpp"
#include "intsig/invariants.hpp"
#include "test_util.hpp"

using namespace intsig;
using namespace testutil;

namespace {

struct Gamma64 {
    Curve c = generate_example("gamma2d", 64);
    CenteredCurve cc = CenteredCurve::from(c);
    PotentialTable table = potential_table(cc);
    PlanarInvariants inv = planar_invariants(cc, table);
};

const Gamma64& gamma64() {
    static const Gamma64 g;
    return g;
}

}  // namespace

TEST_CASE("equi-affine invariant traces match the frozen reference") {
    const auto& block = reference_json()["gamma2d_n64"];
    const auto samples = svec(block["samples"]);
    const auto& g = gamma64();
    CHECK(rel_linf(at_samples(g.inv.I1, samples), dvec(block["invariants"]["I1"])) < 1e-12);
    CHECK(rel_linf(at_samples(g.inv.I2, samples), dvec(block["invariants"]["I2"])) < 1e-12);
    CHECK(rel_linf(at_samples(g.inv.I3, samples), dvec(block["invariants"]["I3"])) < 1e-12);

    const auto& scalars = block["scalars"];
    CHECK(g.inv.I1.back() ==
          doctest::Approx(scalars["I1_end"].get<double>()).epsilon(1e-12));
    CHECK(max_abs(g.inv.I1) ==
          doctest::Approx(scalars["max_abs_I1"].get<double>()).epsilon(1e-12));
    double max_sq = 0.0;
    for (double v : g.inv.I1) max_sq = std::max(max_sq, v * v);
    CHECK(max_sq == doctest::Approx(scalars["max_I1_sq"].get<double>()).epsilon(1e-12));
}

TEST_CASE("rotation-reduced traces match the frozen reference") {
    const auto& block = reference_json()["gamma2d_n64"];
    const auto samples = svec(block["samples"]);
    const auto ok = bvec(block["se2_ok"]);
    const auto& g = gamma64();
    const TraceBundle se = planar_rotation_invariants(g.cc, g.table);
    for (const auto& name : se.names) {
        CAPTURE(name);
        REQUIRE(block["se2"].contains(name));
        CHECK(masked_rel_linf(at_samples(se[name], samples), dvec(block["se2"][name]), ok) <
              1e-10);
    }
}

TEST_CASE("special-linear cross traces match the frozen reference") {
    const auto& block = reference_json()["gamma2d_n64"]["sl2"];
    const auto samples = svec(reference_json()["gamma2d_n64"]["samples"]);
    const auto ok = bvec(block["ok"]);
    const auto& g = gamma64();
    const TraceBundle sa = planar_special_linear_traces(g.cc, g.table);
    for (const auto& name : sa.names) {
        CAPTURE(name);
        REQUIRE(block.contains(name));
        CHECK(masked_rel_linf(at_samples(sa[name], samples), dvec(block[name]), ok) < 1e-10);
    }
}

TEST_CASE("subcurve invariants match the frozen segment triples") {
    const auto& segs = reference_json()["segments"];
    const auto& g = gamma64();
    for (auto [key, p, q] : std::vector<std::tuple<const char*, std::size_t, std::size_t>>{
             {"gamma2d_n64_p10_q30", 10, 30}, {"gamma2d_n64_p0_q63", 0, 63}}) {
        CAPTURE(key);
        const auto want = dvec(segs[key]);  // (I1, I2, I3) of the re-centered subcurve
        Curve sub;
        sub.dim = 2;
        sub.pts.assign(g.c.pts.begin() + static_cast<std::ptrdiff_t>(p),
                       g.c.pts.begin() + static_cast<std::ptrdiff_t>(q) + 1);
        sub.default_params();
        const CenteredCurve scc = CenteredCurve::from(sub);
        const PlanarInvariants sinv = planar_invariants(scc, potential_table(scc));
        CHECK(std::abs(sinv.I1.back() - want[0]) < 1e-10 * std::max(1.0, std::abs(want[0])));
        CHECK(std::abs(sinv.I2.back() - want[1]) < 1e-10 * std::max(1.0, std::abs(want[1])));
        CHECK(std::abs(sinv.I3.back() - want[2]) < 1e-10 * std::max(1.0, std::abs(want[2])));
        // the O(1) pair evaluation agrees with recomputation
        const auto pair = planar_segment_pair(g.cc, p, q);
        CHECK(std::abs(pair[0] - want[1]) < 1e-10 * std::max(1.0, std::abs(want[1])));
        CHECK(std::abs(pair[1] - want[2]) < 1e-10 * std::max(1.0, std::abs(want[2])));
    }
}

TEST_CASE("invariants are unchanged by special-affine maps") {
    const Curve c = generate_example("gamma2d", 128);
    const CenteredCurve cc = CenteredCurve::from(c);
    const PlanarInvariants base = planar_invariants(cc, potential_table(cc));
    const double s1 = std::max(1.0, max_abs(base.I1));
    const double s2 = std::max(1.0, max_abs(base.I2));
    const double s3 = std::max(1.0, max_abs(base.I3));
    for (std::uint64_t seed : {21ull, 22ull, 23ull, 24ull, 25ull}) {
        const Curve mc = apply_affine(c, random_affine(2, MapKind::special, seed));
        const CenteredCurve mcc = CenteredCurve::from(mc);
        const PlanarInvariants m = planar_invariants(mcc, potential_table(mcc));
        for (std::size_t i = 0; i < cc.size(); ++i) {
            CHECK(std::abs(m.I1[i] - base.I1[i]) / s1 < 1e-9);
            CHECK(std::abs(m.I2[i] - base.I2[i]) / s2 < 1e-9);
            CHECK(std::abs(m.I3[i] - base.I3[i]) / s3 < 1e-9);
        }
    }
}

TEST_CASE("invariants scale by determinant powers under linear maps") {
    const Curve c = generate_example("gamma2d", 96);
    const CenteredCurve cc = CenteredCurve::from(c);
    const PlanarInvariants base = planar_invariants(cc, potential_table(cc));
    AffineMap m;
    m.dim = 2;
    m.kind = MapKind::full;
    m.linear = {{{1.7, 0.3, 0.0}, {-0.2, -0.8, 0.0}, {0.0, 0.0, 1.0}}};
    m.translation = {0.4, -1.1, 0.0};
    const double d = m.det();
    const CenteredCurve mcc = CenteredCurve::from(apply_affine(c, m));
    const PlanarInvariants mapped = planar_invariants(mcc, potential_table(mcc));
    for (std::size_t i = 0; i < cc.size(); ++i) {
        CHECK(std::abs(mapped.I1[i] - d * base.I1[i]) < 1e-10 * std::max(1.0, max_abs(base.I1)));
        CHECK(std::abs(mapped.I2[i] - d * d * base.I2[i]) <
              1e-10 * std::max(1.0, max_abs(base.I2)) * d * d);
        CHECK(std::abs(mapped.I3[i] - d * d * d * base.I3[i]) <
              1e-10 * std::max(1.0, max_abs(base.I3)) * std::abs(d * d * d));
    }
}

TEST_CASE("straight segments have vanishing invariants and no full-affine scale") {
    const Curve line = generate_example("line2d", 50);
    const CenteredCurve cc = CenteredCurve::from(line);
    const PlanarInvariants inv = planar_invariants(cc, potential_table(cc));
    CHECK(max_abs(inv.I1) < 1e-13);
    CHECK(max_abs(inv.I2) < 1e-13);
    CHECK(max_abs(inv.I3) < 1e-13);
    CHECK_THROWS_AS(planar_normalized_invariants(inv), DegenerateError);
}

TEST_CASE("closed-curve endpoint equals the enclosed area") {
    // counter-clockwise unit circle: the chord-area invariant ends at pi
    const Curve c = generate_example("circle", 20001);
    const CenteredCurve cc = CenteredCurve::from(c);
    const PlanarInvariants inv = planar_invariants(cc, potential_table(cc));
    constexpr double kPi = 3.14159265358979323846;
    CHECK(std::abs(inv.I1.back() - kPi) < 1e-6);

    const Curve qc = generate_example("quarter_circle", 10000);
    const CenteredCurve qcc = CenteredCurve::from(qc);
    const PlanarInvariants qinv = planar_invariants(qcc, potential_table(qcc));
    CHECK(std::abs(qinv.I1.back() - (kPi / 4.0 - 0.5)) < 1e-6);
    CHECK(qinv.I1.back() == doctest::Approx(reference_json()["quarter_circle_I1_end_n1e4"]
                                                .get<double>())
                                .epsilon(1e-12));
}

TEST_CASE("full-affine quotients and normalized traces are well-formed") {
    const auto& g = gamma64();
    const TraceBundle q = planar_affine_quotients(g.inv);
    REQUIRE(q.names == std::vector<std::string>{"I2A", "I3A"});
    // undefined samples (I1 ~ 0 at the start) carry value exactly 0
    CHECK(q.def[0] == 1);  // initial sample is the defined limit by convention
    const TraceBundle n = planar_normalized_invariants(g.inv);
    REQUIRE(n.names == std::vector<std::string>{"nI1", "nI2"});
    double hi = 0.0;
    for (double v : n["nI1"]) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0 + 1e-15);
        hi = std::max(hi, v);
    }
    CHECK(hi == doctest::Approx(1.0));
}
