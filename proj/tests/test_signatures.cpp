#include <doctest.h>

#include <cmath>
#include <vector>

#include "intsig/curve.hpp"
#include "intsig/invariants.hpp"
#include "intsig/matching.hpp"
#include "intsig/signatures.hpp"
#include "test_util.hpp"

using namespace intsig;
using namespace testutil;

TEST_CASE("global signature lists the invariant pairs in sample order") {
    const Curve c = generate_example("gamma2d", 64);
    const SignaturePoints sp = global_signature(c, Group::special);
    REQUIRE(sp.size() == 64);
    const CenteredCurve cc = CenteredCurve::from(c);
    const PlanarInvariants inv = planar_invariants(cc, potential_table(cc));
    for (std::size_t i = 0; i < sp.size(); ++i) {
        CHECK(sp.pts[i][0] == inv.I1[i]);
        CHECK(sp.pts[i][1] == inv.I2[i]);
    }
    // full-group signatures are scale-free pairs, bounded by construction
    const SignaturePoints fp = global_signature(c, Group::full);
    for (const auto& p : fp.pts) {
        CHECK(p[0] >= 0.0);
        CHECK(p[0] <= 1.0 + 1e-15);
    }
}

TEST_CASE("equi-affine partition matches the frozen breakpoints") {
    for (const char* name : {"gamma2d", "beta3d"}) {
        CAPTURE(name);
        const Curve c = generate_example(name, 256);
        const Partition part = equi_affine_partition(c, 8);
        const auto& want =
            reference_json()[std::string("partition_") + name + "_n256_M8"];
        CHECK(part.delta == doctest::Approx(want["delta"].get<double>()).epsilon(1e-12));
        CHECK(part.anchor == want["anchor"].get<std::size_t>());
        CHECK(part.breakpoints == svec(want["breakpoints"]));
        CHECK(part.n_segments() == 2);
        CHECK(part.tol > 0.0);
        CHECK(part.tol < 0.2);  // 256 samples resolve delta to a few percent
    }
}

TEST_CASE("too coarse a split cannot be partitioned") {
    // at M = 2 only one segment ever accumulates delta: not a signature
    const Curve c = generate_example("beta3d", 256);
    CHECK_THROWS_AS(equi_affine_partition(c, 2), DegenerateError);
    CHECK_THROWS_AS(equi_affine_partition(c, 1), std::invalid_argument);
    // a finer split succeeds
    CHECK(equi_affine_partition(c, 32).n_segments() >= 2);
}

TEST_CASE("partition segments each accumulate at least delta") {
    for (const char* name : {"gamma2d", "beta3d"}) {
        CAPTURE(name);
        const Curve c = generate_example(name, 1024);
        const Partition part = equi_affine_partition(c, 16);
        REQUIRE(part.n_segments() >= 2);
        // breakpoints index into the curve re-labeled to start at the anchor
        const Curve work = part.anchor > 0 ? shift_start(c, part.anchor) : c;
        auto seg_first = [&](std::size_t p, std::size_t q) {
            Curve sub;
            sub.dim = c.dim;
            sub.pts.assign(work.pts.begin() + static_cast<std::ptrdiff_t>(p),
                           work.pts.begin() + static_cast<std::ptrdiff_t>(q) + 1);
            sub.default_params();
            const CenteredCurve scc = CenteredCurve::from(sub);
            const PotentialTable t = potential_table(scc);
            if (c.dim == 2) return planar_invariants(scc, t).I1.back();
            return spatial_invariants(scc, t).J1.back();
        };
        for (std::size_t k = 0; k + 1 < part.breakpoints.size(); ++k) {
            const double v = seg_first(part.breakpoints[k], part.breakpoints[k + 1]);
            CHECK(std::abs(v) >= part.delta * (1.0 - 1e-9));
            // minimality: stopping one sample earlier stays below delta
            if (part.breakpoints[k + 1] - part.breakpoints[k] > 1) {
                const double prev = seg_first(part.breakpoints[k], part.breakpoints[k + 1] - 1);
                CHECK(std::abs(prev) < part.delta);
            }
        }
    }
}

TEST_CASE("signatures are invariant under their groups") {
    const Curve c = generate_example("beta3d", 512);
    const SignaturePoints base = global_signature(c, Group::special);
    const Curve mc = apply_affine(c, random_affine(3, MapKind::special, 77));
    CHECK(global_signature_distance(base, global_signature(mc, Group::special)) < 1e-9);

    const SignaturePoints fbase = global_signature(c, Group::full);
    const Curve fc = apply_affine(c, random_affine(3, MapKind::full, 78));
    CHECK(global_signature_distance(fbase, global_signature(fc, Group::full)) < 1e-6);

    // local signatures: identical partitions and segment values
    const LocalSignature la = local_signature(c, Group::special, 16);
    const LocalSignature lb = local_signature(mc, Group::special, 16);
    REQUIRE(la.points.size() == lb.points.size());
    CHECK(local_signature_distance(la.points, lb.points) < 1e-9);
}

TEST_CASE("full-group local signature cancels positive-determinant scaling") {
    const Curve c = generate_example("gamma2d", 512);
    AffineMap m;
    m.dim = 2;
    m.kind = MapKind::full;
    m.linear = {{{1.3, 0.4, 0.0}, {-0.2, 0.7, 0.0}, {0.0, 0.0, 1.0}}};
    m.translation = {2.0, -1.0, 0.0};
    REQUIRE(m.det() > 0.0);
    const LocalSignature la = local_signature(c, Group::full, 16);
    const LocalSignature lb = local_signature(apply_affine(c, m), Group::full, 16);
    REQUIRE(la.points.size() == lb.points.size());
    CHECK(local_signature_distance(la.points, lb.points) < 1e-9);
}

TEST_CASE("degenerate inputs are reported, not silently produced") {
    const Curve line = generate_example("line2d", 64);
    CHECK_THROWS_AS(global_signature(line, Group::full), DegenerateError);
    CHECK_THROWS_AS(local_signature(line, Group::special, 8), DegenerateError);
    CHECK_THROWS_AS(global_signature(line, Group::euclidean), std::invalid_argument);
}

TEST_CASE("reparameterization preserves the global signature but not traces") {
    const Curve c = generate_example("gamma2d", 2000);
    const Curve warped = reparameterize(c, sqrt_warp(2000));
    const CenteredCurve cc = CenteredCurve::from(c);
    const CenteredCurve wcc = CenteredCurve::from(warped);
    const PlanarInvariants a = planar_invariants(cc, potential_table(cc));
    const PlanarInvariants b = planar_invariants(wcc, potential_table(wcc));
    double linf = 0.0;
    for (std::size_t i = 0; i < a.I1.size(); ++i)
        linf = std::max(linf, std::abs(a.I1[i] - b.I1[i]));
    CHECK(linf / max_abs(a.I1) > 0.05);  // traces differ visibly
    CHECK(global_signature_distance(global_signature(c, Group::special),
                                    global_signature(warped, Group::special)) < 1e-3);
}

TEST_CASE("local signature is insensitive to the start point") {
    const Curve c = generate_example("gamma2d", 2000);
    const Curve shifted = shift_start(c, 666);
    const LocalSignature la = local_signature(c, Group::special, 16);
    const LocalSignature lb = local_signature(shifted, Group::special, 16);
    // the anchor lands on the same physical sample in both labelings,
    // so the two partitions describe the same segments
    const std::size_t nd = c.size() - 1;
    CHECK((lb.partition.anchor + 666) % nd == la.partition.anchor);
    CHECK(lb.partition.breakpoints == la.partition.breakpoints);
    CHECK(local_signature_distance(la.points, lb.points) < 5e-3);
    // while the global signature moves by much more
    CHECK(global_signature_distance(global_signature(c, Group::special),
                                    global_signature(shifted, Group::special)) > 1e-2);
}
