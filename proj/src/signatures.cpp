#include "intsig/signatures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace intsig {

namespace {

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double max_sq(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x * x);
    return m;
}

// First equi-affine invariant of the re-centered segment [p, q], O(1).
double first_invariant_segment(const SegmentAccumulator& sa, std::size_t p, std::size_t q) {
    const auto& pts = sa.pts;
    if (sa.dim == 2) {
        const double dx = pts[q][0] - pts[p][0];
        const double dy = pts[q][1] - pts[p][1];
        return sa.segment_order1(p, q, 0, 1) - 0.5 * dx * dy;
    }
    const double dx = pts[q][0] - pts[p][0];
    const double dy = pts[q][1] - pts[p][1];
    const double dz = pts[q][2] - pts[p][2];
    const double n1 = 0.5 * dy * dz - sa.segment_order1(p, q, 1, 2);
    const double n2 = 0.5 * dx * dy - sa.segment_order1(p, q, 0, 1);
    const double n3 = 0.5 * dx * dz - sa.segment_order1(p, q, 0, 2);
    return n1 * dx + n2 * dz - n3 * dy;
}

// |first invariant| below this counts as identically zero: the coordinate
// scale raised to the invariant's length power (area in 2-D, volume in 3-D).
double degenerate_floor(const CenteredCurve& cc) {
    double s = 0.0;
    for (const auto& p : cc.pts)
        for (int k = 0; k < cc.dim; ++k) s = std::max(s, std::abs(p[k]));
    double f = kDegenerateRel;
    for (int k = 0; k < cc.dim; ++k) f *= s;
    return f;
}

// The distinct samples followed by one full extra turn, so segments of a
// closed curve may wrap past the seam.
CenteredCurve doubled_centered(const Curve& c) {
    const std::size_t nd = c.size() - 1;
    Curve d;
    d.dim = c.dim;
    d.pts.reserve(2 * nd + 1);
    for (std::size_t i = 0; i < nd; ++i) d.pts.push_back(c.pts[i]);
    for (std::size_t i = 0; i <= nd; ++i) d.pts.push_back(c.pts[i]);
    d.default_params();
    return CenteredCurve::from(d);
}

}  // namespace

SignaturePoints global_signature(const Curve& c, Group group) {
    if (group == Group::euclidean)
        throw std::invalid_argument("global signatures are defined for the special and full groups");
    const CenteredCurve cc = CenteredCurve::from(c);
    const PotentialTable table = potential_table(cc);
    SignaturePoints out;
    if (c.dim == 2) {
        const PlanarInvariants inv = planar_invariants(cc, table);
        if (group == Group::special) {
            out.pts.reserve(inv.I1.size());
            for (std::size_t i = 0; i < inv.I1.size(); ++i)
                out.pts.push_back({inv.I1[i], inv.I2[i]});
        } else {
            const TraceBundle nb = planar_normalized_invariants(inv);
            for (std::size_t i = 0; i < nb.n_samples(); ++i)
                if (nb.def[i]) out.pts.push_back({nb.tr[0][i], nb.tr[1][i]});
        }
    } else {
        const SpatialInvariants inv = spatial_invariants(cc, table);
        if (group == Group::special) {
            out.pts.reserve(inv.J1.size());
            for (std::size_t i = 0; i < inv.J1.size(); ++i)
                out.pts.push_back({inv.J1[i], inv.J2[i]});
        } else {
            const TraceBundle nb = spatial_normalized_invariants(inv);
            for (std::size_t i = 0; i < nb.n_samples(); ++i)
                if (nb.def[i]) out.pts.push_back({nb.tr[0][i], nb.tr[1][i]});
        }
    }
    if (out.pts.size() < 2) throw DegenerateError("global signature has fewer than two samples");
    return out;
}

Partition equi_affine_partition(const Curve& c, std::size_t M) {
    if (M < 2) throw std::invalid_argument("partition granularity M must be at least 2");
    Partition part;
    Curve work = c;

    if (!is_closed(c)) {
        const CenteredCurve cc = CenteredCurve::from(c);
        const PotentialTable table = potential_table(cc);
        const double mx = c.dim == 2 ? max_abs(planar_invariants(cc, table).I1)
                                     : max_abs(spatial_invariants(cc, table).J1);
        if (mx <= degenerate_floor(cc))
            throw DegenerateError("first invariant vanishes identically; cannot partition");
        part.delta = mx / static_cast<double>(M);
        part.anchor = 0;
    } else {
        // intrinsic delta: the largest |first invariant| over every wrapped
        // segment, so every start labeling of the same samples agrees on it
        const std::size_t nd = c.size() - 1;
        const CenteredCurve dd = doubled_centered(c);
        const SegmentAccumulator sad = SegmentAccumulator::from(dd);
        double mx = 0.0;
        for (std::size_t p = 0; p < nd; ++p)
            for (std::size_t q = p + 1; q <= p + nd; ++q)
                mx = std::max(mx, std::abs(first_invariant_segment(sad, p, q)));
        if (mx <= degenerate_floor(dd))
            throw DegenerateError("first invariant vanishes identically; cannot partition");
        part.delta = mx / static_cast<double>(M);

        // intrinsic scan origin: among the delta-segments starting at each
        // sample, anchor at the one with the largest |second invariant|
        double best = -1.0;
        std::size_t a = 0;
        for (std::size_t p = 0; p < nd; ++p) {
            std::size_t e = 0;
            for (std::size_t q = p + 1; q <= p + nd; ++q)
                if (std::abs(first_invariant_segment(sad, p, q)) >= part.delta) {
                    e = q;
                    break;
                }
            if (e == 0) continue;
            const std::array<double, 2> pair = c.dim == 2 ? planar_segment_pair(dd, p, e)
                                                          : spatial_segment_pair(dd, p, e);
            if (std::abs(pair[0]) > best) {
                best = std::abs(pair[0]);
                a = p;
            }
        }
        part.anchor = a;
        if (a > 0) work = shift_start(c, a);
    }

    const CenteredCurve cc = CenteredCurve::from(work);
    const SegmentAccumulator sa = SegmentAccumulator::from(cc);
    const std::size_t n = cc.size();
    part.breakpoints.push_back(0);
    std::size_t p = 0;
    double max_step = 0.0;
    double prev = 0.0;
    for (std::size_t q = 1; q < n; ++q) {
        const double v = first_invariant_segment(sa, p, q);
        max_step = std::max(max_step, std::abs(v - prev));
        if (std::abs(v) >= part.delta) {
            part.breakpoints.push_back(q);
            p = q;
            prev = 0.0;
        } else {
            prev = v;
        }
    }
    part.tol = max_step / part.delta;
    if (part.n_segments() < 2)
        throw DegenerateError("partition produced fewer than two segments; raise M or sample more densely");
    return part;
}

LocalSignature local_signature(const Curve& c, Group group, std::size_t M) {
    if (group == Group::euclidean)
        throw std::invalid_argument("local signatures are defined for the special and full groups");
    LocalSignature out;
    out.partition = equi_affine_partition(c, M);

    // segment values live on the anchor-relabeled curve, matching breakpoints
    const Curve work = out.partition.anchor > 0 ? shift_start(c, out.partition.anchor) : c;
    const CenteredCurve cc = CenteredCurve::from(work);
    const PotentialTable table = potential_table(cc);

    double s2 = 1.0, s3 = 1.0;  // full-group scale normalizers
    if (group == Group::full) {
        if (c.dim == 2) {
            const PlanarInvariants inv = planar_invariants(cc, table);
            const double m1 = max_abs(inv.I1);
            s2 = max_sq(inv.I1);
            s3 = m1 * m1 * m1;
        } else {
            const SpatialInvariants inv = spatial_invariants(cc, table);
            s2 = max_sq(inv.J1);
            s3 = s2 * s2;
        }
    }

    const auto& br = out.partition.breakpoints;
    out.points.pts.reserve(br.size() - 1);
    for (std::size_t k = 0; k + 1 < br.size(); ++k) {
        const std::array<double, 2> pair =
            c.dim == 2 ? planar_segment_pair(cc, br[k], br[k + 1])
                       : spatial_segment_pair(cc, br[k], br[k + 1]);
        out.points.pts.push_back({pair[0] / s2, pair[1] / s3});
    }
    return out;
}

}  // namespace intsig
