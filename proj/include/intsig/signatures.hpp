#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "intsig/curve.hpp"
#include "intsig/invariants.hpp"

namespace intsig {

enum class Group : std::uint8_t { special, full, euclidean };

// Planar signature points; every signature lives in the plane.
struct SignaturePoints {
    std::vector<std::array<double, 2>> pts;
    std::size_t size() const { return pts.size(); }
};

// Global signature: (I1, I2) / (J1, J2) for the special group, the
// scale-free pair for the full group. Undefined samples are dropped.
// Throws DegenerateError when nothing remains (e.g. a straight segment
// under the full group).
SignaturePoints global_signature(const Curve& c, Group group);

// Greedy split of the curve into consecutive segments, each the shortest
// run whose first-invariant magnitude (|I1| in 2-D, |J1| in 3-D) reaches
// delta. Trailing samples that cannot complete a segment are dropped.
// Throws DegenerateError when fewer than two segments result.
//
// Open curves: the scan starts at sample 0 and delta is
// max_t |first invariant trace| / M, so the split depends on where the
// curve starts — acceptable because an open curve has a genuine start.
//
// Closed curves: both the scan origin and delta are intrinsic so that the
// split lands on the same physical segments no matter which sample the
// input happens to begin with. delta is the maximum |first invariant| over
// every wrapped segment divided by M, the origin (anchor) is the segment
// start maximizing the second invariant's magnitude over its delta-segment,
// and breakpoints index into the curve re-labeled to begin at the anchor.
struct Partition {
    double delta = 0.0;
    std::size_t anchor = 0;  // input-curve sample index of breakpoint 0
    std::vector<std::size_t> breakpoints;  // segment k spans [b[k], b[k+1]]
                                           // in the anchor-relabeled curve
    double tol = 0.0;  // max per-sample increment / delta: granularity bound
    std::size_t n_segments() const { return breakpoints.empty() ? 0 : breakpoints.size() - 1; }
};
Partition equi_affine_partition(const Curve& c, std::size_t M);

// Local signature: one point per partition segment; (I2seg, I3seg) /
// (J2seg, J3seg) for the special group. The full group divides by global
// powers of the first invariant (max(I1^2), max|I1|^3; max(J1^2), max(J1^4))
// to cancel the remaining scale.
struct LocalSignature {
    Partition partition;
    SignaturePoints points;
};
LocalSignature local_signature(const Curve& c, Group group, std::size_t M);

}  // namespace intsig
