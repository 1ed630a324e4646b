#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "intsig/curve.hpp"

namespace intsig {

// Monomial exponent vector; only the first `dim` entries are used.
using MultiIndex = std::array<int, 3>;

// Coordinates translated so sample 0 sits at the origin. All integral
// variables are computed in this centered frame.
struct CenteredCurve {
    int dim = 2;
    std::vector<Point> pts;  // pts[0] == {0,0,0}
    static CenteredCurve from(const Curve& c);
    std::size_t size() const { return pts.size(); }
};

// One integral variable: the cumulative line integral of the monomial
// x^alpha against d(coordinate target) along the piecewise-linear
// interpolant, evaluated exactly per segment (two-point Gauss-Legendre,
// exact for the cubic-degree integrands that arise here and beyond).
struct PotentialSpec {
    MultiIndex alpha{0, 0, 0};
    int target = 0;  // 0-based coordinate index of the differential
    int order() const { return alpha[0] + alpha[1] + alpha[2]; }
    std::string name(int dim) const;  // e.g. "Y[1,0]" or "Z[0,1,1]"
    bool operator==(const PotentialSpec&) const = default;
};

// Trace of one potential at every sample (value at sample 0 is 0).
std::vector<double> potential_trace(const CenteredCurve& cc, const PotentialSpec& spec);

// The stored sets used throughout: 6 second-coordinate potentials of order
// <= 3 in 2-D, and the 11 order <= 2 potentials entering the 3-D formulas.
const std::vector<PotentialSpec>& stored_set(int dim);
int stored_index(int dim, const PotentialSpec& spec);  // -1 if absent

// All stored traces, indexed as stored_set(dim).
struct PotentialTable {
    int dim = 2;
    std::vector<std::vector<double>> traces;  // [stored index][sample]
    std::size_t n_samples() const { return traces.empty() ? 0 : traces[0].size(); }
};
PotentialTable potential_table(const CenteredCurve& cc);

// --- enumeration and counting ---

// A potential (alpha, target) is admissible when alpha has a nonzero entry
// away from the target. The canonical subset additionally requires the
// target index to exceed the first nonzero entry of alpha.
bool is_admissible(const PotentialSpec& spec, int dim);
bool is_canonical(const PotentialSpec& spec, int dim);
std::vector<PotentialSpec> enumerate_potentials(int dim, int order, bool canonical_only);

// Closed-form count of canonical potentials of order <= l in dimension n.
long long count_independent(int n, int l);

// The same count by direct enumeration of exponent vectors; works for any
// n >= 2, independent of the fixed-width MultiIndex used elsewhere.
long long count_by_enumeration(int n, int l);

// --- integration by parts ---

// sum_i beta_i * potential(beta - e_i, i) == x^beta at every sample.
struct BypartsRelation {
    MultiIndex beta{0, 0, 0};
    // members: one term per coordinate with beta_i > 0
    std::vector<PotentialSpec> members;
};
std::vector<BypartsRelation> byparts_relations(int dim, int max_order);

// Evaluate an admissible potential by reducing it through its single
// by-parts relation to stored traces and endpoint monomials. Pure powers
// (alpha zero away from target) integrate in closed form.
std::vector<double> reduced_potential_trace(const CenteredCurve& cc, const PotentialTable& table,
                                            const PotentialSpec& spec);

// Worst relative mismatch between direct quadrature and the by-parts route
// over every admissible non-stored potential of order <= max_order.
double byparts_residual(const CenteredCurve& cc, int max_order);

// Predict the stored table of (A c) from the table of c alone using the
// prolonged action: expand (A x)^alpha into monomials and push each through
// the reduction above. Used to confirm exact equivariance of the quadrature.
PotentialTable predicted_table_under_map(const CenteredCurve& cc, const PotentialTable& table,
                                         const AffineMap& m);

// --- O(1) segment evaluation on precomputed cumulative data ---

// Cumulative order-1 traces plus coordinates; enough to evaluate any order-1
// potential of a subcurve [p, q] re-centered at sample p in O(1).
struct SegmentAccumulator {
    int dim = 2;
    std::vector<Point> pts;                        // centered coordinates
    std::vector<std::vector<double>> order1;       // [pair index][sample]
    std::vector<std::array<int, 2>> order1_pairs;  // (alpha coordinate, target)
    static SegmentAccumulator from(const CenteredCurve& cc);
    // integral over [p,q] of (x_a - x_a(p)) d x_t
    double segment_order1(std::size_t p, std::size_t q, int a, int t) const;
};

}  // namespace intsig
