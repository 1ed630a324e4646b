#pragma once

#include <string>
#include <vector>

#include "intsig/expressions.hpp"
#include "intsig/potentials.hpp"

namespace intsig {

// Relative threshold below which a quotient's denominator counts as zero;
// measured against the global maximum of the denominator trace. Samples
// below it are reported as undefined (sample 0 is always the 0 limit).
inline constexpr double kDefinedEps = 1e-8;

// A first invariant counts as identically zero (degenerate curve: straight
// in 2D, planar or straight in 3D) when its maximum stays below this factor
// times the curve's coordinate scale raised to the invariant's length power
// (2 for I1, 3 for J1). Keeps straight lines degenerate despite rounding.
inline constexpr double kDegenerateRel = 1e-12;

// A family of named traces sharing one defined-mask.
struct TraceBundle {
    std::vector<std::string> names;
    std::vector<std::vector<double>> tr;  // [expression][sample]
    std::vector<char> def;                // per sample
    std::size_t n_samples() const { return tr.empty() ? 0 : tr[0].size(); }
    const std::vector<double>& operator[](const std::string& name) const;
};

// ---------------- planar ----------------

// Equi-affine invariants; defined at every sample. coord_scale is the
// largest centered-coordinate magnitude, kept for degeneracy thresholds.
struct PlanarInvariants {
    std::vector<double> I1, I2, I3;
    double coord_scale = 0.0;
};
PlanarInvariants planar_invariants(const CenteredCurve& cc, const PotentialTable& table);

// Rotation invariants X_SE, Y_SE[1,0], Y_SE[1,1], Y_SE[2,0], Y_SE[1,2],
// Y_SE[2,1], Y_SE[3,0]. Undefined (r ~ 0) samples carry value 0.
TraceBundle planar_rotation_invariants(const CenteredCurve& cc, const PotentialTable& table,
                                       const ExpressionTables& tables = reference_tables());

// Special-linear traces Y_SA[2,1], Y_SA[3,1] built from the rotation set;
// additionally undefined where Y_SE[1,1] vanishes.
TraceBundle planar_special_linear_traces(const CenteredCurve& cc, const PotentialTable& table,
                                         const ExpressionTables& tables = reference_tables());

// Full-affine quotients I2/I1^2, I3/I1^3; undefined where I1 vanishes.
TraceBundle planar_affine_quotients(const PlanarInvariants& inv);

// Scale-free pair |I1|/max|I1|, |I2|/max(I1^2); throws DegenerateError when
// I1 is identically zero (within kDegenerateRel of the coordinate scale).
TraceBundle planar_normalized_invariants(const PlanarInvariants& inv);

// (I2, I3) of the subcurve [p, q] re-centered at p, evaluated at q.
std::array<double, 2> planar_segment_pair(const CenteredCurve& cc, std::size_t p, std::size_t q);

// ---------------- spatial ----------------

// The 11 frame-reduced auxiliary expressions; undefined where r or R ~ 0.
TraceBundle spatial_auxiliary_values(const CenteredCurve& cc, const PotentialTable& table,
                                     const ExpressionTables& tables = reference_tables());

// Rotation invariants X_SE, Z_SE[0,1,0], Y_SE[1,0,0], Z_SE[1,0,0],
// Z_SE[0,2,0], Y_SE[1,0,1], Z_SE[1,0,1], Z_SE[1,1,0].
TraceBundle spatial_rotation_invariants(const CenteredCurve& cc, const PotentialTable& table,
                                        const ExpressionTables& tables = reference_tables());

// Equi-affine invariants. J1 and J2 are polynomial and defined everywhere;
// J3 is composed through the rotation set and undefined where Z_SE[0,1,0]
// (equivalently J1) vanishes.
struct SpatialInvariants {
    std::vector<double> J1, J2;
    std::vector<double> J3;
    std::vector<char> J3_def;
    double coord_scale = 0.0;
};
SpatialInvariants spatial_invariants(const CenteredCurve& cc, const PotentialTable& table,
                                     const ExpressionTables& tables = reference_tables());

// J2 recomputed through the rotation-invariant route: 2 (Y_SA[1,0,1] + 1/2) J1.
std::vector<double> spatial_second_invariant_composed(const TraceBundle& se,
                                                      std::vector<char>* def_out);

// Full-affine quotients J2/J1^2, J3/J1^4; undefined where J1 vanishes.
TraceBundle spatial_affine_quotients(const SpatialInvariants& inv);

// Scale-free pair |J1|/max|J1|, J2/max(J1^2).
TraceBundle spatial_normalized_invariants(const SpatialInvariants& inv);

// (J2, J3) of the subcurve [p, q] re-centered at p, evaluated at q.
std::array<double, 2> spatial_segment_pair(const CenteredCurve& cc, std::size_t p, std::size_t q);

}  // namespace intsig
