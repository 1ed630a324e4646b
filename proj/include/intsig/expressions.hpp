#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "intsig/potentials.hpp"

namespace intsig {

// The rotation-reduced expressions are evaluated from runtime coefficient
// tables rather than hard-coded arithmetic so that the verification battery
// can perturb any single coefficient and demonstrate that the invariance
// checks catch it.

// One monomial term: coeff * x^px * y^py * z^pz * stored_potential[pot]
// (pot == -1 means no potential factor).
struct Term {
    double coeff = 0.0;
    int px = 0, py = 0, pz = 0;
    int pot = -1;
};

// value = front * sum(terms) / (r^rpow * R^Rpow), with r = sqrt(x^2+y^2)
// and R = sqrt(x^2+y^2+z^2) at the running sample.
struct PotentialExpression {
    std::string name;
    double front = 1.0;
    int rpow = 0;
    int Rpow = 0;
    std::vector<Term> terms;
};

// Polynomial composition over previously computed auxiliary values:
// value = sum(c * aux[a1] * aux[a2] * aux[a3]) / D^dpow, where aux[-1] == 1
// and D = sqrt(aux[z020]^2 + 4 aux[z011]^2).
struct CompositionTerm {
    double coeff = 0.0;
    int a1 = -1, a2 = -1, a3 = -1;
};
struct CompositionExpression {
    std::string name;
    int dpow = 0;
    std::vector<CompositionTerm> terms;
};

// Families of mutable tables.
enum class ExprFamily : std::uint8_t {
    se2,       // 7 planar rotation-reduced expressions
    aux3d,     // 11 spatial frame-reduced auxiliary expressions
    se3,       // spatial rotation invariants composed from aux3d
};

struct ExpressionTables {
    std::vector<PotentialExpression> se2;       // indexed by Se2Index
    std::vector<PotentialExpression> aux3d;     // indexed by Aux3Index
    std::vector<CompositionExpression> se3;     // indexed by Se3Index
};

// Canonical (unmutated) tables.
const ExpressionTables& reference_tables();

// Indices into the tables above, in evaluation order.
enum Se2Index { SE2_Y10 = 0, SE2_Y11, SE2_Y20, SE2_Y12, SE2_Y21, SE2_Y30, SE2_COUNT };
enum Aux3Index {
    AUX_XR110 = 0, AUX_XR101, AUX_XR020, AUX_ZR100, AUX_YR100, AUX_YR101,
    AUX_ZR010, AUX_ZR011, AUX_ZR020, AUX_ZR101, AUX_ZR110, AUX_COUNT
};
enum Se3Index {
    SE3_Z010 = 0, SE3_Y100, SE3_Z100, SE3_Y101, SE3_Z101, SE3_Z110, SE3_COUNT
};

// A single-coefficient perturbation: multiply one term's coefficient by
// (1 + rel_delta). expr/term index into the named family.
struct MutationSpec {
    ExprFamily family = ExprFamily::se2;
    int expr = 0;
    int term = 0;
    double rel_delta = 0.01;
};
ExpressionTables mutated_tables(const MutationSpec& spec);
std::string mutated_expression_name(const MutationSpec& spec);
// Total number of (expr, term) slots in a family, for seeding random picks.
std::vector<std::pair<int, int>> mutation_slots(ExprFamily family);

// Evaluate one potential expression at every sample.
std::vector<double> evaluate_expression(const PotentialExpression& e, const CenteredCurve& cc,
                                        const PotentialTable& table);

}  // namespace intsig
