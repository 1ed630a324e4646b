#include "intsig/expressions.hpp"

#include <cmath>
#include <stdexcept>

namespace intsig {

namespace {

// Stored-potential indices, matching stored_set(2) and stored_set(3).
enum Pot2 { Y10 = 0, Y20, Y11, Y30, Y21, Y12 };
enum Pot3 { X110 = 0, X101, X020, Z100, Y100, Y101, Z010, Z011, Z020, Z101, Z110 };

ExpressionTables build_tables() {
    ExpressionTables t;

    // ---- planar rotation-reduced numerators, value = sum / r^rpow ----
    t.se2.resize(SE2_COUNT);
    t.se2[SE2_Y10] = {"Y_SE[1,0]", 1.0, 0, 0, {
        {1.0, 0, 0, 0, Y10},
        {-0.5, 1, 1, 0, -1},
    }};
    t.se2[SE2_Y11] = {"Y_SE[1,1]", 1.0, 1, 0, {
        {1.0, 1, 0, 0, Y11},
        {-0.5, 0, 1, 0, Y20},
        {-1.0 / 6.0, 2, 2, 0, -1},
    }};
    t.se2[SE2_Y20] = {"Y_SE[2,0]", 1.0, 1, 0, {
        {1.0, 1, 0, 0, Y20},
        {2.0, 0, 1, 0, Y11},
        {-1.0 / 3.0, 3, 1, 0, -1},
        {-2.0 / 3.0, 1, 3, 0, -1},
    }};
    t.se2[SE2_Y12] = {"Y_SE[1,2]", 1.0, 2, 0, {
        {1.0, 2, 0, 0, Y12},
        {-1.0, 1, 1, 0, Y21},
        {1.0 / 3.0, 0, 2, 0, Y30},
        {-1.0 / 12.0, 3, 3, 0, -1},
    }};
    t.se2[SE2_Y21] = {"Y_SE[2,1]", 1.0, 2, 0, {
        {1.0, 2, 0, 0, Y21},
        {-1.0, 0, 2, 0, Y21},
        {2.0, 1, 1, 0, Y12},
        {-2.0 / 3.0, 1, 1, 0, Y30},
        {-0.25, 2, 4, 0, -1},
        {-1.0 / 12.0, 4, 2, 0, -1},
    }};
    t.se2[SE2_Y30] = {"Y_SE[3,0]", 1.0, 2, 0, {
        {1.0, 2, 0, 0, Y30},
        {3.0, 0, 2, 0, Y12},
        {3.0, 1, 1, 0, Y21},
        {-0.25, 5, 1, 0, -1},
        {-0.75, 3, 3, 0, -1},
        {-0.75, 1, 5, 0, -1},
    }};

    // ---- spatial frame-reduced auxiliaries, value = front*sum/(r^rpow R^Rpow) ----
    t.aux3d.resize(AUX_COUNT);
    t.aux3d[AUX_ZR010] = {"Zr[0,1,0]", -0.5, 0, 1, {
        {1.0, 1, 1, 1, -1},
        {-2.0, 1, 0, 0, Z010},
        {2.0, 0, 1, 0, Z100},
        {-2.0, 0, 0, 1, Y100},
    }};
    t.aux3d[AUX_ZR100] = {"Zr[1,0,0]", -0.5, 1, 0, {
        {1.0, 2, 0, 1, -1},
        {-2.0, 1, 0, 0, Z100},
        {1.0, 0, 2, 1, -1},
        {-2.0, 0, 1, 0, Z010},
    }};
    t.aux3d[AUX_YR100] = {"Yr[1,0,0]", -0.5, 1, 1, {
        {1.0, 3, 1, 0, -1},
        {1.0, 1, 3, 0, -1},
        {-2.0, 0, 2, 0, Y100},
        {-2.0, 0, 1, 1, Z100},
        {-2.0, 2, 0, 0, Y100},
        {2.0, 1, 0, 1, Z010},
    }};
    t.aux3d[AUX_ZR011] = {"Zr[0,1,1]", -1.0 / 6.0, 1, 2, {
        {2.0, 3, 1, 2, -1},
        {-6.0, 3, 0, 0, Z011},
        {6.0, 2, 1, 0, Z101},
        {-6.0, 2, 0, 1, Y101},
        {-6.0, 1, 2, 0, Z011},
        {3.0, 1, 1, 1, Z020},
        {4.0, 1, 3, 2, -1},
        {6.0, 1, 1, 1, X101},
        {-6.0, 1, 0, 2, X110},
        {-6.0, 0, 2, 1, Z110},
        {-6.0, 0, 2, 1, Y101},
        {6.0, 0, 3, 0, Z101},
        {-3.0, 0, 1, 2, X020},
    }};
    t.aux3d[AUX_ZR020] = {"Zr[0,2,0]", -1.0 / 3.0, 1, 1, {
        {-3.0, 2, 0, 0, Z020},
        {-2.0, 2, 2, 1, -1},
        {6.0, 1, 1, 0, Z110},
        {3.0, 1, 0, 1, X020},
        {6.0, 0, 2, 0, X101},
        {-6.0, 0, 1, 1, X110},
    }};
    t.aux3d[AUX_ZR101] = {"Zr[1,0,1]", 1.0 / 6.0, 2, 1, {
        {-4.0, 4, 0, 2, -1},
        {6.0, 3, 0, 0, Z101},
        {6.0, 2, 1, 0, Z011},
        {-2.0, 2, 2, 2, -1},
        {6.0, 2, 0, 1, X101},
        {-6.0, 1, 1, 1, Z110},
        {6.0, 1, 2, 0, Z101},
        {-3.0, 0, 2, 1, Z020},
        {6.0, 0, 3, 0, Z011},
        {-1.0, 0, 4, 2, -1},
    }};
    t.aux3d[AUX_ZR110] = {"Zr[1,1,0]", 1.0 / 6.0, 2, 2, {
        {6.0, 1, 1, 2, X101},
        {-6.0, 1, 2, 1, X110},
        {-3.0, 2, 1, 1, X020},
        {6.0, 0, 2, 2, Y101},
        {-4.0, 5, 1, 1, -1},
        {1.0, 1, 5, 1, -1},
        {6.0, 4, 0, 0, Z110},
        {-6.0, 0, 4, 0, Z110},
        {-6.0, 2, 1, 1, Z101},
        {6.0, 1, 2, 1, Z011},
        {3.0, 1, 1, 2, Z020},
        {-6.0, 3, 0, 1, X110},
        {-3.0, 3, 3, 1, -1},
        {12.0, 3, 1, 0, X101},
        {12.0, 1, 3, 0, X101},
        {-6.0, 0, 3, 1, Z101},
        {6.0, 3, 1, 0, Z020},
        {6.0, 1, 3, 0, Z020},
        {6.0, 3, 0, 1, Z011},
        {-6.0, 3, 1, 3, -1},
        {6.0, 2, 0, 2, Z110},
        {6.0, 2, 0, 2, Y101},
        {-3.0, 0, 3, 1, X020},
        {-3.0, 1, 3, 3, -1},
    }};
    t.aux3d[AUX_YR101] = {"Yr[1,0,1]", -1.0 / 6.0, 2, 2, {
        {-6.0, 4, 0, 0, Y101},
        {-12.0, 1, 2, 1, X110},
        {6.0, 0, 2, 2, Y101},
        {-6.0, 0, 4, 0, Z110},
        {-6.0, 2, 1, 1, X020},
        {-6.0, 2, 2, 0, Z110},
        {-12.0, 2, 1, 1, Z101},
        {6.0, 0, 2, 2, Z110},
        {-12.0, 2, 2, 0, Y101},
        {-6.0, 0, 4, 0, Y101},
        {-6.0, 0, 3, 1, X020},
        {-12.0, 3, 0, 1, X110},
        {-3.0, 1, 3, 3, -1},
        {9.0, 3, 3, 1, -1},
        {4.0, 5, 1, 1, -1},
        {-12.0, 0, 3, 1, Z101},
        {12.0, 3, 0, 1, Z011},
        {3.0, 1, 3, 0, Z020},
        {5.0, 1, 5, 1, -1},
        {-3.0, 1, 1, 2, Z020},
        {12.0, 1, 2, 1, Z011},
        {-6.0, 1, 1, 2, X101},
        {6.0, 1, 3, 0, X101},
        {6.0, 3, 1, 0, X101},
        {6.0, 2, 0, 2, Y101},
        {3.0, 3, 1, 0, Z020},
    }};
    t.aux3d[AUX_XR110] = {"Xr[1,1,0]", 1.0 / 6.0, 1, 2, {
        {-1.0, 1, 5, 0, -1},
        {3.0, 1, 3, 2, -1},
        {-6.0, 0, 2, 1, Y101},
        {-6.0, 2, 0, 1, Y101},
        {-6.0, 0, 2, 1, Z110},
        {-2.0, 5, 1, 0, -1},
        {6.0, 3, 0, 0, X110},
        {3.0, 1, 1, 1, Z020},
        {3.0, 2, 1, 0, X020},
        {6.0, 1, 1, 1, X101},
        {6.0, 1, 2, 0, X110},
        {3.0, 0, 3, 0, X020},
        {-3.0, 3, 3, 0, -1},
        {-6.0, 0, 1, 2, Z101},
        {6.0, 1, 0, 2, Z011},
    }};
    t.aux3d[AUX_XR101] = {"Xr[1,0,1]", 1.0 / 6.0, 1, 1, {
        {-2.0, 4, 0, 1, -1},
        {6.0, 2, 0, 0, X101},
        {2.0, 2, 2, 1, -1},
        {2.0, 2, 0, 3, -1},
        {-6.0, 1, 1, 0, Z110},
        {-6.0, 1, 0, 1, Z101},
        {-6.0, 0, 1, 1, Z011},
        {2.0, 0, 2, 3, -1},
        {1.0, 0, 4, 1, -1},
        {-3.0, 0, 2, 0, Z020},
    }};
    t.aux3d[AUX_XR020] = {"Xr[0,2,0]", -1.0 / 3.0, 2, 1, {
        {-1.0, 4, 2, 0, -1},
        {-1.0, 2, 4, 0, -1},
        {-3.0, 1, 2, 0, X020},
        {-3.0, 2, 2, 2, -1},
        {6.0, 0, 2, 1, X101},
        {6.0, 1, 1, 1, Z110},
        {-3.0, 2, 0, 1, Z020},
        {6.0, 2, 1, 0, X110},
        {-3.0, 3, 0, 0, X020},
        {6.0, 0, 3, 0, X110},
    }};

    // ---- spatial rotation invariants over the auxiliaries, value = sum / D^dpow ----
    t.se3.resize(SE3_COUNT);
    t.se3[SE3_Z010] = {"Z_SE[0,1,0]", 0, {
        {-1.0, AUX_ZR010, -1},
    }};
    t.se3[SE3_Y100] = {"Y_SE[1,0,0]", 1, {
        {1.0, AUX_ZR020, AUX_YR100},
        {2.0, AUX_ZR011, AUX_ZR100},
    }};
    t.se3[SE3_Z100] = {"Z_SE[1,0,0]", 1, {
        {1.0, AUX_ZR020, AUX_ZR100},
        {-2.0, AUX_ZR011, AUX_YR100},
    }};
    t.se3[SE3_Y101] = {"Y_SE[1,0,1]", 2, {
        {2.0, AUX_ZR020, AUX_ZR011, AUX_ZR101},
        {1.0, AUX_ZR011, AUX_ZR020, AUX_XR020},
        {-4.0, AUX_ZR011, AUX_ZR011, AUX_ZR110},
        {1.0, AUX_ZR020, AUX_ZR020, AUX_YR101},
    }};
    t.se3[SE3_Z101] = {"Z_SE[1,0,1]", 2, {
        {-2.0, AUX_ZR020, AUX_ZR011, AUX_ZR110},
        {1.0, AUX_ZR020, AUX_ZR020, AUX_ZR101},
        {-2.0, AUX_ZR011, AUX_ZR011, AUX_XR020},
        {-2.0, AUX_ZR011, AUX_ZR020, AUX_YR101},
    }};
    t.se3[SE3_Z110] = {"Z_SE[1,1,0]", 2, {
        {2.0, AUX_ZR020, AUX_ZR011, AUX_ZR101},
        {1.0, AUX_ZR011, AUX_ZR020, AUX_XR020},
        {-4.0, AUX_ZR011, AUX_ZR011, AUX_YR101},
        {1.0, AUX_ZR020, AUX_ZR020, AUX_ZR110},
    }};
    return t;
}

}  // namespace

const ExpressionTables& reference_tables() {
    static const ExpressionTables tables = build_tables();
    return tables;
}

ExpressionTables mutated_tables(const MutationSpec& spec) {
    ExpressionTables t = reference_tables();
    auto bump_pe = [&](std::vector<PotentialExpression>& fam) {
        auto& e = fam.at(static_cast<std::size_t>(spec.expr));
        e.terms.at(static_cast<std::size_t>(spec.term)).coeff *= 1.0 + spec.rel_delta;
    };
    switch (spec.family) {
        case ExprFamily::se2:
            bump_pe(t.se2);
            break;
        case ExprFamily::aux3d:
            bump_pe(t.aux3d);
            break;
        case ExprFamily::se3: {
            auto& e = t.se3.at(static_cast<std::size_t>(spec.expr));
            e.terms.at(static_cast<std::size_t>(spec.term)).coeff *= 1.0 + spec.rel_delta;
            break;
        }
    }
    return t;
}

std::string mutated_expression_name(const MutationSpec& spec) {
    const auto& t = reference_tables();
    switch (spec.family) {
        case ExprFamily::se2:
            return t.se2.at(static_cast<std::size_t>(spec.expr)).name;
        case ExprFamily::aux3d:
            return t.aux3d.at(static_cast<std::size_t>(spec.expr)).name;
        case ExprFamily::se3:
            return t.se3.at(static_cast<std::size_t>(spec.expr)).name;
    }
    throw std::logic_error("unknown expression family");
}

std::vector<std::pair<int, int>> mutation_slots(ExprFamily family) {
    const auto& t = reference_tables();
    std::vector<std::pair<int, int>> out;
    auto fill = [&](auto const& fam) {
        for (std::size_t e = 0; e < fam.size(); ++e)
            for (std::size_t k = 0; k < fam[e].terms.size(); ++k)
                out.push_back({static_cast<int>(e), static_cast<int>(k)});
    };
    switch (family) {
        case ExprFamily::se2: fill(t.se2); break;
        case ExprFamily::aux3d: fill(t.aux3d); break;
        case ExprFamily::se3: fill(t.se3); break;
    }
    return out;
}

std::vector<double> evaluate_expression(const PotentialExpression& e, const CenteredCurve& cc,
                                        const PotentialTable& table) {
    const std::size_t n = cc.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = cc.pts[i][0], y = cc.pts[i][1], z = cc.pts[i][2];
        double s = 0.0;
        for (const auto& term : e.terms) {
            double v = term.coeff;
            for (int k = 0; k < term.px; ++k) v *= x;
            for (int k = 0; k < term.py; ++k) v *= y;
            for (int k = 0; k < term.pz; ++k) v *= z;
            if (term.pot >= 0) v *= table.traces[static_cast<std::size_t>(term.pot)][i];
            s += v;
        }
        s *= e.front;
        if (e.rpow > 0 || e.Rpow > 0) {
            const double r2 = x * x + y * y;
            const double R2 = r2 + z * z;
            for (int k = 0; k < e.rpow; ++k) s /= std::sqrt(r2);
            for (int k = 0; k < e.Rpow; ++k) s /= std::sqrt(R2);
        }
        out[i] = s;
    }
    return out;
}

}  // namespace intsig
