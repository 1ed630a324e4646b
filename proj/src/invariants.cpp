#include "intsig/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace intsig {

namespace {

enum Pot2 { Y10 = 0, Y20, Y11, Y30, Y21, Y12 };
enum Pot3 { X110 = 0, X101, X020, Z100, Y100, Y101, Z010, Z011, Z020, Z101, Z110 };

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// defined where |den| >= eps * max|den|; sample 0 is the limit value 0
std::vector<char> defined_mask(const std::vector<double>& den) {
    const double cut = kDefinedEps * max_abs(den);
    std::vector<char> def(den.size());
    for (std::size_t i = 0; i < den.size(); ++i) def[i] = std::abs(den[i]) >= cut;
    if (!def.empty()) def[0] = 1;
    return def;
}

void zero_where_undefined(TraceBundle& b) {
    for (auto& tr : b.tr)
        for (std::size_t i = 0; i < tr.size(); ++i)
            if (!b.def[i]) tr[i] = 0.0;
}

std::vector<char> and_mask(const std::vector<char>& a, const std::vector<char>& b) {
    std::vector<char> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] && b[i];
    if (!out.empty()) out[0] = 1;
    return out;
}

double coordinate_scale(const CenteredCurve& cc) {
    double m = 0.0;
    for (const auto& p : cc.pts)
        for (int k = 0; k < cc.dim; ++k) m = std::max(m, std::abs(p[k]));
    return m;
}

}  // namespace

const std::vector<double>& TraceBundle::operator[](const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return tr[i];
    throw std::invalid_argument("no trace named " + name);
}

// ---------------- planar ----------------

PlanarInvariants planar_invariants(const CenteredCurve& cc, const PotentialTable& table) {
    const std::size_t n = cc.size();
    PlanarInvariants out;
    out.coord_scale = coordinate_scale(cc);
    out.I1.resize(n);
    out.I2.resize(n);
    out.I3.resize(n);
    const auto& T = table.traces;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = cc.pts[i][0], y = cc.pts[i][1];
        out.I1[i] = T[Y10][i] - 0.5 * x * y;
        out.I2[i] = T[Y11][i] * x - 0.5 * T[Y20][i] * y - (1.0 / 6.0) * x * x * y * y;
        out.I3[i] = T[Y12][i] * x * x - T[Y21][i] * x * y + (1.0 / 3.0) * T[Y30][i] * y * y -
                    (1.0 / 12.0) * x * x * x * y * y * y;
    }
    return out;
}

TraceBundle planar_rotation_invariants(const CenteredCurve& cc, const PotentialTable& table,
                                       const ExpressionTables& tables) {
    const std::size_t n = cc.size();
    TraceBundle b;
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = std::hypot(cc.pts[i][0], cc.pts[i][1]);
    b.names.push_back("X_SE");
    b.tr.push_back(r);
    for (const auto& e : tables.se2) {
        b.names.push_back(e.name);
        b.tr.push_back(evaluate_expression(e, cc, table));
    }
    b.def = defined_mask(r);
    zero_where_undefined(b);
    return b;
}

TraceBundle planar_special_linear_traces(const CenteredCurve& cc, const PotentialTable& table,
                                         const ExpressionTables& tables) {
    const TraceBundle se = planar_rotation_invariants(cc, table, tables);
    const auto& xse = se["X_SE"];
    const auto& y11 = se["Y_SE[1,1]"];
    const auto& y20 = se["Y_SE[2,0]"];
    const auto& y21 = se["Y_SE[2,1]"];
    const auto& y12 = se["Y_SE[1,2]"];
    const auto& y30 = se["Y_SE[3,0]"];
    const std::size_t n = xse.size();

    TraceBundle b;
    b.names = {"Y_SA[2,1]", "Y_SA[3,1]"};
    b.tr.assign(2, std::vector<double>(n, 0.0));
    b.def = and_mask(se.def, defined_mask(y11));
    for (std::size_t i = 0; i < n; ++i) {
        if (!b.def[i] || i == 0) continue;
        const double q = y20[i] / y11[i];
        b.tr[0][i] = y21[i] - q * y12[i];
        b.tr[1][i] = (y30[i] - 1.5 * q * y21[i] + 0.75 * q * q * y12[i]) / (xse[i] * xse[i]);
    }
    return b;
}

TraceBundle planar_affine_quotients(const PlanarInvariants& inv) {
    const std::size_t n = inv.I1.size();
    TraceBundle b;
    b.names = {"I2A", "I3A"};
    b.tr.assign(2, std::vector<double>(n, 0.0));
    b.def = defined_mask(inv.I1);
    for (std::size_t i = 1; i < n; ++i) {
        if (!b.def[i]) continue;
        const double i1 = inv.I1[i];
        b.tr[0][i] = inv.I2[i] / (i1 * i1);
        b.tr[1][i] = inv.I3[i] / (i1 * i1 * i1);
    }
    return b;
}

TraceBundle planar_normalized_invariants(const PlanarInvariants& inv) {
    const std::size_t n = inv.I1.size();
    const double m1 = max_abs(inv.I1);
    const double s = inv.coord_scale;
    if (m1 <= kDegenerateRel * s * s)
        throw DegenerateError("first invariant vanishes identically; the curve is a straight segment");
    TraceBundle b;
    b.names = {"nI1", "nI2"};
    b.tr.assign(2, std::vector<double>(n, 0.0));
    b.def.assign(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
        b.tr[0][i] = std::abs(inv.I1[i]) / m1;
        b.tr[1][i] = std::abs(inv.I2[i]) / (m1 * m1);
    }
    return b;
}

namespace {

CenteredCurve recentered_segment(const CenteredCurve& cc, std::size_t p, std::size_t q) {
    if (q <= p || q >= cc.size())
        throw std::invalid_argument("segment bounds must satisfy p < q < n");
    CenteredCurve sub;
    sub.dim = cc.dim;
    sub.pts.resize(q - p + 1);
    for (std::size_t i = p; i <= q; ++i)
        for (int k = 0; k < 3; ++k) sub.pts[i - p][k] = cc.pts[i][k] - cc.pts[p][k];
    return sub;
}

}  // namespace

std::array<double, 2> planar_segment_pair(const CenteredCurve& cc, std::size_t p, std::size_t q) {
    const CenteredCurve sub = recentered_segment(cc, p, q);
    const PotentialTable table = potential_table(sub);
    const PlanarInvariants inv = planar_invariants(sub, table);
    return {inv.I2.back(), inv.I3.back()};
}

// ---------------- spatial ----------------

TraceBundle spatial_auxiliary_values(const CenteredCurve& cc, const PotentialTable& table,
                                     const ExpressionTables& tables) {
    const std::size_t n = cc.size();
    TraceBundle b;
    for (const auto& e : tables.aux3d) {
        b.names.push_back(e.name);
        b.tr.push_back(evaluate_expression(e, cc, table));
    }
    std::vector<double> r(n), R(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = cc.pts[i][0], y = cc.pts[i][1], z = cc.pts[i][2];
        r[i] = std::hypot(x, y);
        R[i] = std::sqrt(x * x + y * y + z * z);
    }
    b.def = and_mask(defined_mask(r), defined_mask(R));
    zero_where_undefined(b);
    return b;
}

TraceBundle spatial_rotation_invariants(const CenteredCurve& cc, const PotentialTable& table,
                                        const ExpressionTables& tables) {
    const TraceBundle aux = spatial_auxiliary_values(cc, table, tables);
    const std::size_t n = cc.size();

    std::vector<double> R(n), D(n);
    const auto& z020 = aux.tr[AUX_ZR020];
    const auto& z011 = aux.tr[AUX_ZR011];
    for (std::size_t i = 0; i < n; ++i) {
        const double x = cc.pts[i][0], y = cc.pts[i][1], z = cc.pts[i][2];
        R[i] = std::sqrt(x * x + y * y + z * z);
        D[i] = std::sqrt(z020[i] * z020[i] + 4.0 * z011[i] * z011[i]);
    }

    TraceBundle b;
    b.names = {"X_SE", "Z_SE[0,1,0]", "Y_SE[1,0,0]", "Z_SE[1,0,0]",
               "Z_SE[0,2,0]", "Y_SE[1,0,1]", "Z_SE[1,0,1]", "Z_SE[1,1,0]"};
    b.tr.assign(8, std::vector<double>(n, 0.0));
    b.def = and_mask(aux.def, defined_mask(D));

    auto aux_at = [&](int idx, std::size_t i) { return idx < 0 ? 1.0 : aux.tr[idx][i]; };
    auto compose = [&](const CompositionExpression& e, std::size_t i) {
        double s = 0.0;
        for (const auto& t : e.terms)
            s += t.coeff * aux_at(t.a1, i) * aux_at(t.a2, i) * aux_at(t.a3, i);
        for (int k = 0; k < e.dpow; ++k) s /= D[i];
        return s;
    };

    for (std::size_t i = 0; i < n; ++i) {
        if (!b.def[i] || i == 0) continue;
        b.tr[0][i] = R[i];
        b.tr[1][i] = compose(tables.se3[SE3_Z010], i);
        b.tr[2][i] = compose(tables.se3[SE3_Y100], i);
        b.tr[3][i] = compose(tables.se3[SE3_Z100], i);
        b.tr[4][i] = D[i];
        b.tr[5][i] = compose(tables.se3[SE3_Y101], i);
        b.tr[6][i] = compose(tables.se3[SE3_Z101], i);
        b.tr[7][i] = compose(tables.se3[SE3_Z110], i);
    }
    return b;
}

SpatialInvariants spatial_invariants(const CenteredCurve& cc, const PotentialTable& table,
                                     const ExpressionTables& tables) {
    const std::size_t n = cc.size();
    const auto& T = table.traces;
    SpatialInvariants out;
    out.coord_scale = coordinate_scale(cc);
    out.J1.resize(n);
    out.J2.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = cc.pts[i][0], y = cc.pts[i][1], z = cc.pts[i][2];
        const double n1 = y * z / 2.0 - T[Z010][i];
        const double n2 = x * y / 2.0 - T[Y100][i];
        const double n3 = x * z / 2.0 - T[Z100][i];
        out.J1[i] = n1 * x + n2 * z - n3 * y;
        out.J2[i] =
            2.0 * n2 * (x * y * z * z - 3.0 * T[Z011][i] * x + 3.0 * y * T[Z101][i] -
                        z * T[Z110][i] - 2.0 * z * T[Y101][i]) +
            n3 * (2.0 * x * y * y * z + 3.0 * x * T[Z020][i] - 3.0 * z * T[X020][i] -
                  4.0 * y * T[Z110][i] - 2.0 * y * T[Y101][i]) -
            2.0 * n1 * (3.0 * y * T[X101][i] - 3.0 * z * T[X110][i] + x * T[Z110][i] -
                        x * T[Y101][i]);
    }

    const TraceBundle se = spatial_rotation_invariants(cc, table, tables);
    const auto& z010 = se["Z_SE[0,1,0]"];
    const auto& z020 = se["Z_SE[0,2,0]"];
    const auto& z101 = se["Z_SE[1,0,1]"];
    const auto& xse = se["X_SE"];
    out.J3.assign(n, 0.0);
    out.J3_def = and_mask(se.def, defined_mask(z010));
    for (std::size_t i = 1; i < n; ++i) {
        if (!out.J3_def[i]) continue;
        const double z_sa101 = z101[i] * z020[i] * z020[i] / (z010[i] * z010[i] * z010[i]);
        const double x_sa = z010[i] * xse[i];
        out.J3[i] = (27.0 / 8.0) * z_sa101 * x_sa * x_sa * x_sa;
    }
    return out;
}

std::vector<double> spatial_second_invariant_composed(const TraceBundle& se,
                                                      std::vector<char>* def_out) {
    const auto& z010 = se["Z_SE[0,1,0]"];
    const auto& z020 = se["Z_SE[0,2,0]"];
    const auto& z100 = se["Z_SE[1,0,0]"];
    const auto& y101 = se["Y_SE[1,0,1]"];
    const auto& z110 = se["Z_SE[1,1,0]"];
    const auto& xse = se["X_SE"];
    const std::size_t n = z010.size();
    std::vector<double> out(n, 0.0);
    std::vector<char> def = and_mask(se.def, defined_mask(z010));
    for (std::size_t i = 1; i < n; ++i) {
        if (!def[i]) continue;
        const double y_sa101 =
            (2.0 * y101[i] * z010[i] - 2.0 * z010[i] * z110[i] - 3.0 * z020[i] * z100[i]) /
                (2.0 * z010[i]) -
            0.5;
        out[i] = 2.0 * (y_sa101 + 0.5) * (z010[i] * xse[i]);
    }
    if (def_out) *def_out = std::move(def);
    return out;
}

TraceBundle spatial_affine_quotients(const SpatialInvariants& inv) {
    const std::size_t n = inv.J1.size();
    TraceBundle b;
    b.names = {"J2A", "J3A"};
    b.tr.assign(2, std::vector<double>(n, 0.0));
    b.def = and_mask(defined_mask(inv.J1), inv.J3_def);
    for (std::size_t i = 1; i < n; ++i) {
        if (!b.def[i]) continue;
        const double j1 = inv.J1[i];
        b.tr[0][i] = inv.J2[i] / (j1 * j1);
        b.tr[1][i] = inv.J3[i] / (j1 * j1 * j1 * j1);
    }
    return b;
}

TraceBundle spatial_normalized_invariants(const SpatialInvariants& inv) {
    const std::size_t n = inv.J1.size();
    const double m1 = max_abs(inv.J1);
    const double s = inv.coord_scale;
    if (m1 <= kDegenerateRel * s * s * s)
        throw DegenerateError("first invariant vanishes identically; the curve is planar or straight");
    TraceBundle b;
    b.names = {"nJ1", "nJ2"};
    b.tr.assign(2, std::vector<double>(n, 0.0));
    b.def.assign(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
        b.tr[0][i] = std::abs(inv.J1[i]) / m1;
        b.tr[1][i] = inv.J2[i] / (m1 * m1);
    }
    return b;
}

std::array<double, 2> spatial_segment_pair(const CenteredCurve& cc, std::size_t p, std::size_t q) {
    const CenteredCurve sub = recentered_segment(cc, p, q);
    const PotentialTable table = potential_table(sub);
    const SpatialInvariants inv = spatial_invariants(sub, table);
    return {inv.J2.back(), inv.J3.back()};
}

}  // namespace intsig
