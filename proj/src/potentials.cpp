#include "intsig/potentials.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace intsig {

namespace {

// Two-point Gauss-Legendre nodes on [0,1]; exact for cubic integrands, so
// every per-segment monomial integral of the orders used here is exact.
constexpr double kGaussLo = 0.21132486540518711775;  // (1 - 1/sqrt(3)) / 2
constexpr double kGaussHi = 0.78867513459481288225;  // (1 + 1/sqrt(3)) / 2

double monomial(const Point& p, const MultiIndex& a) {
    double v = 1.0;
    for (int c = 0; c < 3; ++c)
        for (int k = 0; k < a[c]; ++k) v *= p[c];
    return v;
}

struct KahanSum {
    double s = 0.0, c = 0.0;
    void add(double x) {
        const double y = x - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

int first_nonzero(const MultiIndex& a, int dim) {
    for (int j = 0; j < dim; ++j)
        if (a[j] > 0) return j;
    return -1;
}

}  // namespace

CenteredCurve CenteredCurve::from(const Curve& c) {
    c.validate();
    CenteredCurve out;
    out.dim = c.dim;
    out.pts.resize(c.pts.size());
    const Point o = c.pts.front();
    for (std::size_t i = 0; i < c.pts.size(); ++i)
        for (int k = 0; k < 3; ++k) out.pts[i][k] = c.pts[i][k] - o[k];
    return out;
}

std::string PotentialSpec::name(int dim) const {
    std::string s(1, "XYZ"[target]);
    s += '[';
    for (int c = 0; c < dim; ++c) {
        if (c) s += ',';
        s += std::to_string(alpha[c]);
    }
    s += ']';
    return s;
}

std::vector<double> potential_trace(const CenteredCurve& cc, const PotentialSpec& spec) {
    const std::size_t n = cc.size();
    std::vector<double> out(n, 0.0);
    KahanSum acc;
    for (std::size_t i = 1; i < n; ++i) {
        const Point& a = cc.pts[i - 1];
        const Point& b = cc.pts[i];
        Point g1, g2;
        for (int k = 0; k < 3; ++k) {
            g1[k] = a[k] + kGaussLo * (b[k] - a[k]);
            g2[k] = a[k] + kGaussHi * (b[k] - a[k]);
        }
        const double dt = b[spec.target] - a[spec.target];
        acc.add(dt * 0.5 * (monomial(g1, spec.alpha) + monomial(g2, spec.alpha)));
        out[i] = acc.s;
    }
    return out;
}

const std::vector<PotentialSpec>& stored_set(int dim) {
    static const std::vector<PotentialSpec> set2 = {
        {{1, 0, 0}, 1}, {{2, 0, 0}, 1}, {{1, 1, 0}, 1},
        {{3, 0, 0}, 1}, {{2, 1, 0}, 1}, {{1, 2, 0}, 1},
    };
    static const std::vector<PotentialSpec> set3 = {
        {{1, 1, 0}, 0}, {{1, 0, 1}, 0}, {{0, 2, 0}, 0},
        {{1, 0, 0}, 2}, {{1, 0, 0}, 1}, {{1, 0, 1}, 1},
        {{0, 1, 0}, 2}, {{0, 1, 1}, 2}, {{0, 2, 0}, 2},
        {{1, 0, 1}, 2}, {{1, 1, 0}, 2},
    };
    if (dim == 2) return set2;
    if (dim == 3) return set3;
    throw std::invalid_argument("stored_set: dim must be 2 or 3");
}

int stored_index(int dim, const PotentialSpec& spec) {
    const auto& set = stored_set(dim);
    for (std::size_t i = 0; i < set.size(); ++i)
        if (set[i] == spec) return static_cast<int>(i);
    return -1;
}

PotentialTable potential_table(const CenteredCurve& cc) {
    PotentialTable t;
    t.dim = cc.dim;
    const auto& set = stored_set(cc.dim);
    t.traces.reserve(set.size());
    for (const auto& s : set) t.traces.push_back(potential_trace(cc, s));
    return t;
}

bool is_admissible(const PotentialSpec& spec, int dim) {
    if (spec.target < 0 || spec.target >= dim) return false;
    int off = 0, total = 0;
    for (int c = 0; c < dim; ++c) {
        if (spec.alpha[c] < 0) return false;
        total += spec.alpha[c];
        if (c != spec.target) off += spec.alpha[c];
    }
    for (int c = dim; c < 3; ++c)
        if (spec.alpha[c] != 0) return false;
    return total >= 1 && off >= 1;
}

bool is_canonical(const PotentialSpec& spec, int dim) {
    if (!is_admissible(spec, dim)) return false;
    return spec.target > first_nonzero(spec.alpha, dim);
}

std::vector<PotentialSpec> enumerate_potentials(int dim, int order, bool canonical_only) {
    std::vector<PotentialSpec> out;
    // all alpha with |alpha| == order over `dim` coordinates
    std::vector<MultiIndex> alphas;
    MultiIndex a{0, 0, 0};
    if (dim == 2) {
        for (a[0] = 0; a[0] <= order; ++a[0]) {
            a[1] = order - a[0];
            alphas.push_back(a);
        }
    } else {
        for (a[0] = 0; a[0] <= order; ++a[0])
            for (a[1] = 0; a[1] + a[0] <= order; ++a[1]) {
                a[2] = order - a[0] - a[1];
                alphas.push_back(a);
            }
    }
    for (const auto& al : alphas)
        for (int t = 0; t < dim; ++t) {
            PotentialSpec s{al, t};
            if (canonical_only ? is_canonical(s, dim) : is_admissible(s, dim)) out.push_back(s);
        }
    return out;
}

long long count_independent(int n, int l) {
    if (n < 2 || l < 1) throw std::invalid_argument("count_independent needs n >= 2, l >= 1");
    auto fact = [](int k) {
        long long f = 1;
        for (int i = 2; i <= k; ++i) f *= i;
        return f;
    };
    long long total = (n - 1) * (fact(n + l) / (fact(n) * fact(l)));
    for (int m = 1; m <= n - 1; ++m) total -= fact(n - m + l) / (fact(n - m) * fact(l));
    return total;
}

namespace {

void compositions(int remaining, int slots, std::vector<int>& cur,
                  const std::function<void(const std::vector<int>&)>& emit) {
    if (slots == 1) {
        cur.push_back(remaining);
        emit(cur);
        cur.pop_back();
        return;
    }
    for (int k = 0; k <= remaining; ++k) {
        cur.push_back(k);
        compositions(remaining - k, slots - 1, cur, emit);
        cur.pop_back();
    }
}

}  // namespace

long long count_by_enumeration(int n, int l) {
    if (n < 2 || l < 1) throw std::invalid_argument("count_by_enumeration needs n >= 2, l >= 1");
    long long count = 0;
    std::vector<int> cur;
    // the independent set is cumulative: every canonical choice of order <= l
    for (int order = 1; order <= l; ++order) {
        compositions(order, n, cur, [&](const std::vector<int>& alpha) {
            int first_nz = -1;
            for (int j = 0; j < n; ++j)
                if (alpha[j] > 0) {
                    first_nz = j;
                    break;
                }
            for (int i = 0; i < n; ++i) {
                const int off = order - alpha[i];
                if (off >= 1 && i > first_nz) ++count;
            }
        });
    }
    return count;
}

std::vector<BypartsRelation> byparts_relations(int dim, int max_order) {
    std::vector<BypartsRelation> out;
    std::vector<MultiIndex> seen;
    for (int order = 1; order <= max_order; ++order) {
        for (const auto& s : enumerate_potentials(dim, order, false)) {
            if (stored_index(dim, s) >= 0) continue;
            MultiIndex beta = s.alpha;
            beta[s.target] += 1;
            if (std::find(seen.begin(), seen.end(), beta) != seen.end()) continue;
            seen.push_back(beta);
            BypartsRelation rel;
            rel.beta = beta;
            for (int j = 0; j < dim; ++j) {
                if (beta[j] == 0) continue;
                MultiIndex am = beta;
                am[j] -= 1;
                rel.members.push_back({am, j});
            }
            out.push_back(rel);
        }
    }
    return out;
}

namespace {

// alpha vanishes away from the target, so the integral closes in one power
bool is_pure(const PotentialSpec& s, int dim) {
    for (int c = 0; c < dim; ++c)
        if (c != s.target && s.alpha[c] != 0) return false;
    return true;
}

std::vector<double> pure_trace(const CenteredCurve& cc, const PotentialSpec& s) {
    // integral of x_t^k dx_t from the start point (which sits at 0)
    const int k = s.alpha[s.target];
    std::vector<double> out(cc.size());
    for (std::size_t i = 0; i < cc.size(); ++i) {
        double v = 1.0;
        for (int j = 0; j < k + 1; ++j) v *= cc.pts[i][s.target];
        out[i] = v / (k + 1);
    }
    return out;
}

std::vector<double> monomial_trace(const CenteredCurve& cc, const MultiIndex& beta) {
    std::vector<double> out(cc.size());
    for (std::size_t i = 0; i < cc.size(); ++i) out[i] = monomial(cc.pts[i], beta);
    return out;
}

}  // namespace

std::vector<double> reduced_potential_trace(const CenteredCurve& cc, const PotentialTable& table,
                                            const PotentialSpec& spec) {
    const int dim = cc.dim;
    const int si = stored_index(dim, spec);
    if (si >= 0) return table.traces[static_cast<std::size_t>(si)];
    if (is_pure(spec, dim)) return pure_trace(cc, spec);
    if (!is_admissible(spec, dim))
        throw std::invalid_argument("reduced_potential_trace: inadmissible potential " +
                                    spec.name(dim));

    MultiIndex beta = spec.alpha;
    beta[spec.target] += 1;
    std::vector<double> val = monomial_trace(cc, beta);
    for (int j = 0; j < dim; ++j) {
        if (beta[j] == 0 || j == spec.target) continue;
        MultiIndex am = beta;
        am[j] -= 1;
        const PotentialSpec member{am, j};
        // One-step reduction: sibling members must be stored or pure, which
        // holds for both stored sets at every order used here.
        if (stored_index(dim, member) < 0 && !is_pure(member, dim))
            throw std::logic_error("by-parts reduction needs a second step for " +
                                   member.name(dim));
        const auto mv = reduced_potential_trace(cc, table, member);
        const double bj = beta[j];
        for (std::size_t i = 0; i < val.size(); ++i) val[i] -= bj * mv[i];
    }
    const double bi = beta[spec.target];
    for (auto& v : val) v /= bi;
    return val;
}

double byparts_residual(const CenteredCurve& cc, int max_order) {
    const PotentialTable table = potential_table(cc);
    double worst = 0.0;
    for (int order = 1; order <= max_order; ++order) {
        for (const auto& s : enumerate_potentials(cc.dim, order, false)) {
            if (stored_index(cc.dim, s) >= 0) continue;
            const auto direct = potential_trace(cc, s);
            const auto via = reduced_potential_trace(cc, table, s);
            MultiIndex beta = s.alpha;
            beta[s.target] += 1;
            double scale = 1.0, diff = 0.0;
            for (std::size_t i = 0; i < direct.size(); ++i) {
                scale = std::max(scale, std::abs(monomial(cc.pts[i], beta)));
                diff = std::max(diff, std::abs(direct[i] - via[i]));
            }
            worst = std::max(worst, diff / scale);
        }
    }
    return worst;
}

namespace {

using Poly = std::map<MultiIndex, double>;

Poly multiply_linear(const Poly& p, const std::array<double, 3>& row, int dim) {
    Poly out;
    for (const auto& [mi, c] : p)
        for (int k = 0; k < dim; ++k) {
            if (row[k] == 0.0) continue;
            MultiIndex m2 = mi;
            m2[k] += 1;
            out[m2] += c * row[k];
        }
    return out;
}

}  // namespace

PotentialTable predicted_table_under_map(const CenteredCurve& cc, const PotentialTable& table,
                                         const AffineMap& m) {
    if (cc.dim != m.dim) throw std::invalid_argument("curve and map dimensions differ");
    PotentialTable out;
    out.dim = cc.dim;
    const auto& set = stored_set(cc.dim);
    const std::size_t n = cc.size();
    for (const auto& s : set) {
        // expand (A x)^alpha as a polynomial in the original coordinates
        Poly poly{{MultiIndex{0, 0, 0}, 1.0}};
        for (int j = 0; j < cc.dim; ++j)
            for (int rep = 0; rep < s.alpha[j]; ++rep)
                poly = multiply_linear(poly, m.linear[j], cc.dim);
        std::vector<double> pred(n, 0.0);
        for (const auto& [gamma, coeff] : poly) {
            for (int c = 0; c < cc.dim; ++c) {
                const double w = coeff * m.linear[s.target][c];
                if (w == 0.0) continue;
                const auto tr = reduced_potential_trace(cc, table, PotentialSpec{gamma, c});
                for (std::size_t i = 0; i < n; ++i) pred[i] += w * tr[i];
            }
        }
        out.traces.push_back(std::move(pred));
    }
    return out;
}

SegmentAccumulator SegmentAccumulator::from(const CenteredCurve& cc) {
    SegmentAccumulator sa;
    sa.dim = cc.dim;
    sa.pts = cc.pts;
    for (int a = 0; a < cc.dim; ++a)
        for (int t = 0; t < cc.dim; ++t) {
            if (a == t) continue;
            MultiIndex mi{0, 0, 0};
            mi[a] = 1;
            sa.order1_pairs.push_back({a, t});
            sa.order1.push_back(potential_trace(cc, PotentialSpec{mi, t}));
        }
    return sa;
}

double SegmentAccumulator::segment_order1(std::size_t p, std::size_t q, int a, int t) const {
    for (std::size_t k = 0; k < order1_pairs.size(); ++k) {
        if (order1_pairs[k][0] == a && order1_pairs[k][1] == t) {
            return (order1[k][q] - order1[k][p]) - pts[p][a] * (pts[q][t] - pts[p][t]);
        }
    }
    throw std::invalid_argument("segment_order1: no such coordinate pair");
}

}  // namespace intsig
