#include "intsig/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace intsig {

namespace {

// value of `v` at fractional index u in [0, size-1]
double at_fractional(const std::vector<double>& v, double u) {
    if (u <= 0.0) return v.front();
    const double last = static_cast<double>(v.size()) - 1.0;
    if (u >= last) return v.back();
    const std::size_t j = static_cast<std::size_t>(u);
    const double w = u - static_cast<double>(j);
    return (1.0 - w) * v[j] + w * v[j + 1];
}

double bbox_diag(const SignaturePoints& s) {
    double lo0 = 1e300, lo1 = 1e300, hi0 = -1e300, hi1 = -1e300;
    for (const auto& p : s.pts) {
        lo0 = std::min(lo0, p[0]);
        hi0 = std::max(hi0, p[0]);
        lo1 = std::min(lo1, p[1]);
        hi1 = std::max(hi1, p[1]);
    }
    return std::hypot(hi0 - lo0, hi1 - lo1);
}

SignaturePoints resample_by_chord(const SignaturePoints& s, std::size_t K) {
    std::vector<double> cum(s.pts.size(), 0.0);
    for (std::size_t i = 1; i < s.pts.size(); ++i)
        cum[i] = cum[i - 1] + std::hypot(s.pts[i][0] - s.pts[i - 1][0],
                                         s.pts[i][1] - s.pts[i - 1][1]);
    SignaturePoints out;
    out.pts.resize(K);
    const double total = cum.back();
    if (total <= 0.0) {  // degenerate: all points coincide
        for (auto& p : out.pts) p = s.pts.front();
        return out;
    }
    std::size_t j = 1;
    for (std::size_t i = 0; i < K; ++i) {
        const double target = total * static_cast<double>(i) / static_cast<double>(K - 1);
        while (j + 1 < cum.size() && cum[j] < target) ++j;
        const double seg = cum[j] - cum[j - 1];
        const double w = seg > 0.0 ? (target - cum[j - 1]) / seg : 0.0;
        out.pts[i] = {(1.0 - w) * s.pts[j - 1][0] + w * s.pts[j][0],
                      (1.0 - w) * s.pts[j - 1][1] + w * s.pts[j][1]};
    }
    return out;
}

}  // namespace

double trace_distance(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("trace_distance needs nonempty traces");
    const std::vector<double>& longer = a.size() >= b.size() ? a : b;
    const std::vector<double>& shorter = a.size() >= b.size() ? b : a;
    const std::size_t n = longer.size();
    const double stretch =
        (static_cast<double>(shorter.size()) - 1.0) / (static_cast<double>(n) - 1.0);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = longer[i] - at_fractional(shorter, static_cast<double>(i) * stretch);
        s += d * d;
    }
    return std::sqrt(s / static_cast<double>(n));
}

double global_signature_distance(const SignaturePoints& a, const SignaturePoints& b,
                                 std::size_t K) {
    if (a.pts.size() < 2 || b.pts.size() < 2)
        throw std::invalid_argument("global signature distance needs at least two points each");
    SignaturePoints ra = resample_by_chord(a, K);
    SignaturePoints rb = resample_by_chord(b, K);
    const double da = bbox_diag(ra), db = bbox_diag(rb);
    if (da > 0.0)
        for (auto& p : ra.pts) {
            p[0] /= da;
            p[1] /= da;
        }
    if (db > 0.0)
        for (auto& p : rb.pts) {
            p[0] /= db;
            p[1] /= db;
        }
    double s = 0.0;
    for (std::size_t i = 0; i < K; ++i) {
        const double d0 = ra.pts[i][0] - rb.pts[i][0];
        const double d1 = ra.pts[i][1] - rb.pts[i][1];
        s += d0 * d0 + d1 * d1;
    }
    return std::sqrt(s / static_cast<double>(K));
}

double local_signature_distance(const SignaturePoints& a, const SignaturePoints& b) {
    if (a.pts.empty() || b.pts.empty())
        throw std::invalid_argument("local signature distance needs nonempty point sets");
    const double scale = std::max({bbox_diag(a), bbox_diag(b), 1e-300});
    auto mean_nn = [&](const SignaturePoints& from, const SignaturePoints& to) {
        double acc = 0.0;
        for (const auto& p : from.pts) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& q : to.pts)
                best = std::min(best, std::hypot(p[0] - q[0], p[1] - q[1]));
            acc += best;
        }
        return acc / (static_cast<double>(from.pts.size()) * scale);
    };
    return 0.5 * (mean_nn(a, b) + mean_nn(b, a));
}

double frechet_distance(const SignaturePoints& a, const SignaturePoints& b) {
    const std::size_t n = a.pts.size(), m = b.pts.size();
    if (n == 0 || m == 0) throw std::invalid_argument("frechet_distance needs nonempty polylines");
    auto d = [&](std::size_t i, std::size_t j) {
        return std::hypot(a.pts[i][0] - b.pts[j][0], a.pts[i][1] - b.pts[j][1]);
    };
    std::vector<double> prev(m), cur(m);
    prev[0] = d(0, 0);
    for (std::size_t j = 1; j < m; ++j) prev[j] = std::max(prev[j - 1], d(0, j));
    for (std::size_t i = 1; i < n; ++i) {
        cur[0] = std::max(prev[0], d(i, 0));
        for (std::size_t j = 1; j < m; ++j)
            cur[j] = std::max(std::min({prev[j], prev[j - 1], cur[j - 1]}), d(i, j));
        std::swap(prev, cur);
    }
    return prev[m - 1];
}

ClassificationReport nn_classify(
    std::size_t n_train, std::size_t n_test, const std::vector<int>& train_labels,
    const std::vector<int>& test_labels,
    const std::function<double(std::size_t, std::size_t)>& dist) {
    if (train_labels.size() != n_train || test_labels.size() != n_test)
        throw std::invalid_argument("label lists must match the item counts");
    ClassificationReport rep;
    int n_classes = 0;
    for (int l : train_labels) n_classes = std::max(n_classes, l + 1);
    for (int l : test_labels) n_classes = std::max(n_classes, l + 1);
    rep.confusion.assign(static_cast<std::size_t>(n_classes),
                         std::vector<std::size_t>(static_cast<std::size_t>(n_classes), 0));
    std::size_t errors = 0;
    for (std::size_t t = 0; t < n_test; ++t) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_i = 0;
        for (std::size_t r = 0; r < n_train; ++r) {
            const double d = dist(t, r);
            if (d < best) {  // ties keep the lowest training index
                best = d;
                best_i = r;
            }
        }
        ClassificationItem item;
        item.test_index = t;
        item.true_label = test_labels[t];
        item.predicted_label = train_labels[best_i];
        item.nearest_train = best_i;
        item.distance = best;
        if (item.predicted_label != item.true_label) ++errors;
        rep.confusion[static_cast<std::size_t>(item.true_label)]
                     [static_cast<std::size_t>(item.predicted_label)]++;
        rep.items.push_back(item);
    }
    rep.error_rate = n_test ? static_cast<double>(errors) / static_cast<double>(n_test) : 0.0;
    return rep;
}

}  // namespace intsig
