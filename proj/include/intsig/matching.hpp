#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "intsig/signatures.hpp"

namespace intsig {

// Root-mean-square difference of two traces sampled on the same parameter
// grid; the shorter is linearly resampled in index when lengths differ.
double trace_distance(const std::vector<double>& a, const std::vector<double>& b);

// Ordered comparison of global signatures: both are resampled to K points
// uniform in cumulative chord length, each is normalized by its own
// bounding-box diagonal, and the RMS pointwise distance is returned.
double global_signature_distance(const SignaturePoints& a, const SignaturePoints& b,
                                 std::size_t K = 200);

// Unordered comparison of local signatures: both point sets are scaled by
// the larger bounding-box diagonal, then half the sum of the two mean
// nearest-neighbour distances is returned (symmetric Chamfer).
double local_signature_distance(const SignaturePoints& a, const SignaturePoints& b);

// Discrete Frechet distance between signature polylines (diagnostic).
double frechet_distance(const SignaturePoints& a, const SignaturePoints& b);

// 1-nearest-neighbour classification. labels[i] gives the class of train
// item i; ties resolve to the lowest training index.
struct ClassificationItem {
    std::size_t test_index = 0;
    int true_label = 0;
    int predicted_label = 0;
    std::size_t nearest_train = 0;
    double distance = 0.0;
};
struct ClassificationReport {
    double error_rate = 0.0;
    std::vector<ClassificationItem> items;
    std::vector<std::vector<std::size_t>> confusion;  // [true][predicted]
};
ClassificationReport nn_classify(
    std::size_t n_train, std::size_t n_test, const std::vector<int>& train_labels,
    const std::vector<int>& test_labels,
    const std::function<double(std::size_t test, std::size_t train)>& dist);

}  // namespace intsig
