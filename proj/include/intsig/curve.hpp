#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace intsig {

// A point is stored with three slots regardless of dimension; the unused z
// slot of a 2-D point is always exactly 0 so the same kernels serve both.
using Point = std::array<double, 3>;

struct CurveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParseError : CurveError {
    using CurveError::CurveError;
};
struct DegenerateError : CurveError {
    using CurveError::CurveError;
};

// Ordered sample sequence in 2 or 3 dimensions with optional parameter
// values. Parameters default to uniform on [0,1].
struct Curve {
    int dim = 2;
    std::vector<Point> pts;
    std::vector<double> params;  // strictly increasing, same length as pts
    std::string label;

    std::size_t size() const { return pts.size(); }
    void validate() const;
    void default_params();  // uniform [0,1]
};

enum class MapKind : std::uint8_t { special, full, special_euclidean };

// Linear part + translation acting as p -> A p + v.
struct AffineMap {
    int dim = 2;
    std::array<std::array<double, 3>, 3> linear{};  // row-major, dim x dim
    Point translation{0, 0, 0};
    MapKind kind = MapKind::full;

    double det() const;
    void validate() const;
    AffineMap inverse() const;
};

struct NoiseSpec {
    double sigma = 0.0;
    std::uint64_t seed = 0;
};

// --- construction and I/O ---
Curve load_curve(const std::string& path, bool leading_param_column = false);
void save_curve_csv(const Curve& c, const std::string& path);
Curve curve_from_json_text(const std::string& text);
std::string curve_to_json_text(const Curve& c);

// Named closed test curves sampled uniformly (inclusively) over one period,
// so the first and last samples coincide.
Curve generate_example(const std::string& name, std::size_t n_samples);

// Random closed curve: each coordinate is a trigonometric polynomial with
// normally distributed coefficients that decay with the harmonic number.
Curve random_trig_curve(int dim, int harmonics, std::size_t n_samples, std::uint64_t seed);

// --- group actions and geometry ---
Curve apply_affine(const Curve& c, const AffineMap& m);
AffineMap random_affine(int dim, MapKind kind, std::uint64_t seed);
AffineMap compose(const AffineMap& g1, const AffineMap& g2);  // g1 after g2
Curve add_noise(const Curve& c, const NoiseSpec& spec);

double bbox_diagonal(const Curve& c);
double total_chord_length(const Curve& c);
bool is_closed(const Curve& c);

Curve resample_arclength(const Curve& c, std::size_t m);

// Monotone warp applied to the normalized parameter: the curve's
// piecewise-linear interpolant is resampled at warp(t_k). Point count kept.
Curve reparameterize(const Curve& c, const std::vector<double>& warped_params);
// Convenience: the sqrt warp tau = (sqrt(t+1)-1)/(sqrt(2)-1).
std::vector<double> sqrt_warp(std::size_t n);

Curve shift_start(const Curve& closed_curve, std::size_t k);

}  // namespace intsig
