#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace hypoineq {

/// Dense coordinate vector of a group element.
using Point = std::vector<double>;

/// Homogeneous Lie group in exponential coordinates, with Lebesgue measure
/// as Haar measure. Two families are built in: abelian R^n with arbitrary
/// dilation weights, and the Heisenberg group H^n with coordinates
/// (x_1..x_n, y_1..y_n, t) and law
///   (z, t)(z', t') = (z + z', t + t' + 1/2 sum_j (x_j y'_j - y_j x'_j)).
class HomogeneousGroup {
public:
    enum class Kind { Abelian, Heisenberg };

    static HomogeneousGroup abelian(std::vector<double> weights);
    static HomogeneousGroup euclidean(int n) { return abelian(std::vector<double>(static_cast<std::size_t>(n), 1.0)); }
    static HomogeneousGroup heisenberg(int n);

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    int dim() const { return static_cast<int>(weights_.size()); }
    const std::vector<double>& weights() const { return weights_; }
    double homogeneous_dim() const { return Q_; }
    /// Stratified: abelian with unit weights, or Heisenberg.
    bool is_stratified() const;
    /// Number of horizontal directions (first stratum).
    int horizontal_dim() const;

    Point identity() const { return Point(weights_.size(), 0.0); }
    Point law(const Point& x, const Point& y) const;
    Point inverse(const Point& x) const;
    /// (r^{nu_1} x_1, ..., r^{nu_n} x_n); throws InvalidArgument for r <= 0.
    Point dilate(double r, const Point& x) const;

    /// Horizontal basis vector j as a group element (e_j in the first stratum).
    Point horizontal_direction(int j, double h) const;

    bool operator==(const HomogeneousGroup& o) const { return kind_ == o.kind_ && weights_ == o.weights_; }

private:
    HomogeneousGroup(Kind kind, std::vector<double> weights, std::string name);
    Kind kind_;
    std::vector<double> weights_;
    double Q_;
    std::string name_;
};

struct SphereMeasure {
    double value;
    double abs_error;
};

/// Homogeneous quasi-norm attached to a group.
class QuasiNorm {
public:
    enum class Kind { Euclidean, WeightedMax, Kaplan };

    static QuasiNorm euclidean(const HomogeneousGroup& g);
    static QuasiNorm weighted_max(const HomogeneousGroup& g);
    static QuasiNorm kaplan(const HomogeneousGroup& g);

    Kind kind() const { return kind_; }
    const HomogeneousGroup& group() const { return group_; }
    std::string id() const;
    double operator()(const Point& x) const { return eval(x); }
    double eval(const Point& x) const;
    /// Whether the plain triangle inequality is known to hold (C0 = 1).
    bool is_norm() const;

    /// |sphere| = Q |B(0,1)|, computed once by quadrature and cached.
    SphereMeasure sphere_measure() const;
    double ball_volume(double radius) const;

    /// Exponent m with N^m smooth away from the origin; used for the
    /// radial profile exp(-N^m) in volume computations.
    double smooth_power() const;

private:
    QuasiNorm(Kind kind, HomogeneousGroup g);
    struct Cache;
    Kind kind_;
    HomogeneousGroup group_;
    std::shared_ptr<Cache> cache_;
};

/// Q |B(0,1)| via the polar identity  int_G exp(-N^m) dx = |sphere| Gamma(Q/m)/m,
/// evaluated by composite Gauss-Legendre tensor grids (n <= 3) or seeded
/// Monte Carlo (n > 3). Refines until the relative change is below rel_tol;
/// throws AccuracyError otherwise.
SphereMeasure compute_sphere_measure(const QuasiNorm& norm, double rel_tol = 1e-9, std::uint64_t seed = 12345);

/// Seeded random point sampler used by sampling operations. Points are
/// Gaussian in coordinates and then dilated by a log-uniform scale in
/// [1e-2, 1e2] so every scale is represented.
class PointSampler {
public:
    PointSampler(const HomogeneousGroup& g, std::uint64_t seed, std::uint64_t stream = 0);
    Point next();
    std::mt19937_64& engine() { return rng_; }

private:
    HomogeneousGroup group_;
    std::mt19937_64 rng_;
};

struct TriangleConstantEstimate {
    double C0 = 0.0;
    Point argmax_x;
    Point argmax_y;
    std::size_t pairs = 0;
};

/// max over N sampled pairs of |xy| / (|x| + |y|). Pairs with both points at
/// the identity are skipped.
TriangleConstantEstimate triangle_constant(const QuasiNorm& norm, PointSampler& sampler, std::size_t N);

struct PolarCoordinates {
    double r;
    Point y;
};

/// x = dilate(r, y) with |y| = 1; x must not be the identity.
PolarCoordinates polar_coordinates(const QuasiNorm& norm, const Point& x);

/// Parses "R:n:nu1,...,nun:euclidean|max" or "H:n:kaplan".
QuasiNorm parse_norm_id(const std::string& id);
HomogeneousGroup parse_group_id(const std::string& id);

double euclidean_length(const Point& x);

}  // namespace hypoineq
