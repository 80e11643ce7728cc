#include "hypoineq/group.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

#include "hypoineq/errors.hpp"
#include "hypoineq/numeric.hpp"

namespace hypoineq {

// ---------------------------------------------------------------- group

HomogeneousGroup::HomogeneousGroup(Kind kind, std::vector<double> weights, std::string name)
    : kind_(kind), weights_(std::move(weights)), Q_(0.0), name_(std::move(name)) {
    for (double w : weights_) Q_ += w;
}

HomogeneousGroup HomogeneousGroup::abelian(std::vector<double> weights) {
    if (weights.empty()) throw InvalidArgument("abelian group needs at least one coordinate");
    std::ostringstream name;
    name << "R:" << weights.size() << ":";
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (!(weights[i] >= 1.0)) throw InvalidArgument("dilation weights must be >= 1");
        name << (i ? "," : "") << weights[i];
    }
    return HomogeneousGroup(Kind::Abelian, std::move(weights), name.str());
}

HomogeneousGroup HomogeneousGroup::heisenberg(int n) {
    if (n < 1) throw InvalidArgument("Heisenberg group H^n needs n >= 1");
    std::vector<double> w(static_cast<std::size_t>(2 * n), 1.0);
    w.push_back(2.0);
    return HomogeneousGroup(Kind::Heisenberg, std::move(w), "H:" + std::to_string(n));
}

bool HomogeneousGroup::is_stratified() const {
    if (kind_ == Kind::Heisenberg) return true;
    return std::all_of(weights_.begin(), weights_.end(), [](double w) { return w == 1.0; });
}

int HomogeneousGroup::horizontal_dim() const { return kind_ == Kind::Heisenberg ? dim() - 1 : dim(); }

Point HomogeneousGroup::law(const Point& x, const Point& y) const {
    Point out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
    if (kind_ == Kind::Heisenberg) {
        const std::size_t n = (x.size() - 1) / 2;
        double twist = 0.0;
        for (std::size_t j = 0; j < n; ++j) twist += x[j] * y[n + j] - x[n + j] * y[j];
        out.back() += 0.5 * twist;
    }
    return out;
}

Point HomogeneousGroup::inverse(const Point& x) const {
    Point out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = -x[i];
    return out;
}

Point HomogeneousGroup::dilate(double r, const Point& x) const {
    if (!(r > 0.0)) throw InvalidArgument("dilation factor must be positive");
    Point out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::pow(r, weights_[i]) * x[i];
    return out;
}

Point HomogeneousGroup::horizontal_direction(int j, double h) const {
    Point e = identity();
    e[static_cast<std::size_t>(j)] = h;
    return e;
}

double euclidean_length(const Point& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

// ---------------------------------------------------------------- norm

struct QuasiNorm::Cache {
    std::once_flag once;
    SphereMeasure measure{0.0, 0.0};
};

QuasiNorm::QuasiNorm(Kind kind, HomogeneousGroup g)
    : kind_(kind), group_(std::move(g)), cache_(std::make_shared<Cache>()) {}

QuasiNorm QuasiNorm::euclidean(const HomogeneousGroup& g) {
    if (g.kind() != HomogeneousGroup::Kind::Abelian || !g.is_stratified())
        throw InvalidArgument("Euclidean norm requires abelian R^n with unit weights");
    return QuasiNorm(Kind::Euclidean, g);
}

QuasiNorm QuasiNorm::weighted_max(const HomogeneousGroup& g) {
    if (g.kind() != HomogeneousGroup::Kind::Abelian)
        throw InvalidArgument("weighted max norm is defined for abelian groups");
    return QuasiNorm(Kind::WeightedMax, g);
}

QuasiNorm QuasiNorm::kaplan(const HomogeneousGroup& g) {
    if (g.kind() != HomogeneousGroup::Kind::Heisenberg) throw InvalidArgument("Kaplan norm requires H^n");
    return QuasiNorm(Kind::Kaplan, g);
}

std::string QuasiNorm::id() const {
    switch (kind_) {
        case Kind::Euclidean: return group_.name() + ":euclidean";
        case Kind::WeightedMax: return group_.name() + ":max";
        case Kind::Kaplan: return group_.name() + ":kaplan";
    }
    return {};
}

double QuasiNorm::eval(const Point& x) const {
    switch (kind_) {
        case Kind::Euclidean: return euclidean_length(x);
        case Kind::WeightedMax: {
            double m = 0.0;
            const auto& w = group_.weights();
            for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::pow(std::abs(x[i]), 1.0 / w[i]));
            return m;
        }
        case Kind::Kaplan: {
            double z2 = 0.0;
            for (std::size_t i = 0; i + 1 < x.size(); ++i) z2 += x[i] * x[i];
            const double t = x.back();
            return std::pow(z2 * z2 + t * t, 0.25);
        }
    }
    return 0.0;
}

bool QuasiNorm::is_norm() const {
    if (kind_ == Kind::Euclidean) return true;
    if (kind_ == Kind::WeightedMax) return group_.is_stratified();
    return false;
}

double QuasiNorm::smooth_power() const { return kind_ == Kind::Kaplan ? 4.0 : 2.0; }

SphereMeasure QuasiNorm::sphere_measure() const {
    std::call_once(cache_->once, [this] { cache_->measure = compute_sphere_measure(*this); });
    return cache_->measure;
}

double QuasiNorm::ball_volume(double radius) const {
    return sphere_measure().value / group_.homogeneous_dim() * std::pow(radius, group_.homogeneous_dim());
}

namespace {

// Tensor composite Gauss-Legendre over prod [-h_i, h_i].
double tensor_gl(const std::function<double(const Point&)>& f, const std::vector<double>& half, int cells) {
    const std::size_t n = half.size();
    const int per_axis = 8 * cells;
    std::vector<std::vector<double>> nodes(n), weights(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double h = 2.0 * half[i] / cells;
        for (int c = 0; c < cells; ++c) {
            const double mid = -half[i] + (c + 0.5) * h;
            for (int j = 0; j < 8; ++j) {
                nodes[i].push_back(mid + 0.5 * h * numeric::GaussLegendre8::nodes[j]);
                weights[i].push_back(0.5 * h * numeric::GaussLegendre8::weights[j]);
            }
        }
    }
    std::vector<int> idx(n, 0);
    Point x(n);
    numeric::CompensatedSum sum;
    while (true) {
        double w = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = nodes[i][static_cast<std::size_t>(idx[i])];
            w *= weights[i][static_cast<std::size_t>(idx[i])];
        }
        sum.add(w * f(x));
        std::size_t k = 0;
        while (k < n && ++idx[k] == per_axis) idx[k++] = 0;
        if (k == n) break;
    }
    return sum.value();
}

}  // namespace

SphereMeasure compute_sphere_measure(const QuasiNorm& norm, double rel_tol, std::uint64_t seed) {
    const auto& g = norm.group();
    const double Q = g.homogeneous_dim();
    const std::size_t n = static_cast<std::size_t>(g.dim());

    if (norm.kind() == QuasiNorm::Kind::WeightedMax) {
        // The unit ball is exactly prod [-1, 1]; integrate its indicator on that box.
        const std::vector<double> half(n, 1.0);
        const double vol = tensor_gl([&](const Point& x) { return norm.eval(x) <= 1.0 ? 1.0 : 0.0; }, half, 1);
        return {Q * vol, 0.0};
    }

    const double m = norm.smooth_power();
    const double R = std::pow(40.0, 1.0 / m);  // exp(-R^m) ~ 4e-18
    std::vector<double> half(n);
    for (std::size_t i = 0; i < n; ++i) half[i] = std::pow(R, g.weights()[i]);
    const auto profile = [&](const Point& x) { return std::exp(-std::pow(norm.eval(x), m)); };
    const double scale = m / std::tgamma(Q / m);

    if (n <= 3) {
        const int max_cells = n == 3 ? 16 : 64;
        double prev = tensor_gl(profile, half, 2);
        for (int cells = 4; cells <= max_cells; cells *= 2) {
            const double cur = tensor_gl(profile, half, cells);
            const double diff = std::abs(cur - prev);
            if (diff <= rel_tol * std::abs(cur)) return {scale * cur, scale * std::max(diff, 1e-15 * cur)};
            prev = cur;
        }
        throw AccuracyError("sphere measure quadrature did not converge", scale * prev, scale * prev * 1e-6);
    }

    // Monte Carlo over the box, 99% confidence.
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double box = 1.0;
    for (double h : half) box *= 2.0 * h;
    const std::size_t N = 2'000'000;
    numeric::CompensatedSum s1, s2;
    Point x(n);
    for (std::size_t k = 0; k < N; ++k) {
        for (std::size_t i = 0; i < n; ++i) x[i] = half[i] * u(rng);
        const double v = profile(x);
        s1.add(v);
        s2.add(v * v);
    }
    const double mean = s1.value() / N;
    const double var = std::max(0.0, s2.value() / N - mean * mean);
    const double value = scale * box * mean;
    const double err = scale * box * 2.58 * std::sqrt(var / N);
    if (err > 1e-2 * value) throw AccuracyError("Monte Carlo sphere measure too noisy", value, err);
    return {value, err};
}

// ---------------------------------------------------------------- sampling

PointSampler::PointSampler(const HomogeneousGroup& g, std::uint64_t seed, std::uint64_t stream)
    : group_(g), rng_(seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1))) {}

Point PointSampler::next() {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> logscale(-2.0, 2.0);
    Point x(static_cast<std::size_t>(group_.dim()));
    for (double& v : x) v = gauss(rng_);
    return group_.dilate(std::pow(10.0, logscale(rng_)), x);
}

TriangleConstantEstimate triangle_constant(const QuasiNorm& norm, PointSampler& sampler, std::size_t N) {
    TriangleConstantEstimate out;
    const auto& g = norm.group();
    for (std::size_t k = 0; k < N; ++k) {
        const Point x = sampler.next();
        const Point y = sampler.next();
        const double denom = norm(x) + norm(y);
        if (denom == 0.0) continue;
        ++out.pairs;
        const double ratio = norm(g.law(x, y)) / denom;
        if (ratio > out.C0) {
            out.C0 = ratio;
            out.argmax_x = x;
            out.argmax_y = y;
        }
    }
    return out;
}

PolarCoordinates polar_coordinates(const QuasiNorm& norm, const Point& x) {
    const double r = norm(x);
    if (r == 0.0) throw InvalidArgument("polar coordinates undefined at the identity");
    return {r, norm.group().dilate(1.0 / r, x)};
}

// ---------------------------------------------------------------- ids

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

int parse_int(const std::string& s, const std::string& id) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw InvalidArgument("malformed dimension in id '" + id + "'");
    }
}

}  // namespace

HomogeneousGroup parse_group_id(const std::string& id) {
    const auto parts = split(id, ':');
    if (parts.size() < 2) throw InvalidArgument("malformed group id '" + id + "'");
    const int n = parse_int(parts[1], id);
    if (parts[0] == "H") return HomogeneousGroup::heisenberg(n);
    if (parts[0] != "R") throw InvalidArgument("unknown group family in id '" + id + "'");
    if (n < 1) throw InvalidArgument("dimension must be positive in id '" + id + "'");
    std::vector<double> w(static_cast<std::size_t>(n), 1.0);
    if (parts.size() >= 3 && !parts[2].empty() && parts[2] != "euclidean" && parts[2] != "max") {
        const auto ws = split(parts[2], ',');
        if (ws.size() != w.size()) throw InvalidArgument("weight count does not match dimension in '" + id + "'");
        for (std::size_t i = 0; i < ws.size(); ++i) {
            try {
                w[i] = std::stod(ws[i]);
            } catch (const std::exception&) {
                throw InvalidArgument("malformed weight in id '" + id + "'");
            }
        }
    }
    return HomogeneousGroup::abelian(std::move(w));
}

QuasiNorm parse_norm_id(const std::string& id) {
    const auto parts = split(id, ':');
    const auto g = parse_group_id(id);
    const std::string kind = parts.back();
    if (kind == "kaplan") return QuasiNorm::kaplan(g);
    if (kind == "euclidean") return QuasiNorm::euclidean(g);
    if (kind == "max") return QuasiNorm::weighted_max(g);
    throw InvalidArgument("unknown norm in id '" + id + "'");
}

}  // namespace hypoineq
