#include "hypoineq/periodic.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstring>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>

#include "hypoineq/errors.hpp"
#include "hypoineq/trial_functions.hpp"

namespace hypoineq {

namespace {

// FFTW planning is not thread-safe; execution on distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct Spectrum {
    PeriodicBox box;
    std::size_t half_last = 0;  // M/2 + 1
    std::vector<std::complex<double>> data;
};

Spectrum forward(const GridFunction& f) {
    const auto& b = f.box;
    Spectrum s;
    s.box = b;
    s.half_last = static_cast<std::size_t>(b.M / 2 + 1);
    std::size_t count = s.half_last;
    for (int i = 0; i + 1 < b.n; ++i) count *= static_cast<std::size_t>(b.M);
    s.data.resize(count);
    std::vector<double> in = f.values;
    std::vector<int> dims(static_cast<std::size_t>(b.n), b.M);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_r2c(b.n, dims.data(), in.data(), reinterpret_cast<fftw_complex*>(s.data.data()),
                                 FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    return s;
}

GridFunction inverse(Spectrum s) {
    const auto& b = s.box;
    GridFunction out;
    out.box = b;
    out.values.assign(b.size(), 0.0);
    std::vector<int> dims(static_cast<std::size_t>(b.n), b.M);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_c2r(b.n, dims.data(), reinterpret_cast<fftw_complex*>(s.data.data()), out.values.data(),
                                 FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    const double scale = 1.0 / static_cast<double>(b.size());
    for (double& v : out.values) v *= scale;
    return out;
}

// Visits every stored mode with its frequency vector.
template <class Visit>
void for_each_mode(Spectrum& s, Visit&& visit) {
    const auto& b = s.box;
    const double k0 = 2.0 * std::numbers::pi / b.L;
    const std::size_t n = static_cast<std::size_t>(b.n);
    std::vector<int> idx(n, 0);
    std::vector<double> xi(n, 0.0);
    std::vector<bool> nyquist(n, false);
    for (std::size_t flat = 0; flat < s.data.size(); ++flat) {
        for (std::size_t i = 0; i < n; ++i) {
            const int k = (i + 1 < n) ? (idx[i] <= b.M / 2 ? idx[i] : idx[i] - b.M) : idx[i];
            xi[i] = k0 * k;
            nyquist[i] = (b.M % 2 == 0) && (idx[i] == b.M / 2);
        }
        visit(s.data[flat], xi, nyquist);
        // Row-major increment; last axis has half_last entries.
        for (std::size_t i = n; i-- > 0;) {
            const int limit = (i + 1 < n) ? b.M : static_cast<int>(s.half_last);
            if (++idx[i] < limit) break;
            idx[i] = 0;
        }
    }
}

template <class T>
void put(std::string& out, T v) {
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
    out.append(buf, sizeof(T));
}

template <class T>
T get(const std::string& in, std::size_t& pos) {
    if (pos + sizeof(T) > in.size()) throw InvalidArgument("grid file truncated");
    char buf[sizeof(T)];
    std::memcpy(buf, in.data() + pos, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
    pos += sizeof(T);
    T v;
    std::memcpy(&v, buf, sizeof(T));
    return v;
}

}  // namespace

std::size_t PeriodicBox::size() const {
    std::size_t s = 1;
    for (int i = 0; i < n; ++i) s *= static_cast<std::size_t>(M);
    return s;
}

Point GridFunction::node(std::size_t index) const {
    Point x(static_cast<std::size_t>(box.n));
    for (int i = box.n; i-- > 0;) {
        x[static_cast<std::size_t>(i)] = box.coord(static_cast<int>(index % static_cast<std::size_t>(box.M)));
        index /= static_cast<std::size_t>(box.M);
    }
    return x;
}

GridFunction GridFunction::sample(const Fn& f, const PeriodicBox& box) {
    if (box.n < 1 || box.M < 2 || !(box.L > 0.0)) throw InvalidArgument("invalid periodic box");
    GridFunction g;
    g.box = box;
    g.values.resize(box.size());
    for (std::size_t k = 0; k < g.values.size(); ++k) g.values[k] = f(g.node(k));
    return g;
}

GridFunction GridFunction::sample(const TrialFunction& f, const PeriodicBox& box) { return sample(f.eval, box); }

double GridFunction::lp_norm(double p) const {
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }
    numeric::CompensatedSum s;
    for (double v : values) s.add(std::pow(std::abs(v), p));
    return std::pow(std::pow(box.h(), box.n) * s.value(), 1.0 / p);
}

std::string GridFunction::to_bytes() const {
    std::string out = "HQGF";
    put<std::uint32_t>(out, 1);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(box.n));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(box.M));
    put<double>(out, box.L);
    for (double v : values) put<double>(out, v);
    return out;
}

GridFunction GridFunction::from_bytes(const std::string& bytes) {
    if (bytes.size() < 4 || bytes.compare(0, 4, "HQGF") != 0) throw InvalidArgument("not a grid function file");
    std::size_t pos = 4;
    const auto version = get<std::uint32_t>(bytes, pos);
    if (version != 1) throw InvalidArgument("unsupported grid file version " + std::to_string(version));
    GridFunction g;
    g.box.n = static_cast<int>(get<std::uint32_t>(bytes, pos));
    g.box.M = static_cast<int>(get<std::uint32_t>(bytes, pos));
    g.box.L = get<double>(bytes, pos);
    const std::size_t count = g.box.size();
    if (bytes.size() != pos + count * sizeof(double)) throw InvalidArgument("grid file size does not match header");
    g.values.resize(count);
    for (double& v : g.values) v = get<double>(bytes, pos);
    return g;
}

void GridFunction::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write " + path);
    const std::string bytes = to_bytes();
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

GridFunction GridFunction::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_bytes(ss.str());
}

PeriodicBox box_for(const TrialFunction& f, int n, int M) {
    double R = f.support_radius;
    if (std::isinf(R)) R = f.decay_radius;
    if (std::isinf(R)) throw InvalidArgument("periodic sampling needs a support or decay radius");
    return {n, M, 4.0 * R};
}

void check_guard(const GridFunction& f, double tol) {
    const double guard = f.box.L / 4.0;
    numeric::CompensatedSum total, outside;
    for (std::size_t k = 0; k < f.values.size(); ++k) {
        const double a = std::abs(f.values[k]);
        total.add(a);
        const Point x = f.node(k);
        double m = 0.0;
        for (double v : x) m = std::max(m, std::abs(v));
        if (m > guard * (1.0 + 1e-12)) outside.add(a);
    }
    if (total.value() > 0.0 && outside.value() > tol * total.value()) {
        std::ostringstream msg;
        msg << "grid function has relative mass " << outside.value() / total.value()
            << " outside the aliasing guard |x|_inf <= " << guard;
        throw PreconditionViolation(msg.str());
    }
}

GridFunction apply_multiplier(const GridFunction& f, const std::function<double(double)>& m, bool guarded) {
    if (guarded) check_guard(f);
    Spectrum s = forward(f);
    for_each_mode(s, [&](std::complex<double>& c, const std::vector<double>& xi, const std::vector<bool>&) {
        double k2 = 0.0;
        for (double v : xi) k2 += v * v;
        c *= m(std::sqrt(k2));
    });
    return inverse(std::move(s));
}

GridFunction frac_laplacian(const GridFunction& f, double s, bool guarded) {
    if (!(s >= 0.0)) throw InvalidArgument("fractional order must be nonnegative");
    if (s == 0.0) {
        if (guarded) check_guard(f);
        return f;
    }
    return apply_multiplier(f, [s](double k) { return k == 0.0 ? 0.0 : std::pow(k, 2.0 * s); }, guarded);
}

std::vector<GridFunction> spectral_gradient(const GridFunction& f) {
    check_guard(f);
    const Spectrum base = forward(f);
    std::vector<GridFunction> out;
    for (int axis = 0; axis < f.box.n; ++axis) {
        Spectrum s = base;
        for_each_mode(s, [axis](std::complex<double>& c, const std::vector<double>& xi, const std::vector<bool>& nyq) {
            const auto a = static_cast<std::size_t>(axis);
            c = nyq[a] ? std::complex<double>(0.0) : c * std::complex<double>(0.0, xi[a]);
        });
        out.push_back(inverse(std::move(s)));
    }
    return out;
}

double sobolev_norm(const GridFunction& f, double a, double p) {
    if (!(p >= 1.0)) throw InvalidArgument("Sobolev norm needs p >= 1");
    const GridFunction g = frac_laplacian(f, a / 2.0);
    const double gp = g.lp_norm(p);
    const double fp = f.lp_norm(p);
    return std::pow(std::pow(gp, p) + std::pow(fp, p), 1.0 / p);
}

double sobolev_norm(const TrialFunction& f, double a, double p, const PeriodicBox& box) {
    return sobolev_norm(GridFunction::sample(f, box), a, p);
}

}  // namespace hypoineq
