#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hypoineq/quadrature.hpp"

namespace hypoineq {

struct TrialFunction;

/// Cube [-L/2, L/2)^n sampled at M points per axis, node j at -L/2 + j L/M.
struct PeriodicBox {
    int n = 2;
    int M = 256;
    double L = 16.0;

    double h() const { return L / M; }
    double coord(int j) const { return -0.5 * L + j * h(); }
    std::size_t size() const;
    bool operator==(const PeriodicBox& o) const { return n == o.n && M == o.M && L == o.L; }
};

/// Row-major samples on a PeriodicBox (last axis fastest).
struct GridFunction {
    PeriodicBox box;
    std::vector<double> values;

    static GridFunction sample(const Fn& f, const PeriodicBox& box);
    static GridFunction sample(const TrialFunction& f, const PeriodicBox& box);

    /// (h^n sum |v|^p)^{1/p}; p = inf gives max |v|.
    double lp_norm(double p) const;
    Point node(std::size_t index) const;

    /// Binary layout: "HQGF", uint32 version, uint32 n, uint32 M, double L,
    /// then n-dimensional row-major doubles, all little-endian.
    std::string to_bytes() const;
    static GridFunction from_bytes(const std::string& bytes);
    void save(const std::string& path) const;
    static GridFunction load(const std::string& path);
};

/// Box with L = 4 x (support radius, else decay radius) so the function sits
/// inside the aliasing guard |x|_inf <= L/4.
PeriodicBox box_for(const TrialFunction& f, int n, int M);

/// Throws PreconditionViolation when more than `tol` of the L^1 mass lies
/// outside |x|_inf <= L/4.
void check_guard(const GridFunction& f, double tol = 1e-8);

/// Applies a Fourier multiplier m(|xi|) with the zero mode set to m(0).
/// `guarded = false` skips the support check, for composing multipliers on
/// the torus where intermediate results have slowly decaying tails.
GridFunction apply_multiplier(const GridFunction& f, const std::function<double(double)>& m, bool guarded = true);

/// (-Delta)^s by the multiplier |xi|^{2s}; s = 0 is the identity, the zero
/// mode of a positive-order multiplier is 0.
GridFunction frac_laplacian(const GridFunction& f, double s, bool guarded = true);

/// Spectral partial derivatives, one grid function per axis.
std::vector<GridFunction> spectral_gradient(const GridFunction& f);

/// (||(-Delta)^{a/2} f||_p^p + ||f||_p^p)^{1/p} on the grid.
double sobolev_norm(const GridFunction& f, double a, double p);
double sobolev_norm(const TrialFunction& f, double a, double p, const PeriodicBox& box);

}  // namespace hypoineq
