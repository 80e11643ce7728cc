#pragma once

#include <string>
#include <vector>

#include "hypoineq/group.hpp"
#include "hypoineq/quadrature.hpp"
#include "hypoineq/trial_functions.hpp"

namespace hypoineq {

/// c |x|^alpha log^gamma(e + 1/|x|).
struct PowerLogWeight {
    double c = 1.0;
    double alpha = 0.0;
    double gamma = 0.0;
    double operator()(double r) const;
    std::string describe() const;
};

/// Positive weight pair (phi, psi). Radial pairs carry profiles in |x| and
/// use the one-dimensional path.
struct WeightPair {
    Fn phi;
    Fn psi;
    Radial phi_r;
    Radial psi_r;
    std::vector<double> breakpoints;
    std::string label;

    bool radial() const { return static_cast<bool>(phi_r) && static_cast<bool>(psi_r); }
    static WeightPair radial_pair(Radial phi, Radial psi, const QuasiNorm& norm, std::string label = "radial",
                                  std::vector<double> breakpoints = {});
    static WeightPair power_log(const PowerLogWeight& phi, const PowerLogWeight& psi, const QuasiNorm& norm);
    /// phi -> lambda phi.
    WeightPair scaled_phi(double lambda) const;
};

struct HardyParams {
    double p = 2.0;
    double q = 2.0;
    double p_prime() const { return p / (p - 1.0); }
    double q_prime() const { return q / (q - 1.0); }
    /// 1/delta = 1/q - 1/p (q < p).
    double delta() const { return 1.0 / (1.0 / q - 1.0 / p); }
    /// (p')^{1/p'} p^{1/q}
    double envelope_factor() const;
};

enum class WeightKind { A1, A2, A3, A4, A5 };
std::string weight_kind_name(WeightKind k);
WeightKind parse_weight_kind(const std::string& s);

struct RGrid {
    double lo = 1e-3;
    double hi = 1e3;
    int points = 64;
    std::vector<double> values() const;
    /// Same density, one more decade at each end.
    RGrid extended() const;
};

struct WeightConditionResult {
    WeightKind kind = WeightKind::A1;
    double value = 0.0;          // sup over the grid (A1, A2, A5) or the integral (A3, A4)
    double argmax_R = 0.0;
    double extended_value = 0.0;  // sup over the extended grid
    bool finite = true;
    std::vector<double> R;
    std::vector<double> sections;
};

/// The R-section of A1 / A2 / A5 at radius R (infinite when a factor diverges).
double weight_section(WeightKind kind, const WeightPair& w, const HardyParams& prm, const QuasiNorm& norm, double R);

/// A1 / A2 / A5 by a sup over a geometric R-grid with a one-decade extension
/// test (finite when the sup moves by less than 1%); A3 / A4 as the integral.
WeightConditionResult weight_condition(WeightKind kind, const WeightPair& w, const HardyParams& prm,
                                       const QuasiNorm& norm, const RGrid& grid = {});

enum class HardyOperator { Average, Tail };

/// int_{B(0,|x|)} f (average) or int_{G \ B(0,|x|)} f (tail).
double hardy_operator(HardyOperator kind, const TrialFunction& f, const Point& x, const QuasiNorm& norm);

/// (int (H f)^q phi)^{1/q} / (int f^p psi)^{1/p} for a radial f >= 0.
struct HardyRatio {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    bool skipped = false;  // 0/0
    std::string note;
};
HardyRatio hardy_ratio(HardyOperator kind, const WeightPair& w, const HardyParams& prm, const QuasiNorm& norm,
                       const TrialFunction& f);

struct QuasiExtremalPoint {
    double R;
    double ratio;
    double section;
};

struct SandwichReport {
    WeightKind kind = WeightKind::A1;
    double A = 0.0;
    double envelope = 0.0;  // (p')^{1/p'} p^{1/q} A
    std::vector<std::string> labels;
    std::vector<HardyRatio> ratios;
    std::vector<QuasiExtremalPoint> quasi;
    double max_ratio = 0.0;
    bool upper_ok = true;  // every ratio <= envelope (1 + upper_tol)
    bool lower_ok = true;  // quasi-extremal ratio >= (1 - lower_tol) A(R)
};

/// The two-sided check for A1 / A2: members against the upper envelope and
/// the quasi-extremal psi^{1-p'} chi at each R in `quasi_R`.
SandwichReport sandwich_check(WeightKind kind, const WeightPair& w, const HardyParams& prm, const QuasiNorm& norm,
                              const std::vector<TrialFunction>& members, const std::vector<double>& quasi_R,
                              double upper_tol = 1e-2, double lower_tol = 2e-2);

/// The quasi-extremal function psi^{1-p'} restricted to |x| < R (A1) or |x| > R (A2).
TrialFunction quasi_extremal(WeightKind kind, const WeightPair& w, const HardyParams& prm, const QuasiNorm& norm,
                             double R);

struct RadialHardyReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double A5 = 0.0;
    double constant = 0.0;  // (p')^{1/p'} p^{1/q} A5
    bool holds = true;
};

/// (int phi |f|^q)^{1/q} <= C (int psi |f'|^p)^{1/p} for a radial f with f(0) = 0.
RadialHardyReport radial_hardy_check(const WeightPair& w, const HardyParams& prm, const QuasiNorm& norm,
                                     const TrialFunction& f, double tol = 1e-6);

}  // namespace hypoineq
