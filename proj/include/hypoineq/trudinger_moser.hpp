#pragma once

#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "hypoineq/estimation.hpp"
#include "hypoineq/group.hpp"
#include "hypoineq/quadrature.hpp"
#include "hypoineq/trial_functions.hpp"

namespace hypoineq {

/// Smallest integer k with k >= p - 1; the first retained Taylor index.
int first_retained_index(double p);

/// sum_{k in N, k >= p-1} (alpha t^{p'})^k / k!, evaluated by the series for
/// x = alpha t^{p'} < 1 and as exp(x) minus the dropped terms otherwise.
/// Throws RangeError when x > 700.
double phi_truncated(double p, double alpha, double t);
/// The same quantity by the compensated series alone.
double phi_truncated_series(double p, double alpha, double t);

enum class TMScope { Local, Global };
/// Sobolev: ||f||_{L^p_{Q/p}} (local) or ||(-Delta)^{Q/(2p)} f||_p (global), R^n only.
/// GradH: ||grad_H f||_{L^Q}, stratified groups with p = Q.
enum class TMNormalization { Sobolev, GradH };

struct TMSpec {
    double p = 2.0;
    double alpha = 1.0;
    double beta = 0.0;
    /// Global exponent; 0 selects 2Q / (Q - beta).
    double mu = 0.0;
    TMScope scope = TMScope::Local;
    double radius = 1.0;
    Point center;  // empty means the identity
    TMNormalization normalization = TMNormalization::Sobolev;
    QuasiNorm norm = QuasiNorm::euclidean(HomogeneousGroup::euclidean(2));
    int spectral_M = 256;
    RuleOptions rule;

    double p_prime() const { return p / (p - 1.0); }
    double mu_value() const;
    void validate() const;
};

struct TMEvaluation {
    IntegralEstimate functional;
    double normalization = 0.0;  // value of the normalising norm
    double rhs_base = 0.0;       // ||f||^p on the ball, or ||f||_p^p + ||f||_p^{p/mu}
    double ratio = 0.0;          // functional / rhs_base
};

/// int_D |x|^{-beta} phi_truncated(|f|) over the ball (local) or the group
/// (global). Throws PreconditionViolation when the normalising norm exceeds 1.
TMEvaluation tm_functional(const TMSpec& spec, const TrialFunction& f);

/// The normalising norm of the theorem selected by `spec`.
double tm_normalization(const TMSpec& spec, const TrialFunction& f);
/// f scaled so that its normalising norm equals `target`.
TrialFunction tm_normalize(const TMSpec& spec, const TrialFunction& f, double target = 1.0);

struct TermCheck {
    int k = 0;
    double term = 0.0;        // alpha^k / k! || f / |x|^{beta/(p'k)} ||_{p'k}^{p'k}
    double functional = 0.0;
    double slack = 0.0;       // functional - term
};

/// Series terms against the functional on one shared node set, for every
/// integer k with p - 1 <= k <= k_max.
std::vector<TermCheck> term_vs_sum(const TMSpec& spec, const TrialFunction& f, int k_max = 6);

/// (||f||^p_{L^p(ball)} + ||(-Delta)^{a/2} f||^p_{L^p(ball)})^{1/p}, both
/// integrands from one periodic grid; R^n only. Throws AccuracyError when
/// the grid spacing exceeds radius / 8.
double local_sobolev_norm(const TrialFunction& f, const QuasiNorm& norm, double a, double p, double radius,
                          const Point& center, int M);

struct ConstantInputs {
    double p = 2.0;
    double Q = 2.0;
    double beta = 0.0;
    double mu = 0.0;  // 0 selects 2Q / (Q - beta)
    double radius = 1.0;
    double alpha = 0.0;
    double C1_tilde = 1.0;  // critical Gagliardo-Nirenberg constant (empirical)
    double sphere = 2.0 * std::numbers::pi;  // |unit sphere|
    double C0 = 1.0;        // triangle constant of the quasi-norm
};

struct ConstantEntry {
    std::string name;
    double value;
    std::string formula;
};

struct ConstantBundle {
    ConstantInputs in;
    double mu = 0.0;
    double C2_tilde = 0.0;
    double C3_tilde = 0.0;
    double C1 = 0.0;
    double C2 = 0.0;
    double C3 = 0.0;
    double radius_C2_tilde = 0.0;  // alpha bound of the C2_tilde series
    std::vector<ConstantEntry> entries() const;
};

/// sum_{k >= k0} k^k / k! y^k for 0 <= y < 1/e, to relative 1e-12 with the
/// ratio-test tail bound (e y)/(1 - e y). Throws DivergenceError otherwise.
double moser_series(double y, int k0);
/// log of the k-th term k^k / k! y^k.
double moser_series_log_term(int k, double y);

/// Every constant of the Trudinger-Moser theorems at the given inputs.
/// Throws DivergenceError when alpha is at or above a series radius.
ConstantBundle constants(const ConstantInputs& in);

struct MoserConstant {
    double c_Q = 0.0;  // int over the unit sphere of |grad_H N|^Q
    double alpha_Q = 0.0;
    double Q = 0.0;
};

/// c_Q through int_G |grad_H N|^Q N^k exp(-N^m) dx = c_Q Gamma((Q+k)/m) / m
/// on a tensor Gauss-Legendre grid, with grad_H by central differences.
/// Stratified groups only.
MoserConstant alpha_Q(const QuasiNorm& norm, int cells = 0);
/// Q (2 pi^{(k+l)/2} Gamma((Q-l)/2) / (4^l Gamma(k/2) Gamma(Q/2)))^{1/(Q-1)}, Q = k + 2l.
double alpha_Q_htype(int k, int l);
/// Q sigma_Q^{1/(Q-1)} with sigma_Q = Gamma(1/2) Gamma(n+1/2) |S^{2n-1}| / n!, Q = 2n + 2.
double alpha_Q_yang(int n);
double alpha_beta(double alpha_Q, double beta, double Q);

/// ||f||_q / (q^{1-1/p} ||(-Delta)^{Q/(2p)} f||_p^{1-p/q} ||f||_p^{p/q}) on R^n.
double crit_gn_ratio(const TrialFunction& f, const QuasiNorm& norm, double p, double q, int M = 256);

/// ||f / |x|^{beta/q}||_{L^q(ball)} / (q^{1-1/p} D), where D is the local
/// Sobolev norm ||f||_{L^p_{Q/p}(ball)} or ||grad_H f||_{L^Q}.
double critical_hardy_ratio(const TrialFunction& f, const QuasiNorm& norm, double p, double q, double beta,
                            double radius, TMNormalization denominator = TMNormalization::Sobolev, int M = 256,
                            const Point& center = {});

/// ||f / |x|^{beta/q}||_q over
/// q^{1-1/p} (S^{1-p/q} F^{p/q} + S^{1-p/(q mu)} F^{p/(q mu)}),
/// S = ||(-Delta)^{Q/(2p)} f||_p, F = ||f||_p.
double weighted_gn_ratio(const TrialFunction& f, const QuasiNorm& norm, double p, double q, double beta, double mu,
                         int M = 256);

struct GammaRow {
    double q = 0.0;
    double ratio = 0.0;  // Gamma(q/p' + 2)^{1/q} / (q/(e p'))^{1/p'}
};

struct GammaTable {
    double p = 2.0;
    std::vector<GammaRow> rows;
    bool decreasing = true;
    bool above_one = true;
};

GammaTable gamma_asymptotic_check(double p, const std::vector<double>& q_list);

enum class EquivalenceDirection { TmToHardy, HardyToTm };
std::string direction_name(EquivalenceDirection d);
EquivalenceDirection parse_direction(const std::string& s);

struct EquivalenceOptions {
    EquivalenceDirection direction = EquivalenceDirection::HardyToTm;
    TMSpec tm;                           // p, beta, ball and normalisation
    std::string family = "moser-spike";
    std::vector<ParamBound> box;         // empty keeps the family box
    std::vector<double> q_grid{4, 8, 16, 32, 64};
    std::vector<std::vector<double>> chain_points;  // family parameters for the term chain
    std::size_t budget = 40;
    double cap = 1e3;                    // alpha counts as admissible while the family sup stays below
    double alpha_hi = 40.0;
    std::uint64_t seed = 12345;
};

struct EquivalenceReport {
    EquivalenceDirection direction;
    std::vector<std::vector<TermCheck>> chain;
    bool chain_holds = true;
    double min_slack = 0.0;
    QScan scan;
    double B_hat = 0.0;
    BisectionResult alpha_hat;
    double product = 0.0;    // alpha_hat p' e B_hat^{p'}
    double predicted = 0.0;  // B from alpha_hat (tm->hardy) or alpha from B_hat (hardy->tm)
};

/// Exploratory check of 1 / (alpha p' e) = B^{p'} on one family: the exact
/// term chain, a limsup proxy for B and a bisection proxy for alpha.
EquivalenceReport equivalence_probe(const EquivalenceOptions& opt);

}  // namespace hypoineq
