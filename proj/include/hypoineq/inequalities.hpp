#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypoineq/group.hpp"
#include "hypoineq/quadrature.hpp"
#include "hypoineq/trial_functions.hpp"

namespace hypoineq {

enum class TheoremId { IntHardy, LogHardy, Hls, HlsGraded, HardySobolev, Ckn, Uncertainty };
std::string theorem_name(TheoremId t);
TheoremId parse_theorem(const std::string& s);

/// Convolution kernel for the integral Hardy inequalities.
///   riesz             I_a on R^n (unit weights)
///   bessel            B_a on R^n (unit weights)
///   power             |x|^{a-Q}, any group
///   truncated-power   |x|^{a-Q} on |x| < 1, |x|^{-Q} beyond, any group
enum class KernelChoice { Default, Riesz, Bessel, Power, TruncatedPower };
std::string kernel_name(KernelChoice k);
KernelChoice parse_kernel(const std::string& s);

struct InequalitySpec {
    TheoremId theorem = TheoremId::HardySobolev;
    /// Named parameters from {p, q, r, a, b, beta, lambda, alpha, gamma, delta, mu}.
    std::map<std::string, double> params;
    QuasiNorm norm = QuasiNorm::euclidean(HomogeneousGroup::euclidean(3));
    KernelChoice kernel = KernelChoice::Default;
    /// Grid points per axis for spectral denominators.
    int spectral_M = 128;
    /// Monte Carlo pairs for the bilinear forms.
    std::size_t mc_pairs = 1'000'000;
    std::uint64_t seed = 12345;

    double get(const std::string& name) const;
    bool has(const std::string& name) const { return params.count(name) != 0; }
    std::string describe() const;
};

struct Admissibility {
    bool ok = true;
    std::vector<std::string> violations;
    /// CKN only: whether 1/p + a/n, 1/q + b/n, 1/r + c/n > 0 hold for the
    /// classical parameters (gradient weight 0, b = beta, c = gamma). When
    /// they fail the instance is outside the classical range.
    std::optional<bool> classical_ckn;
};

/// Pure arithmetic on the parameters; throws InvalidArgument when a
/// parameter needed by the theorem is missing.
Admissibility admissible(const InequalitySpec& spec);

struct RatioReport {
    IntegralEstimate lhs;
    IntegralEstimate rhs;
    double ratio = 0.0;
    double ratio_error = 0.0;
    std::string f_label;
    std::string g_label;
    std::string spec;
    /// Named intermediate quantities (factor norms, Hölder chain terms).
    std::vector<std::pair<std::string, double>> extras;
    double extra(const std::string& name) const;
};

/// LHS / RHS of the inequality for f (and g for the bilinear forms).
/// For the uncertainty principle the ratio is int |f|^2 over the product
/// of the two norms, which the inequality bounds from above.
/// Throws PreconditionViolation for inadmissible specs, DegenerateInput
/// when the RHS is below 1e-14.
RatioReport ratio(const InequalitySpec& spec, const TrialFunction& f);
RatioReport ratio(const InequalitySpec& spec, const TrialFunction& f, const TrialFunction& g);

/// || R^{a/2} f ||_p on R^n by the spectral multiplier |xi|^a.
double homogeneous_sobolev_norm(const TrialFunction& f, double a, double p, int n, int M);

/// || |x|^gamma f ||_q, the weighted Lebesgue norm shared by the Hardy, CKN
/// and uncertainty evaluators. Radial f use the one-dimensional path.
IntegralEstimate weighted_lp(const TrialFunction& f, double gamma, double q, const QuasiNorm& norm);

struct ReversedHlsRow {
    double R = 0.0;
    double numeric = 0.0;
    double closed_form = 0.0;
    double rel_diff = 0.0;
};

struct ReversedHlsTable {
    double lambda = 0.0;
    double p = 0.0;
    std::vector<ReversedHlsRow> rows;
    bool agree = true;       // every rel_diff <= 5%
    bool decreasing = true;  // strictly decreasing in R
};

/// 2 int |x|^lambda f_R / (int f_R^p)^{1/p} with f_R = |x|^{-(Q+lambda)} on
/// 1 <= |x| <= R and p = Q / (Q + lambda), against 2 (|sphere| log R)^{-lambda/Q}.
ReversedHlsTable reversed_hls_demo(const QuasiNorm& norm, double lambda, const std::vector<double>& R_list);

}  // namespace hypoineq
