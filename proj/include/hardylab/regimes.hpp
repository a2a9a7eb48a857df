#pragma once

// Parameter packs and the closed-form constants of the weighted and
// fractional Hardy inequalities.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hardylab {

/// Local-inequality parameters (N, p, alpha). Construct through `local()` for
/// use with the gradient inequalities; it checks N > p + alpha and p > 1.
struct Regime {
  int N = 0;
  double p = 0.0;
  double alpha = 0.0;

  static Regime local(int N, double p, double alpha);

  /// N - p - alpha, strictly positive for a valid local regime.
  double gap() const { return N - p - alpha; }
};

/// Fractional parameters (N, s, p) with s in (0,1), p >= 1, N > s p.
struct FracRegime {
  int N = 0;
  double s = 0.0;
  double p = 0.0;

  static FracRegime make(int N, double s, double p);

  double sp() const { return s * p; }
};

/// Lebesgue exponent on the sphere for the non-explicit weighted inequality:
/// (N-1)/p below p = N-1, 1 above, user-supplied q > 1 at p = N-1.
double admissible_q(int N, double p, std::optional<double> user_q = std::nullopt);

/// (p / (N - p - alpha))^p.
double ckn_sharp_constant(const Regime& regime);

enum class Case13Id { Case1, Case2, Case3 };

std::string_view case13_name(Case13Id id);

struct Case13Option {
  Case13Id id;
  double q;
  std::optional<double> gamma0;
  double t;  ///< Gagliardo-Nirenberg exponent 2q/(q-1)
};

/// Case analysis for the sharp p = 2 inequality.
///
/// Availability is decided by the Gagliardo-Nirenberg exponent actually used in
/// each case: for N > 3 the exponent of case 1 must not exceed 2(N-1)/(N-3),
/// which is the same as (N-alpha-2)^2 >= (N-1)(N-3), i.e. gamma0 >= 1. The two
/// printed thresholds, 2N alpha against (N-alpha-2)^2 and against
/// (1+alpha)^2, are reported alongside but do not decide the case.
struct Case13 {
  Case13Id case_id;  ///< primary case (Case1 when available)
  double q;
  std::optional<double> gamma0;
  double threshold_lhs;             ///< 2 N alpha
  double threshold_rhs;             ///< (N - alpha - 2)^2
  double statement_threshold_rhs;   ///< (1 + alpha)^2
  double critical_rhs;              ///< (N-1)(N-3); meaningful for N > 3
  std::vector<Case13Option> available;

  bool has(Case13Id id) const;
  const Case13Option& option(Case13Id id) const;
};

Case13 classify_case13(int N, double alpha);

/// The requested case, or an error naming why it does not apply.
Case13Option resolve_case13(int N, double alpha, Case13Id requested);

/// (N-alpha-2)^2 / ((N-1)(N-3)) without the > 1 requirement (N > 3 only).
double gamma0_ratio(int N, double alpha);

/// gamma0 for case 2; errors unless N > 3 and gamma0 > 1.
double gamma0(int N, double alpha);

/// 4 ||g||_q / ((N-alpha-2)^2 |S^{N-1}|^{1/q}).
double thm13_constant(int N, double alpha, double g_norm, double q);

/// (p/(N-p-alpha))^p ||g||_{N/(p+alpha)} / |S^{N-1}|^{(p+alpha)/N}.
double thm31_constant(const Regime& regime, double g_norm);

/// Lambda_{N,s,p} ||g||_{N/sp} / |S^{N-1}|^{sp/N}.
double frac_constant(const FracRegime& frac, double g_norm, double lambda);

}  // namespace hardylab
