#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace twmo::smooth {

enum class WeightKind { BumpJ, PartitionG, WindowV, StepPsi, Custom };

struct Support {
  double lo;
  double hi;
  double width() const noexcept { return hi - lo; }
};

struct QuadratureSpec {
  int nodes = 2048;
  std::string scheme = "gauss-legendre-panels";
};

/// A smooth test function with compact (or half-line, for ψ) support.
class SmoothWeight {
 public:
  SmoothWeight(WeightKind kind, Support support, std::function<double(double)> evaluator,
               QuadratureSpec quadrature = {});

  /// Returns 0 outside the support.
  double operator()(double x) const;

  WeightKind kind() const noexcept { return kind_; }
  const Support& support() const noexcept { return support_; }
  const QuadratureSpec& quadrature() const noexcept { return quadrature_; }
  std::string name() const;

  SmoothWeight scaled(double c) const;

 private:
  WeightKind kind_;
  Support support_;
  std::function<double(double)> evaluator_;
  QuadratureSpec quadrature_;
};

SmoothWeight linear_combination(double alpha, const SmoothWeight& a, double beta,
                                const SmoothWeight& b);

/// ψ(x) = σ(4(x - 3/4)), σ(u) = h(u)/(h(u)+h(1-u)), h(u) = e^{-1/u} for u > 0.
SmoothWeight make_step_psi();
/// G(x) = ψ(x) - ψ(x/2): supported on [3/4, 2], equal to 1 on [1, 3/2].
SmoothWeight make_partition_G();
/// V(x) = G(x/2) + G(x) + G(2x).
SmoothWeight make_window_V();
/// J(x) = exp(-1/((x - 1/2)(2 - x))) on (1/2, 2).
SmoothWeight make_bump_J();
/// "J", "G", "V" or "psi".
SmoothWeight make_weight(const std::string& name);

struct TransformConfig {
  int k_truncation = 200000;
  int nodes = 2048;
  double tolerance = 1e-12;
};

void validate(const TransformConfig& cfg);

/// ∫ F over its support with `nodes` Gauss–Legendre nodes.
double integral(const SmoothWeight& F, int nodes);

/// F̌(ξ) = ∫ (cos 2πxξ + sin 2πxξ) F(x) dx. Node count grows with |ξ|;
/// throws NumericalError if doubling the nodes moves the result by more than cfg.tolerance.
double check_transform(const SmoothWeight& F, double xi, const TransformConfig& cfg);

/// Same transform through the Mellin line Re(s) = 1/2:
/// (1/2πi)∫ F̃(1-s) Γ(s) (cos + sgn(ξ) sin)(πs/2) (2π|ξ|)^{-s} ds.
double check_transform_mellin(const SmoothWeight& F, double xi, double t_max = 1500.0,
                              int x_nodes = 4000);

/// Cosine and sine transforms C(kΔ) = ∫ cos(2πxkΔ)F, S(kΔ) = ∫ sin(2πxkΔ)F for k = 0..count-1,
/// computed by phase rotation on one fixed node set sized for ξ up to (count-1)Δ.
class ProgressionTransform {
 public:
  ProgressionTransform(const SmoothWeight& F, double step, int min_nodes);

  /// Advances to the next k and returns (C, S) at the current k; first call gives k = 0.
  std::pair<double, double> next();
  int index() const noexcept { return k_; }

  /// Node count needed to resolve frequencies up to xi_max on F's support.
  static int nodes_for(const SmoothWeight& F, double xi_max, int min_nodes);

 private:
  void resync();

  std::vector<double> x_, wf_;
  std::vector<std::complex<double>> phase_, rot_;
  double step_;
  int k_ = -1;
};

}  // namespace twmo::smooth
