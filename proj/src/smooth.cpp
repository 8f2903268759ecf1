#include "twmo/smooth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "twmo/error.hpp"
#include "twmo/quadrature.hpp"
#include "twmo/special.hpp"

namespace twmo::smooth {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kOrder = 20;

double h(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }

double sigma(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double a = h(u), b = h(1.0 - u);
  return a / (a + b);
}

double psi(double x) { return sigma(4.0 * (x - 0.75)); }

double partition(double x) {
  if (x <= 0.75 || x >= 2.0) return 0.0;
  return psi(x) - psi(0.5 * x);
}

int panels_for(int nodes) { return std::max(1, (nodes + kOrder - 1) / kOrder); }

}  // namespace

SmoothWeight::SmoothWeight(WeightKind kind, Support support,
                           std::function<double(double)> evaluator, QuadratureSpec quadrature)
    : kind_(kind), support_(support), evaluator_(std::move(evaluator)),
      quadrature_(std::move(quadrature)) {}

double SmoothWeight::operator()(double x) const {
  if (x < support_.lo || x > support_.hi) return 0.0;
  return evaluator_(x);
}

std::string SmoothWeight::name() const {
  switch (kind_) {
    case WeightKind::BumpJ: return "J";
    case WeightKind::PartitionG: return "G";
    case WeightKind::WindowV: return "V";
    case WeightKind::StepPsi: return "psi";
    case WeightKind::Custom: return "custom";
  }
  return "custom";
}

SmoothWeight SmoothWeight::scaled(double c) const {
  auto f = evaluator_;
  return SmoothWeight(WeightKind::Custom, support_, [f, c](double x) { return c * f(x); },
                      quadrature_);
}

SmoothWeight linear_combination(double alpha, const SmoothWeight& a, double beta,
                                const SmoothWeight& b) {
  const Support s{std::min(a.support().lo, b.support().lo),
                  std::max(a.support().hi, b.support().hi)};
  return SmoothWeight(WeightKind::Custom, s,
                      [=](double x) { return alpha * a(x) + beta * b(x); });
}

SmoothWeight make_step_psi() {
  // ψ is 1 on [1, ∞); the support bound is a large finite stand-in
  return SmoothWeight(WeightKind::StepPsi, {0.75, 1e300}, psi);
}

SmoothWeight make_partition_G() {
  return SmoothWeight(WeightKind::PartitionG, {0.75, 2.0}, partition);
}

SmoothWeight make_window_V() {
  return SmoothWeight(WeightKind::WindowV, {0.375, 4.0}, [](double x) {
    return partition(0.5 * x) + partition(x) + partition(2.0 * x);
  });
}

SmoothWeight make_bump_J() {
  return SmoothWeight(WeightKind::BumpJ, {0.5, 2.0}, [](double x) {
    if (x <= 0.5 || x >= 2.0) return 0.0;
    return std::exp(-1.0 / ((x - 0.5) * (2.0 - x)));
  });
}

SmoothWeight make_weight(const std::string& name) {
  if (name == "J") return make_bump_J();
  if (name == "G") return make_partition_G();
  if (name == "V") return make_window_V();
  if (name == "psi") return make_step_psi();
  throw UsageError("unknown smooth weight '" + name + "' (J, G, V, psi)");
}

void validate(const TransformConfig& cfg) {
  if (!(cfg.tolerance > 0.0)) throw UsageError("transform tolerance must be positive");
  if (cfg.nodes <= 0 || cfg.k_truncation <= 0) {
    throw UsageError("transform node count and k truncation must be positive");
  }
}

double integral(const SmoothWeight& F, int nodes) {
  if (F.kind() == WeightKind::StepPsi) throw UsageError("ψ is not compactly supported");
  const auto& s = F.support();
  return quad::integrate([&](double x) { return F(x); }, s.lo, s.hi, panels_for(nodes), kOrder);
}

namespace {

double transform_at(const SmoothWeight& F, double xi, int nodes) {
  const auto& s = F.support();
  return quad::integrate(
      [&](double x) {
        const double arg = 2.0 * kPi * x * xi;
        return (std::cos(arg) + std::sin(arg)) * F(x);
      },
      s.lo, s.hi, panels_for(nodes), kOrder);
}

}  // namespace

double check_transform(const SmoothWeight& F, double xi, const TransformConfig& cfg) {
  validate(cfg);
  if (F.kind() == WeightKind::StepPsi) throw UsageError("ψ is not compactly supported");
  const int nodes = ProgressionTransform::nodes_for(F, std::abs(xi), cfg.nodes);
  const double coarse = transform_at(F, xi, nodes);
  const double fine = transform_at(F, xi, 2 * nodes);
  if (std::abs(fine - coarse) > cfg.tolerance) {
    throw NumericalError("transform quadrature did not converge at xi = " + std::to_string(xi));
  }
  return fine;
}

double check_transform_mellin(const SmoothWeight& F, double xi, double t_max, int x_nodes) {
  if (xi == 0.0) throw UsageError("Mellin representation needs xi != 0");
  const auto& sup = F.support();
  const quad::Rule xr = quad::composite(std::log(sup.lo), std::log(sup.hi),
                                        panels_for(x_nodes), kOrder);
  // F̃(1-s) = ∫ F(x) x^{-s} dx = ∫ F(e^u) e^{u(1-s)} du
  std::vector<double> fu(xr.nodes.size()), uu(xr.nodes.size());
  for (std::size_t i = 0; i < xr.nodes.size(); ++i) {
    uu[i] = xr.nodes[i];
    fu[i] = xr.weights[i] * F(std::exp(uu[i])) * std::exp(0.5 * uu[i]);
  }
  const double sgn = xi > 0 ? 1.0 : -1.0;
  const double log2pixi = std::log(2.0 * kPi * std::abs(xi));

  auto integrand = [&](double t) {
    const std::complex<double> s(0.5, t);
    std::complex<double> mellin = 0.0;
    for (std::size_t i = 0; i < uu.size(); ++i) {
      mellin += fu[i] * std::polar(1.0, -t * uu[i]);
    }
    // (cos + sin)(z) = √2 sin(z + π/4), (cos - sin)(z) = √2 sin(z + 3π/4); combined in log form
    const std::complex<double> w = kPi * s / 2.0 + (sgn > 0 ? kPi / 4.0 : 3.0 * kPi / 4.0);
    const std::complex<double> log_part =
        special::log_gamma(s) + special::log_sin(w) - s * log2pixi;
    return (mellin * std::sqrt(2.0) * std::exp(log_part)).real();
  };
  // the integrand at -t is the conjugate of the one at t, so integrate 2 Re over t > 0
  const int panels = static_cast<int>(std::ceil(t_max * 2.0));
  const double half = quad::integrate(integrand, 0.0, t_max, panels, kOrder);
  return half / kPi;
}

int ProgressionTransform::nodes_for(const SmoothWeight& F, double xi_max, int min_nodes) {
  const double width = F.support().width();
  const int panels = static_cast<int>(std::ceil(1.5 * width * xi_max)) + 1;
  return std::max(min_nodes, panels * kOrder);
}

ProgressionTransform::ProgressionTransform(const SmoothWeight& F, double step, int min_nodes)
    : step_(step) {
  const auto& s = F.support();
  const int nodes = std::max(min_nodes, kOrder);
  const quad::Rule r = quad::composite(s.lo, s.hi, panels_for(nodes), kOrder);
  x_ = r.nodes;
  wf_.resize(x_.size());
  for (std::size_t i = 0; i < x_.size(); ++i) wf_[i] = r.weights[i] * F(x_[i]);
  phase_.assign(x_.size(), 1.0);
  rot_.resize(x_.size());
  for (std::size_t i = 0; i < x_.size(); ++i) rot_[i] = std::polar(1.0, 2.0 * kPi * x_[i] * step_);
}

void ProgressionTransform::resync() {
  for (std::size_t i = 0; i < x_.size(); ++i) {
    phase_[i] = std::polar(1.0, 2.0 * kPi * x_[i] * step_ * k_);
  }
}

std::pair<double, double> ProgressionTransform::next() {
  ++k_;
  if (k_ > 0) {
    if (k_ % 64 == 0) {
      resync();
    } else {
      for (std::size_t i = 0; i < x_.size(); ++i) phase_[i] *= rot_[i];
    }
  }
  double c = 0.0, s = 0.0;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    c += wf_[i] * phase_[i].real();
    s += wf_[i] * phase_[i].imag();
  }
  return {c, s};
}

}  // namespace twmo::smooth
