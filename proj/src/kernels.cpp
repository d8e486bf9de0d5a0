#include "latfac/kernels.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "latfac/error.hpp"

namespace latfac {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Locates a sign change of f on [a, b] (f(a) f(b) < 0) by bisection.
template <class F>
double bisect(F&& f, double a, double b) {
  double fa = f(a);
  for (int it = 0; it < 60 && b - a > 1e-15; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

const char* to_string(KernelType type) {
  switch (type) {
    case KernelType::Dirichlet: return "Dirichlet";
    case KernelType::Hilbert: return "Hilbert";
    case KernelType::AnalyticPlus: return "AnalyticPlus";
    case KernelType::AnalyticMinus: return "AnalyticMinus";
    case KernelType::HalfPlusAnalyticPlus: return "HalfPlusAnalyticPlus";
    case KernelType::HalfPlusAnalyticMinus: return "HalfPlusAnalyticMinus";
  }
  return "Unknown";
}

double KernelKind::mask(std::int64_t j) const {
  const std::int64_t n = order;
  if (j < -n || j > n) return 0.0;
  switch (type) {
    case KernelType::Dirichlet: return 1.0;
    case KernelType::Hilbert: return j > 0 ? 1.0 : (j < 0 ? -1.0 : 0.0);
    case KernelType::AnalyticPlus: return j > 0 ? 1.0 : (j == 0 ? 0.5 : 0.0);
    case KernelType::AnalyticMinus: return j < 0 ? 1.0 : (j == 0 ? 0.5 : 0.0);
    case KernelType::HalfPlusAnalyticPlus: return j >= 0 ? 1.0 : 0.0;
    case KernelType::HalfPlusAnalyticMinus: return j <= 0 ? 1.0 : 0.0;
  }
  return 0.0;
}

cplx KernelKind::value(double x) const {
  // Power recurrence from e_{-N} upward.
  const cplx z = std::polar(1.0, kTwoPi * x);
  cplx w = std::polar(1.0, -kTwoPi * static_cast<double>(order) * x);
  cplx acc = 0.0;
  for (std::int64_t j = -order; j <= order; ++j) {
    const double m = mask(j);
    if (m != 0.0) acc += m * w;
    w *= z;
  }
  return acc;
}

TrigPoly1 KernelKind::as_poly() const {
  TrigPoly1::Map m;
  for (std::int64_t j = -order; j <= order; ++j)
    if (mask(j) != 0.0) m.emplace(j, mask(j));
  return TrigPoly1(std::move(m));
}

TrigPoly1 apply_mask(const KernelKind& kind, const TrigPoly1& t) {
  TrigPoly1::Map m;
  for (const auto& [j, c] : t.coeffs()) {
    const double factor = kind.mask(j);
    if (factor != 0.0) m.emplace_hint(m.end(), j, factor * c);
  }
  return TrigPoly1(std::move(m));
}

double kernel_l1_norm(const KernelKind& kind) {
  if (kind.order < 0) throw Error(ErrorCode::InvalidInput, "kernel order must be >= 0");
  auto re = [&](double x) { return kind.value(x).real(); };
  auto im = [&](double x) { return kind.value(x).imag(); };

  // Each grid cell is split where Re K or Im K changes sign, so |K| is smooth
  // on every piece and a fixed Gauss rule is enough.
  const std::size_t grid = 32 * static_cast<std::size_t>(kind.order + 1);
  std::vector<cplx> samples(grid + 1);
  for (std::size_t i = 0; i <= grid; ++i)
    samples[i] = kind.value(static_cast<double>(i) / static_cast<double>(grid));

  auto integrand = [&](double x) { return std::abs(kind.value(x)); };
  using Rule = boost::math::quadrature::gauss<double, 20>;
  double total = 0.0;
  for (std::size_t i = 0; i < grid; ++i) {
    const double a = static_cast<double>(i) / static_cast<double>(grid);
    const double b = static_cast<double>(i + 1) / static_cast<double>(grid);
    std::vector<double> pts{a};
    if (samples[i].real() * samples[i + 1].real() < 0) pts.push_back(bisect(re, a, b));
    if (samples[i].imag() * samples[i + 1].imag() < 0) pts.push_back(bisect(im, a, b));
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    for (std::size_t k = 0; k + 1 < pts.size(); ++k)
      if (pts[k + 1] > pts[k]) total += Rule::integrate(integrand, pts[k], pts[k + 1]);
  }
  return total;
}

double kernel_l1_bound(const KernelKind& kind) {
  const double n = static_cast<double>(kind.order);
  switch (kind.type) {
    case KernelType::Dirichlet: return 1.0 + std::log(2.0 * n + 1.0);
    case KernelType::Hilbert: return 1.0 + 2.0 * std::log(n);
    case KernelType::AnalyticPlus:
    case KernelType::AnalyticMinus: return 1.5 + std::log(n);
    case KernelType::HalfPlusAnalyticPlus:
    case KernelType::HalfPlusAnalyticMinus: return 1.0 + std::log(n + 1.0);
  }
  return 0.0;
}

}  // namespace latfac
