#include "latfac/specfactor1d.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "latfac/error.hpp"
#include "latfac/fft.hpp"
#include "latfac/logwind.hpp"

namespace latfac {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

std::size_t initial_grid(std::int64_t n) {
  return fft::next_power_of_two(std::max<std::size_t>(64, 8 * (static_cast<std::size_t>(n) + 1)));
}

FactorPair constant_factor(const TrigPoly1& t) {
  const cplx c = t.coeff(0);
  const cplx s = std::sqrt(c);
  return {TrigPoly1::constant(s), TrigPoly1::constant(s), std::log(c)};
}

// One cepstral pass on an M-point grid.
FactorPair cepstral(const TrigPoly1& t, std::size_t M, bool positive) {
  const CirclePhaseLog L = positive ? principal_log(t, M) : branch_log(t, M);
  if (L.grid_size() != M) return cepstral(t, L.grid_size(), positive);
  auto spec = fft::forward(L.log_values);
  const double inv = 1.0 / static_cast<double>(M);
  for (auto& v : spec) v *= inv;

  auto side = [&](Side s) {
    std::vector<cplx> masked(M, 0.0);
    masked[0] = 0.5 * spec[0];
    for (std::size_t j = 1; j < M / 2; ++j) {
      const std::size_t idx = s == Side::Plus ? j : M - j;
      masked[idx] = spec[idx];
    }
    auto values = fft::backward(masked);
    for (auto& v : values) v = std::exp(v);
    const FreqWindow w = s == Side::Plus ? FreqWindow{0, t.n_plus()} : FreqWindow{-t.n_minus(), 0};
    return from_samples(SampledCircleFn{std::move(values)}, w);
  };
  return {side(Side::Plus), side(Side::Minus), spec[0]};
}

bool on_circle(const TrigPoly1& t, cplx z, double l1) {
  const double d = std::abs(std::abs(z) - 1.0);
  if (d <= 1e-9) return true;
  if (d > 1e-6) return false;
  const double x = std::arg(z) / (2.0 * kPi);
  return std::abs(t(x)) <= 1e-10 * l1;
}

TrigPoly1 product_form(const std::vector<cplx>& lambdas, cplx scale, int direction) {
  std::vector<cplx> poly{1.0};
  for (const cplx& l : lambdas) {
    std::vector<cplx> next(poly.size() + 1, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += poly[i];
      next[i + 1] -= l * poly[i];
    }
    poly = std::move(next);
  }
  TrigPoly1::Map m;
  for (std::size_t i = 0; i < poly.size(); ++i)
    m.emplace(direction * static_cast<std::int64_t>(i), scale * poly[i]);
  return TrigPoly1(std::move(m));
}

cplx horner(const std::vector<cplx>& q, cplx z) {
  cplx acc = 0.0;
  for (auto it = q.rbegin(); it != q.rend(); ++it) acc = acc * z + *it;
  return acc;
}

}  // namespace

double explicit_bound(std::int64_t n, double rho, double tau, double theta, double sup_t) {
  const double nd = static_cast<double>(n);
  const double N0 = (nd / rho) * std::log(nd * tau / rho);
  const double c_n = 1.0 + std::log(nd + 1.0);
  return c_n * std::exp(0.5 * theta) * std::sqrt(sup_t) * std::pow(N0, theta);
}

BoundProfile bound_profile(const TrigPoly1& t) {
  BoundProfile p;
  p.l1 = l1_coeff_norm(t);
  if (t.is_zero()) throw Error(ErrorCode::NotPositiveReal, "bound_profile: t = 0");
  const double tol = 1e-9 * p.l1;
  const Bracket re = min_re_certified(t, tol);
  if (!(re.lower > 0)) throw Error(ErrorCode::NotPositiveReal, "bound_profile: min Re t is not certified positive");
  p.min_re = re.lower;
  p.sup_t = sup_norm_certified(t, tol).upper;
  const TrigPoly1 im = imag_part(t);
  p.sup_im = im.is_zero() ? 0.0 : sup_norm_certified(im, tol).upper;
  p.n = t.degree();
  p.rho = p.min_re / (2.0 * kE * p.l1);
  p.rho_at_boundary = p.rho >= (1.0 - 1e-12) / (2.0 * kE);
  p.theta = std::atan(p.sup_im / p.min_re);
  p.tau = std::max(std::log(p.sup_t) + 0.5 * p.min_re, 0.5 * kPi + std::abs(std::log(0.5 * p.min_re)));
  p.c_n = 1.0 + std::log(static_cast<double>(p.n) + 1.0);
  if (p.n == 0) {
    p.constant = true;
    p.B = p.c_n * std::sqrt(p.sup_t);
    p.B_full = p.B;
    return p;
  }
  const double n = static_cast<double>(p.n);
  p.sigma = p.rho / n;
  p.N0 = (n / p.rho) * std::log(n * p.tau / p.rho);
  p.B = explicit_bound(p.n, p.rho, p.tau, p.theta, p.sup_t);
  p.B_full = kE * p.B;
  return p;
}

void normalize_sign(FactorPair& fp) {
  const cplx c = fp.psi_plus.coeff(0);
  if (c.real() < 0 || (c.real() == 0 && c.imag() < 0)) {
    fp.psi_plus *= -1.0;
    fp.psi_minus *= -1.0;
    fp.gamma += cplx{0.0, fp.gamma.imag() > 0 ? -2.0 * kPi : 2.0 * kPi};
  }
}

FactorPair psi_factor(const TrigPoly1& t, double tol) {
  FactorOptions opts;
  opts.tol = tol;
  return psi_factor(t, opts);
}

FactorPair psi_factor(const TrigPoly1& t, const FactorOptions& opts) {
  if (t.is_zero()) throw Error(ErrorCode::NotInvertible, "psi_factor: t = 0");
  if (!(opts.tol > 0)) throw Error(ErrorCode::InvalidInput, "psi_factor: tol must be positive");
  if (t.degree() == 0) {
    FactorPair fp = constant_factor(t);
    if (opts.normalize) normalize_sign(fp);
    return fp;
  }
  const double l1 = l1_coeff_norm(t);
  bool positive = opts.assume_positive_real;
  if (!positive) positive = min_re_certified(t, 1e-3 * l1).lower > 0;

  std::size_t M = initial_grid(t.degree());
  if (!positive) {
    const Bracket m = min_modulus_certified(t);
    if (!(m.lower > 0)) throw Error(ErrorCode::NotInvertible, "psi_factor: t vanishes on the circle");
    M = std::max(M, phase_grid_size(t, m.lower));
  }
  std::optional<FactorPair> prev;
  for (;;) {
    FactorPair cur = cepstral(t, M, positive);
    if (prev) {
      const double scale = std::max(1.0, l1_coeff_norm(cur.psi_plus) + l1_coeff_norm(cur.psi_minus));
      const double diff = l1_coeff_norm(cur.psi_plus - prev->psi_plus) +
                          l1_coeff_norm(cur.psi_minus - prev->psi_minus);
      const double resid = l1_coeff_norm(cur.psi_plus * cur.psi_minus - t);
      if (resid <= opts.tol && diff <= std::max(opts.tol, 1e-12 * scale)) {
        if (opts.normalize) normalize_sign(cur);
        return cur;
      }
    }
    if (M >= max_grid())
      throw Error(ErrorCode::NoConvergence, "psi_factor: grid cap reached before tolerance was met");
    prev = std::move(cur);
    M *= 2;
  }
}

LaurentRoots laurent_roots(const TrigPoly1& t) {
  if (t.is_zero()) throw Error(ErrorCode::InvalidInput, "laurent_roots: t = 0");
  const std::int64_t lo = t.min_freq();
  const std::int64_t hi = t.max_freq();
  const auto D = static_cast<Eigen::Index>(hi - lo);
  LaurentRoots out;
  out.lead = t.coeff(hi);
  out.zero_roots = lo + t.n_minus();
  if (D == 0) return out;

  std::vector<cplx> q(static_cast<std::size_t>(D) + 1);
  for (const auto& [j, c] : t.coeffs()) q[static_cast<std::size_t>(j - lo)] = c;
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(D, D);
  for (Eigen::Index i = 1; i < D; ++i) C(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < D; ++i) C(i, D - 1) = -q[static_cast<std::size_t>(i)] / out.lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(C, false);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::NoConvergence, "laurent_roots: eigen solver failed");

  std::vector<cplx> dq(q.size() - 1);
  for (std::size_t i = 1; i < q.size(); ++i) dq[i - 1] = static_cast<double>(i) * q[i];
  out.roots.reserve(static_cast<std::size_t>(D));
  for (Eigen::Index i = 0; i < D; ++i) {
    cplx z = solver.eigenvalues()[i];
    const cplx d = horner(dq, z);
    if (std::abs(d) > 0) {
      const cplx z1 = z - horner(q, z) / d;
      if (std::isfinite(z1.real()) && std::isfinite(z1.imag()) && std::abs(horner(q, z1)) < std::abs(horner(q, z)))
        z = z1;
    }
    out.roots.push_back(z);
  }
  // Eigenvalue order is unspecified; fix one for reproducible output.
  std::sort(out.roots.begin(), out.roots.end(), [](cplx a, cplx b) {
    return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : std::arg(a) < std::arg(b);
  });
  return out;
}

RootFactorPair psi_factor_roots(const TrigPoly1& t) {
  if (t.is_zero()) throw Error(ErrorCode::NotInvertible, "psi_factor_roots: t = 0");
  RootFactorPair out;
  if (t.degree() == 0) {
    static_cast<FactorPair&>(out) = constant_factor(t);
    normalize_sign(out);
    out.margin = std::numeric_limits<double>::infinity();
    return out;
  }
  const double l1 = l1_coeff_norm(t);
  const LaurentRoots lr = laurent_roots(t);
  std::int64_t inside = lr.zero_roots;
  out.margin = std::numeric_limits<double>::infinity();
  for (const cplx& z : lr.roots) {
    if (on_circle(t, z, l1)) throw Error(ErrorCode::RootOnCircle, "psi_factor_roots: root on the unit circle");
    out.margin = std::min(out.margin, std::abs(std::abs(z) - 1.0));
    if (std::abs(z) < 1.0) {
      ++inside;
      out.lambda_minus.push_back(z);
    } else {
      out.lambda_plus.push_back(1.0 / z);
    }
  }
  const std::int64_t w = inside - t.n_minus();
  if (w != 0 || lr.zero_roots != 0)
    throw Error(ErrorCode::NonzeroWinding, "psi_factor_roots: winding number is " + std::to_string(w));

  cplx gamma = std::log(t(0.0));
  for (const cplx& l : out.lambda_minus) gamma -= std::log(1.0 - l);
  for (const cplx& l : out.lambda_plus) gamma -= std::log(1.0 - l);
  const cplx half = std::exp(0.5 * gamma);
  out.gamma = gamma;
  out.psi_plus = product_form(out.lambda_plus, half, +1);
  out.psi_minus = product_form(out.lambda_minus, half, -1);
  normalize_sign(out);
  return out;
}

double mahler_quadrature(const TrigPoly1& t) {
  if (t.is_zero()) return 0.0;
  std::size_t M = initial_grid(t.degree());
  const std::size_t cap = std::min<std::size_t>(max_grid(), std::size_t{1} << 20);
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (;;) {
    // Midpoint rule: samples of t(x + 1/(2M)).
    TrigPoly1::Map shifted;
    for (const auto& [j, c] : t.coeffs())
      shifted.emplace(j, c * std::polar(1.0, kPi * static_cast<double>(j) / static_cast<double>(M)));
    const auto v = to_samples(TrigPoly1(std::move(shifted)), M).values;
    double acc = 0.0;
    for (const cplx& s : v) acc += std::log(std::abs(s));
    const double mean = acc / static_cast<double>(M);
    if (std::abs(mean - prev) <= 1e-14 * std::max(1.0, std::abs(mean)) || M >= cap) return std::exp(mean);
    prev = mean;
    M *= 2;
  }
}

MahlerMeasure mahler_measure(const TrigPoly1& t) {
  if (t.is_zero()) throw Error(ErrorCode::InvalidInput, "mahler_measure: t = 0");
  MahlerMeasure out;
  out.quadrature = mahler_quadrature(t);
  const LaurentRoots lr = laurent_roots(t);
  const double l1 = l1_coeff_norm(t);
  bool ok = true;
  double prod = std::abs(lr.lead);
  for (const cplx& z : lr.roots) {
    if (on_circle(t, z, l1)) ok = false;
    prod *= std::max(1.0, std::abs(z));
  }
  if (ok) {
    out.roots = prod;
    out.roots_available = true;
    if (std::abs(out.roots - out.quadrature) > 1e-8 * out.roots)
      throw Error(ErrorCode::NoConvergence, "mahler_measure: quadrature and root values disagree");
  }
  return out;
}

PsiBoundReport psi_bound_check(const TrigPoly1& t) {
  PsiBoundReport r;
  r.profile = bound_profile(t);
  const FactorPair fp = psi_factor(t, 1e-11 * r.profile.l1);
  r.sup_plus = sup_norm_certified(fp.psi_plus, 1e-9 * l1_coeff_norm(fp.psi_plus));
  r.sup_minus = sup_norm_certified(fp.psi_minus, 1e-9 * l1_coeff_norm(fp.psi_minus));
  // The bound is attained exactly for constants, so allow the enclosure width.
  r.bound_pass = r.sup_plus.upper <= r.profile.B + r.sup_plus.width() &&
                 r.sup_minus.upper <= r.profile.B + r.sup_minus.width();
  const std::int64_t n = r.profile.n;
  if (n == 0) return r;

  const std::size_t M = std::max<std::size_t>(4096, fft::next_power_of_two(64 * static_cast<std::size_t>(4 * n + 1)));
  const auto v = to_samples(t, M).values;
  std::vector<cplx> logabs(M);
  for (std::size_t m = 0; m < M; ++m) logabs[m] = std::log(std::abs(v[m]));
  const auto spec = fft::forward(logabs);
  for (std::int64_t N : {n, 2 * n, 4 * n}) {
    std::vector<cplx> masked(M, 0.0);
    const auto top = std::min<std::size_t>(static_cast<std::size_t>(N), M / 2 - 1);
    masked[0] = spec[0];
    for (std::size_t j = 1; j <= top; ++j) {
      masked[j] = spec[j];
      masked[M - j] = spec[M - j];
    }
    const auto smooth = fft::backward(masked);
    const double slack = 2.0 * r.profile.tau / r.profile.sigma * std::exp(-static_cast<double>(N) * r.profile.sigma);
    F1Check c;
    c.N = N;
    c.max_excess = -std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < M; ++m) {
      const double lhs = smooth[m].real() / static_cast<double>(M);
      c.max_excess = std::max(c.max_excess, lhs - (logabs[m].real() + slack));
    }
    c.pass = c.max_excess <= 1e-9;
    r.f1.push_back(c);
  }
  return r;
}

TrigPoly1 example1_poly(std::int64_t n) {
  if (n < 1 || n % 2 == 0) throw Error(ErrorCode::InvalidInput, "t_n: n must be odd and positive");
  // (z - a)^{2n} by repeated multiplication keeps the binomial coefficients exact enough.
  const double a = 1.0 / static_cast<double>(n);
  std::vector<cplx> p{1.0};
  for (std::int64_t i = 0; i < 2 * n; ++i) {
    std::vector<cplx> q(p.size() + 1, 0.0);
    for (std::size_t k = 0; k < p.size(); ++k) {
      q[k + 1] += p[k];
      q[k] -= a * p[k];
    }
    p = std::move(q);
  }
  p[0] -= 1.0;
  TrigPoly1::Map m;
  for (std::size_t k = 0; k < p.size(); ++k) m.emplace(static_cast<std::int64_t>(k) - n, p[k]);
  return TrigPoly1(std::move(m));
}

Example1Row example1_row(std::int64_t n) {
  const TrigPoly1 t = example1_poly(n);
  Example1Row r;
  r.n = n;
  r.mahler = mahler_measure(t).value();
  const double l1 = l1_coeff_norm(t);
  r.sup_t = sup_norm_certified(t, 1e-10 * l1).upper;
  const CirclePhaseLog L = branch_log(t);
  for (const cplx& v : L.log_values) r.sup_im_log = std::max(r.sup_im_log, std::abs(v.imag()));
  const RootFactorPair fp = psi_factor_roots(t);
  r.log_sup_psi = std::log(sup_norm_certified(fp.psi_plus, 1e-10 * l1_coeff_norm(fp.psi_plus)).upper);
  const double nd = static_cast<double>(n);
  r.mahler_predicted = std::exp(2.0 / kPi);
  r.sup_t_predicted = 1.0 + kE * kE;
  r.sup_im_predicted = 2.0 * kPi * nd;
  r.log_sup_psi_predicted = 1.0 / kPi + 0.5831 * nd;
  return r;
}

}  // namespace latfac
