#include "latfac/specfactor2d.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

#include "latfac/error.hpp"
#include "latfac/fft.hpp"

namespace latfac {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

// Runs body(i) for i in [0, n) on a few threads. The first exception by index
// is rethrown, so failures are reported the same way regardless of scheduling.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(hw, std::max<std::size_t>(1, n / 64));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::size_t> error_index(workers, n);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        const std::size_t lo = n * w / workers;
        const std::size_t hi = n * (w + 1) / workers;
        for (std::size_t i = lo; i < hi; ++i) {
          try {
            body(i);
          } catch (...) {
            errors[w] = std::current_exception();
            error_index[w] = i;
            return;
          }
        }
      });
    }
  }
  std::size_t best = workers;
  for (std::size_t w = 0; w < workers; ++w)
    if (errors[w] && (best == workers || error_index[w] < error_index[best])) best = w;
  if (best < workers) std::rethrow_exception(errors[best]);
}

double default_tol(const TrigPoly2& t) { return 1e-11 * l1_coeff_norm(t); }

// b[k - kmin][idx]: DFT over the slices of the k-th y-coefficient, divided by
// M and phase-corrected for the slice offset.
struct SliceSpectrum {
  std::int64_t kmin = 0;
  std::int64_t kmax = 0;
  std::vector<std::vector<cplx>> b;
};

SliceSpectrum spectrum(const SlicedFactor& sf, Side side) {
  const std::size_t M = sf.grid_size();
  SliceSpectrum s;
  s.kmin = side == Side::Plus ? 0 : -sf.band_minus;
  s.kmax = side == Side::Plus ? sf.band : 0;
  for (std::int64_t k = s.kmin; k <= s.kmax; ++k) {
    std::vector<cplx> a(M);
    for (std::size_t m = 0; m < M; ++m) {
      const FactorPair& fp = sf.slices[m];
      a[m] = (side == Side::Plus ? fp.psi_plus : fp.psi_minus).coeff(k);
    }
    auto b = fft::forward(a);
    for (std::size_t idx = 0; idx < M; ++idx) {
      const auto j = static_cast<std::int64_t>(idx) - (idx >= M / 2 ? static_cast<std::int64_t>(M) : 0);
      b[idx] *= std::polar(1.0 / static_cast<double>(M), -2.0 * kPi * static_cast<double>(j) * sf.offset /
                                                             static_cast<double>(M));
    }
    s.b.push_back(std::move(b));
  }
  return s;
}

// Values of sum_{|j| <= N} b_j e(j x) at x = (m + offset)/M for one k.
std::vector<cplx> truncated_values(const std::vector<cplx>& b, std::int64_t N, double offset) {
  const std::size_t M = b.size();
  std::vector<cplx> masked(M, 0.0);
  for (std::int64_t j = -N; j <= N; ++j) {
    const std::size_t idx = static_cast<std::size_t>((j % static_cast<std::int64_t>(M) + static_cast<std::int64_t>(M)) %
                                                     static_cast<std::int64_t>(M));
    masked[idx] = b[idx] * std::polar(1.0, 2.0 * kPi * static_cast<double>(j) * offset / static_cast<double>(M));
  }
  return fft::backward(masked);
}

std::vector<DistanceSample> distances(const SliceSpectrum& grid, const SlicedFactor& mid,
                                      const std::vector<std::int64_t>& Ns) {
  const std::size_t M = mid.grid_size();
  const std::size_t nk = grid.b.size();
  const std::size_t ny = 8 * (nk + 1);
  std::vector<DistanceSample> out;
  for (std::int64_t N : Ns) {
    if (2 * N >= static_cast<std::int64_t>(M)) throw Error(ErrorCode::AliasRisk, "distance: M <= 2N");
    std::vector<std::vector<cplx>> vals(nk);
    for (std::size_t kk = 0; kk < nk; ++kk) vals[kk] = truncated_values(grid.b[kk], N, mid.offset);
    DistanceSample d;
    d.N = N;
    std::vector<cplx> diff(nk);
    for (std::size_t m = 0; m < M; ++m) {
      double l1 = 0;
      for (std::size_t kk = 0; kk < nk; ++kk) {
        const std::int64_t k = grid.kmin + static_cast<std::int64_t>(kk);
        diff[kk] = mid.slices[m].psi_plus.coeff(k) - vals[kk][m];
        l1 += std::abs(diff[kk]);
      }
      d.upper = std::max(d.upper, l1);
      if (l1 <= d.sampled) continue;
      for (std::size_t iy = 0; iy < ny; ++iy) {
        const double y = static_cast<double>(iy) / static_cast<double>(ny);
        cplx acc = 0;
        for (std::size_t kk = 0; kk < nk; ++kk)
          acc += diff[kk] * std::polar(1.0, 2.0 * kPi * static_cast<double>(grid.kmin + static_cast<std::int64_t>(kk)) * y);
        d.sampled = std::max(d.sampled, std::abs(acc));
      }
    }
    out.push_back(d);
  }
  return out;
}

}  // namespace

SlicedFactor s_factor(const TrigPoly2& t, std::size_t M, double tol) {
  SliceOptions opts;
  opts.tol = tol;
  return s_factor(t, M, opts);
}

SlicedFactor s_factor(const TrigPoly2& t, std::size_t M, const SliceOptions& opts) {
  if (!fft::is_power_of_two(M)) throw Error(ErrorCode::InvalidInput, "s_factor: M must be a power of two");
  if (t.is_zero()) throw Error(ErrorCode::NotPositiveReal, "s_factor: t = 0");
  const double l1 = l1_coeff_norm(t);
  if (!opts.positivity_known && !(min_re_certified(t, 1e-6 * l1).lower > 0))
    throw Error(ErrorCode::NotPositiveReal, "s_factor: min Re t is not certified positive");
  const bool positive = is_real_valued(t);

  FactorOptions fo;
  fo.tol = opts.tol > 0 ? opts.tol : default_tol(t);
  fo.assume_positive_real = true;
  fo.normalize = positive;

  SlicedFactor sf;
  sf.offset = opts.offset;
  sf.band = t.n2_plus();
  sf.band_minus = t.n2_minus();
  sf.slices.resize(M);
  parallel_for(M, [&](std::size_t m) {
    const double x = (static_cast<double>(m) + opts.offset) / static_cast<double>(M);
    sf.slices[m] = psi_factor(slice_at(t, x), fo);
  });

  if (!positive) {
    normalize_sign(sf.slices[0]);
    for (std::size_t m = 1; m < M; ++m) {
      FactorPair& cur = sf.slices[m];
      const TrigPoly1& prev = sf.slices[m - 1].psi_plus;
      if (l1_coeff_norm(cur.psi_plus + prev) < l1_coeff_norm(cur.psi_plus - prev)) {
        cur.psi_plus *= -1.0;
        cur.psi_minus *= -1.0;
        cur.gamma += cplx{0.0, cur.gamma.imag() > 0 ? -2.0 * kPi : 2.0 * kPi};
      }
    }
  }
  return sf;
}

TrigPoly2 s_n_approx(const SlicedFactor& sf, std::int64_t N, Side side) {
  const std::size_t M = sf.grid_size();
  if (N < 0) throw Error(ErrorCode::InvalidInput, "s_n_approx: N must be >= 0");
  if (static_cast<std::int64_t>(M) <= 2 * N) throw Error(ErrorCode::AliasRisk, "s_n_approx: M <= 2N");
  const SliceSpectrum s = spectrum(sf, side);
  TrigPoly2::Map m;
  for (std::size_t kk = 0; kk < s.b.size(); ++kk) {
    const std::int64_t k = s.kmin + static_cast<std::int64_t>(kk);
    for (std::int64_t j = -N; j <= N; ++j) {
      const std::size_t idx = j >= 0 ? static_cast<std::size_t>(j) : M - static_cast<std::size_t>(-j);
      m.emplace(Freq2{j, k}, s.b[kk][idx]);
    }
  }
  return TrigPoly2(std::move(m));
}

std::int64_t ConvergenceBudget::N() const {
  return N_eps > 0 ? static_cast<std::int64_t>(std::ceil(N_eps)) : 0;
}

double ConvergenceBudget::envelope(std::int64_t N) const {
  if (n1 == 0) return 0.0;
  return 2.0 * slice_bound / sigma1 * std::exp(-static_cast<double>(N) * sigma1);
}

TorusExtrema torus_extrema(const TrigPoly2& t) {
  if (t.is_zero()) throw Error(ErrorCode::NotPositiveReal, "convergence_budget: t = 0");
  const double tol = 1e-9 * l1_coeff_norm(t);
  TorusExtrema e;
  const Bracket re = min_re_certified(t, tol);
  if (!(re.lower > 0)) throw Error(ErrorCode::NotPositiveReal, "convergence_budget: min Re t is not certified positive");
  e.min_t = re.lower;
  e.sup_t = sup_norm_certified(t, tol).upper;
  const TrigPoly2 im = imag_part(t);
  e.sup_im = im.is_zero() ? 0.0 : sup_norm_certified(im, tol).upper;
  return e;
}

ConvergenceBudget convergence_budget(const TrigPoly2& t, double eps) {
  if (!(eps > 0)) throw Error(ErrorCode::InvalidInput, "convergence_budget: eps must be positive");
  return convergence_budget(t, eps, torus_extrema(t));
}

ConvergenceBudget convergence_budget(const TrigPoly2& t, double eps, const TorusExtrema& ext) {
  if (!(eps > 0)) throw Error(ErrorCode::InvalidInput, "convergence_budget: eps must be positive");
  if (t.is_zero() || !(ext.min_t > 0)) throw Error(ErrorCode::NotPositiveReal, "convergence_budget: min Re t must be positive");
  ConvergenceBudget b;
  b.eps = eps;
  b.l1 = l1_coeff_norm(t);
  b.min_t = ext.min_t;
  b.sup_t = ext.sup_t;
  b.sup_im = ext.sup_im;
  b.n1 = t.n1();
  b.n2 = t.n2();
  b.rho = b.min_t / (2.0 * kE * b.l1);
  b.tau = std::max(std::log(b.sup_t) + 0.5 * b.min_t, 0.5 * kPi + std::abs(std::log(0.5 * b.min_t)));
  b.theta = std::atan(b.sup_im / b.min_t);
  const double sup_slice = b.sup_t + 0.5 * b.min_t;
  if (b.n2 == 0) {
    b.slice_bound = std::sqrt(sup_slice);
  } else {
    b.slice_bound = explicit_bound(b.n2, b.rho / (2.0 * kE), b.tau + std::log(2.0), b.theta, sup_slice);
  }
  b.zeta = b.slice_bound / std::pow(static_cast<double>(std::max<std::int64_t>(1, b.n2)), 0.5 * kPi);
  if (b.n1 == 0) return b;
  const double n1 = static_cast<double>(b.n1);
  b.sigma1 = b.rho / n1;
  b.N_eps = (n1 / b.rho) * std::log(2.0 * b.slice_bound * n1 / (eps * b.rho));
  return b;
}

std::size_t default_slice_count(const TrigPoly2& t, std::int64_t N) {
  const auto need = static_cast<std::size_t>(std::max<std::int64_t>(4 * t.n1(), std::max<std::int64_t>(N, 0) + 1));
  return fft::next_power_of_two(8 * need);
}

std::vector<DistanceSample> measure_distances(const TrigPoly2& t, std::size_t M, const std::vector<std::int64_t>& Ns,
                                              double tol) {
  const SlicedFactor grid = s_factor(t, M, tol);
  SliceOptions mo;
  mo.tol = tol;
  mo.offset = 0.5;
  const SlicedFactor mid = s_factor(t, M, mo);
  return distances(spectrum(grid, Side::Plus), mid, Ns);
}

SconvReport verify_sconv(const TrigPoly2& t, double eps, const SconvOptions& opts) {
  SconvReport r;
  r.budget = convergence_budget(t, eps);
  r.N = r.budget.N();
  r.M = default_slice_count(t, r.N);
  const std::size_t M = r.M;

  const SlicedFactor grid = s_factor(t, M);
  SliceOptions mo;
  mo.offset = 0.5;
  const SlicedFactor mid = s_factor(t, M, mo);
  const SliceSpectrum spec = spectrum(grid, Side::Plus);

  const std::int64_t top = static_cast<std::int64_t>(M / 2) - 1;
  const auto main = distances(spec, mid, {r.N, top});
  r.distance = main[0].upper;
  r.distance_sampled = main[0].sampled;
  r.distance_pass = r.distance <= eps;
  const double alias = main[1].upper;

  if (opts.check_envelope && r.budget.n1 > 0) {
    const std::int64_t last = std::min<std::int64_t>(2 * r.N, top);
    r.envelope_checked_up_to = last;
    // tail[j] = sum over k and over frequencies j <= |j'| <= top of |b|.
    std::vector<double> tail(static_cast<std::size_t>(top) + 2, 0.0);
    for (std::int64_t j = top; j >= 1; --j) {
      double s = 0;
      for (const auto& b : spec.b) s += std::abs(b[static_cast<std::size_t>(j)]) + std::abs(b[M - static_cast<std::size_t>(j)]);
      tail[static_cast<std::size_t>(j)] = tail[static_cast<std::size_t>(j) + 1] + s;
    }
    std::vector<std::int64_t> direct;
    for (std::int64_t N = 1; N <= last; ++N) {
      const double bound = alias + tail[static_cast<std::size_t>(N) + 1];
      if (bound > r.budget.envelope(N)) direct.push_back(N);
    }
    if (!direct.empty()) {
      for (const auto& d : distances(spec, mid, direct))
        if (d.upper > r.budget.envelope(d.N)) r.envelope_violations.push_back({d.N, d.upper, r.budget.envelope(d.N)});
    }
  }

  r.gamma1_pass = true;
  r.gamma_profile_pass = true;
  r.gamma1_min_re = std::numeric_limits<double>::infinity();
  r.gamma_rho_ratio = std::numeric_limits<double>::infinity();
  r.gamma_tau_excess = -std::numeric_limits<double>::infinity();
  if (opts.check_gamma && r.budget.n1 > 0) {
    const double s1 = r.budget.sigma1;
    const double lower_rho = r.budget.rho / (2.0 * kE);
    for (double s : {-s1, -0.5 * s1, 0.0, 0.5 * s1, s1}) {
      for (std::size_t i = 0; i < opts.gamma_samples; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(opts.gamma_samples);
        const TrigPoly1 g = slice_gamma(t, std::polar(std::exp(s), 2.0 * kPi * x));
        const double gl1 = l1_coeff_norm(g);
        const double min_re = min_re_certified(g, 1e-9 * gl1).lower;
        const double sup = sup_norm_certified(g, 1e-9 * gl1).upper;
        r.gamma1_min_re = std::min(r.gamma1_min_re, min_re);
        r.gamma1_sup = std::max(r.gamma1_sup, sup);
        if (min_re > 0) {
          const double rho = min_re / (2.0 * kE * gl1);
          const double tau = std::max(std::log(sup) + 0.5 * min_re, 0.5 * kPi + std::abs(std::log(0.5 * min_re)));
          r.gamma_rho_ratio = std::min(r.gamma_rho_ratio, rho / lower_rho);
          r.gamma_tau_excess = std::max(r.gamma_tau_excess, tau - (r.budget.tau + std::log(2.0)));
        } else {
          r.gamma_rho_ratio = 0;
        }
      }
    }
    const double slack = 1e-9 * r.budget.l1;
    r.gamma1_pass = r.gamma1_min_re >= 0.5 * r.budget.min_t - slack &&
                    r.gamma1_sup <= r.budget.sup_t + 0.5 * r.budget.min_t + slack;
    r.gamma_profile_pass = r.gamma_rho_ratio >= 1.0 && r.gamma_tau_excess <= 0.0;
  }
  return r;
}

}  // namespace latfac
