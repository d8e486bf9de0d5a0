#include "latfac/trigpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "latfac/error.hpp"
#include "latfac/fft.hpp"
#include "latfac/simd/kernels.hpp"

namespace latfac {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kChunk = 4096;

// e^{2 pi i j x} with the phase reduced mod 1 before scaling.
cplx unit(std::int64_t j, double x) {
  const long double phase = static_cast<long double>(j) * static_cast<long double>(x);
  const double frac = static_cast<double>(phase - std::floor(phase));
  return std::polar(1.0, kTwoPi * frac);
}

template <class Map>
void drop_zeros(Map& m) {
  std::erase_if(m, [](const auto& kv) { return std::abs(kv.second) < kCanonicalZero; });
}

// Dense layout of a sparse 1D coefficient map over min..max frequency.
struct DenseRow {
  std::int64_t lo = 0;
  std::vector<double> re;
  std::vector<double> im;
};

bool dense_enough(std::int64_t range, std::size_t nnz) {
  return range <= static_cast<std::int64_t>(8 * nnz + 64);
}

template <class It>
DenseRow make_dense(It first, It last, std::int64_t lo, std::int64_t hi) {
  DenseRow row;
  row.lo = lo;
  row.re.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
  row.im.assign(row.re.size(), 0.0);
  for (; first != last; ++first) {
    const auto idx = static_cast<std::size_t>(first->first - lo);
    row.re[idx] += first->second.real();
    row.im[idx] += first->second.imag();
  }
  return row;
}

// Evaluates sum_j c_j e(j x_i) into out_re/out_im for a chunk of points.
void eval_row_chunk(const std::vector<std::pair<std::int64_t, cplx>>& terms,
                    std::span<const double> xs, double* out_re, double* out_im) {
  const std::size_t n = xs.size();
  if (terms.empty()) {
    std::fill(out_re, out_re + n, 0.0);
    std::fill(out_im, out_im + n, 0.0);
    return;
  }
  const std::int64_t lo = terms.front().first;
  const std::int64_t hi = terms.back().first;
  if (dense_enough(hi - lo + 1, terms.size())) {
    const DenseRow row = make_dense(terms.begin(), terms.end(), lo, hi);
    std::vector<double> zr(n), zi(n), wr(n), wi(n);
    for (std::size_t i = 0; i < n; ++i) {
      const cplx z = unit(1, xs[i]);
      const cplx w = unit(lo, xs[i]);
      zr[i] = z.real();
      zi[i] = z.imag();
      wr[i] = w.real();
      wi[i] = w.imag();
    }
    simd::active().power_sum({row.re.data(), row.im.data()}, row.re.size(), {zr.data(), zi.data()},
                             {wr.data(), wi.data()}, {out_re, out_im}, n);
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    cplx acc = 0.0;
    for (const auto& [j, c] : terms) acc += c * unit(j, xs[i]);
    out_re[i] = acc.real();
    out_im[i] = acc.imag();
  }
}

}  // namespace

// ---------------------------------------------------------------- TrigPoly1

TrigPoly1::TrigPoly1(Map coeffs) : coeffs_(std::move(coeffs)) { canonicalize(); }

TrigPoly1::TrigPoly1(std::initializer_list<std::pair<const std::int64_t, cplx>> init)
    : coeffs_(init) {
  canonicalize();
}

TrigPoly1 TrigPoly1::constant(cplx c) { return TrigPoly1(Map{{0, c}}); }

TrigPoly1 TrigPoly1::monomial(std::int64_t j, cplx c) { return TrigPoly1(Map{{j, c}}); }

void TrigPoly1::canonicalize() { drop_zeros(coeffs_); }

cplx TrigPoly1::coeff(std::int64_t j) const {
  auto it = coeffs_.find(j);
  return it == coeffs_.end() ? cplx{} : it->second;
}

std::int64_t TrigPoly1::min_freq() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }
std::int64_t TrigPoly1::max_freq() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }
std::int64_t TrigPoly1::n_plus() const { return std::max<std::int64_t>(0, max_freq()); }
std::int64_t TrigPoly1::n_minus() const { return std::max<std::int64_t>(0, -min_freq()); }
std::int64_t TrigPoly1::degree() const { return std::max(n_plus(), n_minus()); }

cplx TrigPoly1::operator()(double x) const { return eval1(*this, x); }

TrigPoly1& TrigPoly1::operator+=(const TrigPoly1& other) {
  for (const auto& [j, c] : other.coeffs_) coeffs_[j] += c;
  canonicalize();
  return *this;
}

TrigPoly1& TrigPoly1::operator-=(const TrigPoly1& other) {
  for (const auto& [j, c] : other.coeffs_) coeffs_[j] -= c;
  canonicalize();
  return *this;
}

TrigPoly1& TrigPoly1::operator*=(cplx s) {
  for (auto& kv : coeffs_) kv.second *= s;
  canonicalize();
  return *this;
}

// ---------------------------------------------------------------- TrigPoly2

TrigPoly2::TrigPoly2(Map coeffs) : coeffs_(std::move(coeffs)) { canonicalize(); }

TrigPoly2::TrigPoly2(std::initializer_list<std::pair<const Freq2, cplx>> init) : coeffs_(init) {
  canonicalize();
}

TrigPoly2 TrigPoly2::constant(cplx c) { return TrigPoly2(Map{{Freq2{0, 0}, c}}); }

TrigPoly2 TrigPoly2::monomial(std::int64_t j, std::int64_t k, cplx c) {
  return TrigPoly2(Map{{Freq2{j, k}, c}});
}

void TrigPoly2::canonicalize() { drop_zeros(coeffs_); }

cplx TrigPoly2::coeff(std::int64_t j, std::int64_t k) const {
  auto it = coeffs_.find(Freq2{j, k});
  return it == coeffs_.end() ? cplx{} : it->second;
}

std::int64_t TrigPoly2::min_j() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first.j; }
std::int64_t TrigPoly2::max_j() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first.j; }

std::int64_t TrigPoly2::min_k() const {
  std::int64_t v = 0;
  bool first = true;
  for (const auto& kv : coeffs_) {
    v = first ? kv.first.k : std::min(v, kv.first.k);
    first = false;
  }
  return v;
}

std::int64_t TrigPoly2::max_k() const {
  std::int64_t v = 0;
  bool first = true;
  for (const auto& kv : coeffs_) {
    v = first ? kv.first.k : std::max(v, kv.first.k);
    first = false;
  }
  return v;
}

std::int64_t TrigPoly2::n1() const {
  return std::max<std::int64_t>({0, max_j(), -min_j()});
}

std::int64_t TrigPoly2::n2_plus() const { return std::max<std::int64_t>(0, max_k()); }
std::int64_t TrigPoly2::n2_minus() const { return std::max<std::int64_t>(0, -min_k()); }
std::int64_t TrigPoly2::n2() const { return std::max(n2_plus(), n2_minus()); }

cplx TrigPoly2::operator()(double x, double y) const { return eval2(*this, x, y); }

TrigPoly2& TrigPoly2::operator+=(const TrigPoly2& other) {
  for (const auto& [f, c] : other.coeffs_) coeffs_[f] += c;
  canonicalize();
  return *this;
}

TrigPoly2& TrigPoly2::operator-=(const TrigPoly2& other) {
  for (const auto& [f, c] : other.coeffs_) coeffs_[f] -= c;
  canonicalize();
  return *this;
}

TrigPoly2& TrigPoly2::operator*=(cplx s) {
  for (auto& kv : coeffs_) kv.second *= s;
  canonicalize();
  return *this;
}

// ---------------------------------------------------------------- evaluation

cplx eval1(const TrigPoly1& t, double x) {
  cplx acc = 0.0;
  for (const auto& [j, c] : t.coeffs()) acc += c * unit(j, x);
  return acc;
}

cplx eval2(const TrigPoly2& t, double x, double y) {
  cplx acc = 0.0;
  for (const auto& [f, c] : t.coeffs()) acc += c * unit(f.j, x) * unit(f.k, y);
  return acc;
}

std::vector<cplx> eval_many(const TrigPoly1& t, std::span<const double> xs) {
  std::vector<cplx> out(xs.size());
  const std::vector<std::pair<std::int64_t, cplx>> terms(t.coeffs().begin(), t.coeffs().end());
  std::vector<double> re(kChunk), im(kChunk);
  for (std::size_t start = 0; start < xs.size(); start += kChunk) {
    const std::size_t n = std::min(kChunk, xs.size() - start);
    eval_row_chunk(terms, xs.subspan(start, n), re.data(), im.data());
    for (std::size_t i = 0; i < n; ++i) out[start + i] = {re[i], im[i]};
  }
  return out;
}

std::vector<cplx> eval_many(const TrigPoly2& t, std::span<const double> xs,
                            std::span<const double> ys) {
  if (xs.size() != ys.size()) throw Error(ErrorCode::InvalidInput, "eval_many: size mismatch");
  std::vector<cplx> out(xs.size());
  if (t.is_zero()) return out;

  // Group coefficients into rows of constant k.
  std::map<std::int64_t, std::vector<std::pair<std::int64_t, cplx>>> rows;
  for (const auto& [f, c] : t.coeffs()) rows[f.k].emplace_back(f.j, c);
  const std::int64_t klo = rows.begin()->first;
  const std::int64_t khi = rows.rbegin()->first;
  const bool dense_k = dense_enough(khi - klo + 1, rows.size());

  std::vector<double> re(kChunk), im(kChunk);
  for (std::size_t start = 0; start < xs.size(); start += kChunk) {
    const std::size_t n = std::min(kChunk, xs.size() - start);
    const auto xc = xs.subspan(start, n);
    const auto yc = ys.subspan(start, n);
    if (dense_k) {
      const auto nrows = static_cast<std::size_t>(khi - klo + 1);
      std::vector<double> rre(nrows * n, 0.0), rim(nrows * n, 0.0);
      for (const auto& [k, terms] : rows) {
        const auto r = static_cast<std::size_t>(k - klo);
        eval_row_chunk(terms, xc, rre.data() + r * n, rim.data() + r * n);
      }
      std::vector<double> zr(n), zi(n), wr(n), wi(n);
      for (std::size_t i = 0; i < n; ++i) {
        const cplx z = unit(1, yc[i]);
        const cplx w = unit(klo, yc[i]);
        zr[i] = z.real();
        zi[i] = z.imag();
        wr[i] = w.real();
        wi[i] = w.imag();
      }
      simd::active().power_sum_rows({rre.data(), rim.data()}, nrows, {zr.data(), zi.data()},
                                    {wr.data(), wi.data()}, {re.data(), im.data()}, n);
      for (std::size_t i = 0; i < n; ++i) out[start + i] = {re[i], im[i]};
    } else {
      for (const auto& [k, terms] : rows) {
        eval_row_chunk(terms, xc, re.data(), im.data());
        for (std::size_t i = 0; i < n; ++i) out[start + i] += cplx{re[i], im[i]} * unit(k, yc[i]);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- algebra

TrigPoly1 mul(const TrigPoly1& a, const TrigPoly1& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const std::int64_t lo = a.min_freq() + b.min_freq();
  const std::int64_t hi = a.max_freq() + b.max_freq();
  if (dense_enough(hi - lo + 1, a.size() * b.size())) {
    std::vector<cplx> acc(static_cast<std::size_t>(hi - lo + 1));
    for (const auto& [ja, ca] : a.coeffs())
      for (const auto& [jb, cb] : b.coeffs()) acc[static_cast<std::size_t>(ja + jb - lo)] += ca * cb;
    TrigPoly1::Map m;
    for (std::size_t i = 0; i < acc.size(); ++i)
      if (acc[i] != cplx{}) m.emplace_hint(m.end(), lo + static_cast<std::int64_t>(i), acc[i]);
    return TrigPoly1(std::move(m));
  }
  TrigPoly1::Map m;
  for (const auto& [ja, ca] : a.coeffs())
    for (const auto& [jb, cb] : b.coeffs()) m[ja + jb] += ca * cb;
  return TrigPoly1(std::move(m));
}

TrigPoly2 mul(const TrigPoly2& a, const TrigPoly2& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const std::int64_t jlo = a.min_j() + b.min_j();
  const std::int64_t jhi = a.max_j() + b.max_j();
  const std::int64_t klo = a.min_k() + b.min_k();
  const std::int64_t khi = a.max_k() + b.max_k();
  const std::int64_t nj = jhi - jlo + 1;
  const std::int64_t nk = khi - klo + 1;
  if (nj * nk <= (std::int64_t{1} << 25)) {
    std::vector<cplx> acc(static_cast<std::size_t>(nj * nk));
    for (const auto& [fa, ca] : a.coeffs())
      for (const auto& [fb, cb] : b.coeffs())
        acc[static_cast<std::size_t>((fa.j + fb.j - jlo) * nk + (fa.k + fb.k - klo))] += ca * cb;
    TrigPoly2::Map m;
    for (std::int64_t r = 0; r < nj; ++r)
      for (std::int64_t s = 0; s < nk; ++s) {
        const cplx c = acc[static_cast<std::size_t>(r * nk + s)];
        if (c != cplx{}) m.emplace_hint(m.end(), Freq2{jlo + r, klo + s}, c);
      }
    return TrigPoly2(std::move(m));
  }
  TrigPoly2::Map m;
  for (const auto& [fa, ca] : a.coeffs())
    for (const auto& [fb, cb] : b.coeffs()) m[Freq2{fa.j + fb.j, fa.k + fb.k}] += ca * cb;
  return TrigPoly2(std::move(m));
}

TrigPoly1 conj(const TrigPoly1& t) {
  TrigPoly1::Map m;
  for (const auto& [j, c] : t.coeffs()) m.emplace(-j, std::conj(c));
  return TrigPoly1(std::move(m));
}

TrigPoly2 conj(const TrigPoly2& t) {
  TrigPoly2::Map m;
  for (const auto& [f, c] : t.coeffs()) m.emplace(Freq2{-f.j, -f.k}, std::conj(c));
  return TrigPoly2(std::move(m));
}

TrigPoly1 real_part(const TrigPoly1& t) { return (t + conj(t)) * cplx{0.5, 0.0}; }
TrigPoly1 imag_part(const TrigPoly1& t) { return (t - conj(t)) * cplx{0.0, -0.5}; }
TrigPoly2 real_part(const TrigPoly2& t) { return (t + conj(t)) * cplx{0.5, 0.0}; }
TrigPoly2 imag_part(const TrigPoly2& t) { return (t - conj(t)) * cplx{0.0, -0.5}; }

TrigPoly1 mod_squared(const TrigPoly1& t) { return mul(t, conj(t)); }
TrigPoly2 mod_squared(const TrigPoly2& t) { return mul(t, conj(t)); }

double l1_coeff_norm(const TrigPoly1& t) {
  double s = 0.0;
  for (const auto& kv : t.coeffs()) s += std::abs(kv.second);
  return s;
}

double l1_coeff_norm(const TrigPoly2& t) {
  double s = 0.0;
  for (const auto& kv : t.coeffs()) s += std::abs(kv.second);
  return s;
}

bool is_real_valued(const TrigPoly1& t, double rel_tol) {
  return l1_coeff_norm(t - conj(t)) <= rel_tol * l1_coeff_norm(t);
}

bool is_real_valued(const TrigPoly2& t, double rel_tol) {
  return l1_coeff_norm(t - conj(t)) <= rel_tol * l1_coeff_norm(t);
}

TrigPoly1 shift(const TrigPoly1& t, std::int64_t s) {
  TrigPoly1::Map m;
  for (const auto& [j, c] : t.coeffs()) m.emplace_hint(m.end(), j + s, c);
  return TrigPoly1(std::move(m));
}

TrigPoly2 shift(const TrigPoly2& t, std::int64_t dj, std::int64_t dk) {
  TrigPoly2::Map m;
  for (const auto& [f, c] : t.coeffs()) m.emplace_hint(m.end(), Freq2{f.j + dj, f.k + dk}, c);
  return TrigPoly2(std::move(m));
}

TrigPoly2 swap_variables(const TrigPoly2& t) {
  TrigPoly2::Map m;
  for (const auto& [f, c] : t.coeffs()) m.emplace(Freq2{f.k, f.j}, c);
  return TrigPoly2(std::move(m));
}

// ---------------------------------------------------------------- sampling

SampledCircleFn to_samples(const TrigPoly1& t, std::size_t M) {
  if (!fft::is_power_of_two(M))
    throw Error(ErrorCode::InvalidInput, "to_samples: grid size must be a power of two");
  std::vector<cplx> spectrum(M);
  const auto m = static_cast<std::int64_t>(M);
  for (const auto& [j, c] : t.coeffs()) spectrum[static_cast<std::size_t>(((j % m) + m) % m)] += c;
  return SampledCircleFn{fft::backward(spectrum)};
}

TrigPoly1 from_samples(const SampledCircleFn& s, FreqWindow window) {
  const std::size_t M = s.size();
  if (!fft::is_power_of_two(M))
    throw Error(ErrorCode::InvalidInput, "from_samples: grid size must be a power of two");
  if (window.hi < window.lo) throw Error(ErrorCode::InvalidInput, "from_samples: empty window");
  if (window.size() > M)
    throw Error(ErrorCode::WindowAliasing,
                "window of " + std::to_string(window.size()) + " frequencies exceeds grid of " +
                    std::to_string(M));
  const std::vector<cplx> spectrum = fft::forward(s.values);
  const auto m = static_cast<std::int64_t>(M);
  const double scale = 1.0 / static_cast<double>(M);
  TrigPoly1::Map out;
  for (std::int64_t j = window.lo; j <= window.hi; ++j)
    out.emplace_hint(out.end(), j, spectrum[static_cast<std::size_t>(((j % m) + m) % m)] * scale);
  return TrigPoly1(std::move(out));
}

TrigPoly1 slice_gamma(const TrigPoly2& t, cplx z) {
  if (z == cplx{}) throw Error(ErrorCode::InvalidInput, "slice_gamma: z must be nonzero");
  const double r = std::abs(z);
  const double theta = std::arg(z);
  TrigPoly1::Map m;
  for (const auto& [f, c] : t.coeffs()) {
    const double jd = static_cast<double>(f.j);
    m[f.k] += c * std::polar(std::pow(r, jd), theta * jd);
  }
  return TrigPoly1(std::move(m));
}

TrigPoly1 slice_at(const TrigPoly2& t, double x) {
  TrigPoly1::Map m;
  for (const auto& [f, c] : t.coeffs()) m[f.k] += c * unit(f.j, x);
  return TrigPoly1(std::move(m));
}

}  // namespace latfac
