#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace latfac {

using cplx = std::complex<double>;

// Coefficients with magnitude below this are not stored.
inline constexpr double kCanonicalZero = 1e-300;

// A certified enclosure lower <= value <= upper.
struct Bracket {
  double lower = 0.0;
  double upper = 0.0;

  double width() const { return upper - lower; }
  double mid() const { return 0.5 * (lower + upper); }
  bool contains(double v, double slack = 0.0) const {
    return v >= lower - slack && v <= upper + slack;
  }
};

// Trigonometric polynomial of one variable, sum_j c_j e^{2 pi i j x}.
class TrigPoly1 {
 public:
  using Map = std::map<std::int64_t, cplx>;

  TrigPoly1() = default;
  explicit TrigPoly1(Map coeffs);
  TrigPoly1(std::initializer_list<std::pair<const std::int64_t, cplx>> init);

  static TrigPoly1 constant(cplx c);
  static TrigPoly1 monomial(std::int64_t j, cplx c = 1.0);

  const Map& coeffs() const noexcept { return coeffs_; }
  cplx coeff(std::int64_t j) const;
  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::size_t size() const noexcept { return coeffs_.size(); }

  // Extreme stored frequencies; 0 for the zero polynomial.
  std::int64_t min_freq() const;
  std::int64_t max_freq() const;
  // n+(t) = max({0} u freq(t)), n-(t) = max({0} u -freq(t)), n(t) = max(n+, n-).
  std::int64_t n_plus() const;
  std::int64_t n_minus() const;
  std::int64_t degree() const;

  cplx operator()(double x) const;

  TrigPoly1& operator+=(const TrigPoly1& other);
  TrigPoly1& operator-=(const TrigPoly1& other);
  TrigPoly1& operator*=(cplx s);

  friend TrigPoly1 operator+(TrigPoly1 a, const TrigPoly1& b) { return a += b; }
  friend TrigPoly1 operator-(TrigPoly1 a, const TrigPoly1& b) { return a -= b; }
  friend TrigPoly1 operator*(TrigPoly1 a, cplx s) { return a *= s; }
  friend TrigPoly1 operator*(cplx s, TrigPoly1 a) { return a *= s; }
  friend bool operator==(const TrigPoly1&, const TrigPoly1&) = default;

 private:
  void canonicalize();
  Map coeffs_;
};

struct Freq2 {
  std::int64_t j = 0;
  std::int64_t k = 0;
  friend auto operator<=>(const Freq2&, const Freq2&) = default;
};

// Trigonometric polynomial of two variables, sum c_{j,k} e^{2 pi i (j x + k y)}.
class TrigPoly2 {
 public:
  using Map = std::map<Freq2, cplx>;

  TrigPoly2() = default;
  explicit TrigPoly2(Map coeffs);
  TrigPoly2(std::initializer_list<std::pair<const Freq2, cplx>> init);

  static TrigPoly2 constant(cplx c);
  static TrigPoly2 monomial(std::int64_t j, std::int64_t k, cplx c = 1.0);

  const Map& coeffs() const noexcept { return coeffs_; }
  cplx coeff(std::int64_t j, std::int64_t k) const;
  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::size_t size() const noexcept { return coeffs_.size(); }

  std::int64_t min_j() const;
  std::int64_t max_j() const;
  std::int64_t min_k() const;
  std::int64_t max_k() const;
  // n(t) of t viewed as a polynomial in x (n1) or in y (n2).
  std::int64_t n1() const;
  std::int64_t n2() const;
  std::int64_t n2_plus() const;
  std::int64_t n2_minus() const;

  cplx operator()(double x, double y) const;

  TrigPoly2& operator+=(const TrigPoly2& other);
  TrigPoly2& operator-=(const TrigPoly2& other);
  TrigPoly2& operator*=(cplx s);

  friend TrigPoly2 operator+(TrigPoly2 a, const TrigPoly2& b) { return a += b; }
  friend TrigPoly2 operator-(TrigPoly2 a, const TrigPoly2& b) { return a -= b; }
  friend TrigPoly2 operator*(TrigPoly2 a, cplx s) { return a *= s; }
  friend TrigPoly2 operator*(cplx s, TrigPoly2 a) { return a *= s; }
  friend bool operator==(const TrigPoly2&, const TrigPoly2&) = default;

 private:
  void canonicalize();
  Map coeffs_;
};

cplx eval1(const TrigPoly1& t, double x);
cplx eval2(const TrigPoly2& t, double x, double y);

// Batched evaluation through the active SIMD kernels.
std::vector<cplx> eval_many(const TrigPoly1& t, std::span<const double> xs);
std::vector<cplx> eval_many(const TrigPoly2& t, std::span<const double> xs,
                            std::span<const double> ys);

TrigPoly1 mul(const TrigPoly1& a, const TrigPoly1& b);
TrigPoly2 mul(const TrigPoly2& a, const TrigPoly2& b);
inline TrigPoly1 operator*(const TrigPoly1& a, const TrigPoly1& b) { return mul(a, b); }
inline TrigPoly2 operator*(const TrigPoly2& a, const TrigPoly2& b) { return mul(a, b); }

// Pointwise complex conjugate: coefficient at -j becomes conj(c_j).
TrigPoly1 conj(const TrigPoly1& t);
TrigPoly2 conj(const TrigPoly2& t);

// Pointwise real and imaginary parts, as (real-valued) trigonometric polynomials.
TrigPoly1 real_part(const TrigPoly1& t);
TrigPoly1 imag_part(const TrigPoly1& t);
TrigPoly2 real_part(const TrigPoly2& t);
TrigPoly2 imag_part(const TrigPoly2& t);

TrigPoly1 mod_squared(const TrigPoly1& t);
TrigPoly2 mod_squared(const TrigPoly2& t);

double l1_coeff_norm(const TrigPoly1& t);
double l1_coeff_norm(const TrigPoly2& t);

// True when c_{-j} = conj(c_j) to rel_tol * ||c||_1, i.e. t is real-valued.
bool is_real_valued(const TrigPoly1& t, double rel_tol = 1e-13);
bool is_real_valued(const TrigPoly2& t, double rel_tol = 1e-13);

// Multiply by the monomial e_shift (1D) or e_{dj,dk} (2D).
TrigPoly1 shift(const TrigPoly1& t, std::int64_t shift);
TrigPoly2 shift(const TrigPoly2& t, std::int64_t dj, std::int64_t dk);

// Swap the roles of x and y: frequencies (j,k) -> (k,j).
TrigPoly2 swap_variables(const TrigPoly2& t);

// Samples of a circle function at x = m/M, M a power of two.
struct SampledCircleFn {
  std::vector<cplx> values;
  std::size_t size() const noexcept { return values.size(); }
};

// Inclusive frequency window lo..hi.
struct FreqWindow {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::size_t size() const { return static_cast<std::size_t>(hi - lo + 1); }
  static FreqWindow of(const TrigPoly1& t) { return {t.min_freq(), t.max_freq()}; }
};

SampledCircleFn to_samples(const TrigPoly1& t, std::size_t M);

// Discrete Fourier coefficients of the samples on the window. Throws
// WindowAliasing when the window does not fit in the grid.
TrigPoly1 from_samples(const SampledCircleFn& s, FreqWindow window);

// Gamma_z e_{j,k} = z^j e_k. Throws InvalidInput for z = 0.
TrigPoly1 slice_gamma(const TrigPoly2& t, cplx z);
// The slice y -> t(x, y); equals slice_gamma(t, e^{2 pi i x}) with the phase
// of each e^{2 pi i j x} reduced exactly.
TrigPoly1 slice_at(const TrigPoly2& t, double x);

// Certified enclosures of ||t||_inf and of min Re t, with upper - lower <= tol.
// Grid sampling plus a second-order Taylor bound on each cell; cells whose
// bound cannot beat the best sample by more than tol are discarded and the
// rest are halved.
Bracket sup_norm_certified(const TrigPoly1& t, double tol);
Bracket sup_norm_certified(const TrigPoly2& t, double tol);
Bracket min_re_certified(const TrigPoly1& t, double tol);
Bracket min_re_certified(const TrigPoly2& t, double tol);
Bracket max_re_certified(const TrigPoly1& t, double tol);
Bracket max_re_certified(const TrigPoly2& t, double tol);

}  // namespace latfac
