// Certified extrema of trigonometric polynomials on the torus.
//
// The objective g is either Re t, -Re t or |t|^2. For a cell with center c
// and half-widths (hx, hy), Taylor's theorem gives
//   g <= g(c) + |g_x| hx + |g_y| hy + (Hxx hx^2 + 2 Hxy hx hy + Hyy hy^2) / 2
// where H** bound the second derivatives over the whole torus. Those bounds
// come from the coefficient moments A = sum |c|, A_x = 2 pi sum |j||c|, ...

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "latfac/error.hpp"
#include "latfac/trigpoly.hpp"

namespace latfac {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::size_t kMaxActiveCells = std::size_t{1} << 22;

enum class Objective { RealPart, NegRealPart, ModSquared };

struct Cell {
  double cx, cy, hx, hy;
};

struct Moments {
  double a0 = 0, ax = 0, ay = 0, axx = 0, axy = 0, ayy = 0;
  double range = 0;
};

Moments moments(const TrigPoly2& t) {
  Moments m;
  for (const auto& [f, c] : t.coeffs()) {
    const double a = std::abs(c);
    const double j = std::abs(static_cast<double>(f.j));
    const double k = std::abs(static_cast<double>(f.k));
    m.a0 += a;
    m.ax += kTwoPi * j * a;
    m.ay += kTwoPi * k * a;
    m.axx += kTwoPi * kTwoPi * j * j * a;
    m.axy += kTwoPi * kTwoPi * j * k * a;
    m.ayy += kTwoPi * kTwoPi * k * k * a;
  }
  m.range = static_cast<double>((t.max_j() - t.min_j()) + (t.max_k() - t.min_k()) + 2);
  return m;
}

TrigPoly2 derivative(const TrigPoly2& t, bool in_x) {
  TrigPoly2::Map m;
  for (const auto& [f, c] : t.coeffs())
    m.emplace(f, c * cplx{0.0, kTwoPi * static_cast<double>(in_x ? f.j : f.k)});
  return TrigPoly2(std::move(m));
}

class Maximizer {
 public:
  Maximizer(const TrigPoly2& t, Objective obj, bool two_dim)
      : t_(t), tx_(derivative(t, true)), ty_(derivative(t, false)), obj_(obj), two_dim_(two_dim) {
    const Moments m = moments(t);
    const double err_t = 16.0 * kEps * (m.range + 4.0) * m.a0;
    const double err_x = 16.0 * kEps * (m.range + 4.0) * m.ax;
    const double err_y = 16.0 * kEps * (m.range + 4.0) * m.ay;
    if (obj == Objective::ModSquared) {
      hxx_ = 2.0 * (m.a0 * m.axx + m.ax * m.ax);
      hxy_ = 2.0 * (m.a0 * m.axy + m.ax * m.ay);
      hyy_ = 2.0 * (m.a0 * m.ayy + m.ay * m.ay);
      slack_ = 2.0 * m.a0 * err_t + err_t * err_t;
      grad_slack_x_ = 2.0 * (m.a0 * err_x + m.ax * err_t);
      grad_slack_y_ = 2.0 * (m.a0 * err_y + m.ay * err_t);
    } else {
      hxx_ = m.axx;
      hxy_ = m.axy;
      hyy_ = m.ayy;
      slack_ = err_t;
      grad_slack_x_ = err_x;
      grad_slack_y_ = err_y;
    }
  }

  double slack() const { return slack_; }

  // Values of the objective at the given points.
  std::vector<double> values(std::span<const double> xs, std::span<const double> ys) const {
    const auto v = eval_many(t_, xs, ys);
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = objective(v[i]);
    return out;
  }

  Bracket run(std::size_t nx, std::size_t ny, double tol) const {
    tol = std::max(tol, 4.0 * slack_);
    std::vector<Cell> active;
    active.reserve(nx * ny);
    const double hx = 0.5 / static_cast<double>(nx);
    const double hy = two_dim_ ? 0.5 / static_cast<double>(ny) : 0.0;
    for (std::size_t a = 0; a < nx; ++a)
      for (std::size_t b = 0; b < (two_dim_ ? ny : 1); ++b)
        active.push_back({(2.0 * static_cast<double>(a) + 1.0) * hx,
                          two_dim_ ? (2.0 * static_cast<double>(b) + 1.0) * hy : 0.0, hx, hy});

    double lower = -std::numeric_limits<double>::infinity();
    double discarded = -std::numeric_limits<double>::infinity();
    std::vector<double> xs, ys;
    while (!active.empty()) {
      if (active.size() > kMaxActiveCells)
        throw Error(ErrorCode::NoConvergence, "certified extremum: cell budget exhausted");
      xs.resize(active.size());
      ys.resize(active.size());
      for (std::size_t i = 0; i < active.size(); ++i) {
        xs[i] = active[i].cx;
        ys[i] = active[i].cy;
      }
      const auto v = eval_many(t_, xs, ys);
      const auto vx = eval_many(tx_, xs, ys);
      const auto vy = two_dim_ ? eval_many(ty_, xs, ys) : std::vector<cplx>(active.size());
      std::vector<double> g(active.size()), bound(active.size());
      for (std::size_t i = 0; i < active.size(); ++i) {
        const Cell& c = active[i];
        g[i] = objective(v[i]);
        lower = std::max(lower, g[i] - slack_);
        const double gx = std::abs(gradient(v[i], vx[i])) + grad_slack_x_;
        const double gy = std::abs(gradient(v[i], vy[i])) + grad_slack_y_;
        bound[i] = g[i] + slack_ + gx * c.hx + gy * c.hy +
                   0.5 * (hxx_ * c.hx * c.hx + 2.0 * hxy_ * c.hx * c.hy + hyy_ * c.hy * c.hy);
      }
      std::vector<Cell> next;
      for (std::size_t i = 0; i < active.size(); ++i) {
        if (bound[i] <= lower + tol) {
          discarded = std::max(discarded, bound[i]);
          continue;
        }
        const Cell& c = active[i];
        const double qx = 0.5 * c.hx;
        if (two_dim_) {
          const double qy = 0.5 * c.hy;
          next.push_back({c.cx - qx, c.cy - qy, qx, qy});
          next.push_back({c.cx + qx, c.cy - qy, qx, qy});
          next.push_back({c.cx - qx, c.cy + qy, qx, qy});
          next.push_back({c.cx + qx, c.cy + qy, qx, qy});
        } else {
          next.push_back({c.cx - qx, 0.0, qx, 0.0});
          next.push_back({c.cx + qx, 0.0, qx, 0.0});
        }
      }
      active = std::move(next);
    }
    return Bracket{lower, std::max(lower, discarded)};
  }

 private:
  double objective(cplx v) const {
    switch (obj_) {
      case Objective::RealPart: return v.real();
      case Objective::NegRealPart: return -v.real();
      case Objective::ModSquared: return std::norm(v);
    }
    return 0.0;
  }

  double gradient(cplx v, cplx dv) const {
    switch (obj_) {
      case Objective::RealPart: return dv.real();
      case Objective::NegRealPart: return -dv.real();
      case Objective::ModSquared: return 2.0 * (std::conj(v) * dv).real();
    }
    return 0.0;
  }

  const TrigPoly2& t_;
  TrigPoly2 tx_;
  TrigPoly2 ty_;
  Objective obj_;
  bool two_dim_;
  double hxx_ = 0, hxy_ = 0, hyy_ = 0;
  double slack_ = 0, grad_slack_x_ = 0, grad_slack_y_ = 0;
};

TrigPoly2 embed(const TrigPoly1& t) {
  TrigPoly2::Map m;
  for (const auto& [j, c] : t.coeffs()) m.emplace(Freq2{j, 0}, c);
  return TrigPoly2(std::move(m));
}

std::size_t initial_cells(std::int64_t n) { return 4 * static_cast<std::size_t>(n + 1); }

Bracket sup_norm_impl(const TrigPoly2& t, bool two_dim, double tol) {
  if (!(tol > 0)) throw Error(ErrorCode::InvalidInput, "sup_norm_certified: tol must be positive");
  if (t.is_zero()) return {0.0, 0.0};
  const std::size_t nx = initial_cells(t.n1());
  const std::size_t ny = two_dim ? initial_cells(t.n2()) : 1;
  const Maximizer opt(t, Objective::ModSquared, two_dim);

  // The initial grid is nonzero somewhere (it has more than 2n points per
  // axis), which fixes the scale for converting a bracket on |t|^2.
  std::vector<double> xs, ys;
  for (std::size_t a = 0; a < nx; ++a)
    for (std::size_t b = 0; b < ny; ++b) {
      xs.push_back((static_cast<double>(a) + 0.5) / static_cast<double>(nx));
      ys.push_back(two_dim ? (static_cast<double>(b) + 0.5) / static_cast<double>(ny) : 0.0);
    }
  const auto v = opt.values(xs, ys);
  const double sample_max = std::sqrt(*std::max_element(v.begin(), v.end()));
  const double tol_sq = std::max(2.0 * tol * sample_max * 0.999, 1e-300);
  const Bracket sq = opt.run(nx, ny, tol_sq);
  return {std::sqrt(std::max(0.0, sq.lower)), std::sqrt(std::max(0.0, sq.upper))};
}

Bracket max_re_impl(const TrigPoly2& t, bool two_dim, double tol, bool negate) {
  if (!(tol > 0)) throw Error(ErrorCode::InvalidInput, "certified extremum: tol must be positive");
  if (t.is_zero()) return {0.0, 0.0};
  const std::size_t nx = initial_cells(t.n1());
  const std::size_t ny = two_dim ? initial_cells(t.n2()) : 1;
  const Maximizer opt(t, negate ? Objective::NegRealPart : Objective::RealPart, two_dim);
  const Bracket b = opt.run(nx, ny, tol);
  return negate ? Bracket{-b.upper, -b.lower} : b;
}

}  // namespace

Bracket sup_norm_certified(const TrigPoly1& t, double tol) { return sup_norm_impl(embed(t), false, tol); }
Bracket sup_norm_certified(const TrigPoly2& t, double tol) { return sup_norm_impl(t, true, tol); }

Bracket min_re_certified(const TrigPoly1& t, double tol) {
  return max_re_impl(embed(t), false, tol, true);
}
Bracket min_re_certified(const TrigPoly2& t, double tol) { return max_re_impl(t, true, tol, true); }

Bracket max_re_certified(const TrigPoly1& t, double tol) {
  return max_re_impl(embed(t), false, tol, false);
}
Bracket max_re_certified(const TrigPoly2& t, double tol) { return max_re_impl(t, true, tol, false); }

}  // namespace latfac
