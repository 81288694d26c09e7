#include "lamb/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace lamb {

namespace {

constexpr cplx I1{0.0, 1.0};
constexpr double pi = std::numbers::pi;

// Entire functions of s = sigma²: cosh(sigma x), sigma sinh(sigma x),
// sinh(sigma x) / sigma.
struct Hyper {
  cplx ch, ssh, shd;
};

Hyper hyper(cplx s, double x) {
  const cplx sig = std::sqrt(s);
  Hyper r;
  r.ch = std::cosh(sig * x);
  r.ssh = sig * std::sinh(sig * x);
  const cplx z = sig * x;
  if (std::abs(z) < 1e-4) {
    const cplx z2 = z * z;
    r.shd = x * (1.0 + z2 / 6.0 + z2 * z2 / 120.0);
  } else {
    r.shd = std::sinh(z) / sig;
  }
  return r;
}

// Displacement and traction of one fundamental solution at x.
struct State {
  cplx v1, v3, t1, t3;
};

enum Basis { Lc = 0, Ls = 1, Sc = 2, Ss = 3 };

std::array<State, 4> basis_at(const Material& m, cplx beta, double x) {
  const double cl2 = (m.lambda + 2.0 * m.mu) / m.rho;
  const double ct2 = m.mu / m.rho;
  const double w2 = m.omega * m.omega;
  const cplx p2 = beta * beta - w2 / cl2;
  const cplx q2 = beta * beta - w2 / ct2;
  const Hyper hp = hyper(p2, x);
  const Hyper hq = hyper(q2, x);
  const cplx ib = I1 * beta;

  struct Raw {
    cplx v1, v3, d1, d3;
  };
  const std::array<Raw, 4> raw{{
      {hp.ssh, ib * hp.ch, p2 * hp.ch, ib * hp.ssh},
      {hp.ch, ib * hp.shd, hp.ssh, ib * hp.ch},
      {ib * hq.ch, -hq.ssh, ib * hq.ssh, -q2 * hq.ch},
      {ib * hq.shd, -hq.ch, ib * hq.ch, -hq.ssh},
  }};
  std::array<State, 4> out;
  for (int k = 0; k < 4; ++k) {
    const Raw& r = raw[k];
    out[k].v1 = r.v1;
    out[k].v3 = r.v3;
    out[k].t1 = (m.lambda + 2.0 * m.mu) * r.d1 + ib * m.lambda * r.v3;
    out[k].t3 = m.mu * (r.d3 + ib * r.v1);
  }
  return out;
}

double log_scale(const Material& m, cplx beta) {
  const double w2 = m.omega * m.omega;
  const cplx p = std::sqrt(beta * beta - w2 * m.rho / (m.lambda + 2.0 * m.mu));
  const cplx q = std::sqrt(beta * beta - w2 * m.rho / m.mu);
  return (std::abs(p.real()) + std::abs(q.real())) * m.h;
}

double box_scale(const SearchBox& b) {
  return std::max({1.0, std::abs(b.re_min), std::abs(b.re_max), std::abs(b.im_min),
                   std::abs(b.im_max)});
}

bool inside(const SearchBox& b, cplx z, double pad = 0.0) {
  return z.real() >= b.re_min - pad && z.real() <= b.re_max + pad &&
         z.imag() >= b.im_min - pad && z.imag() <= b.im_max + pad;
}

struct ContourHit : std::runtime_error {
  ContourHit() : std::runtime_error("contour passes through a root") {}
};

// Accumulated argument change of f along the segment a -> b.
double arg_change(const DispersionFunction& f, cplx a, cplx b, cplx fa, cplx fb,
                  int depth) {
  if (std::abs(fa) == 0.0 || std::abs(fb) == 0.0) throw ContourHit();
  const double d = std::arg(fb / fa);
  const double mag = std::abs(std::log(std::abs(fb) / std::abs(fa)));
  if (std::abs(d) < pi / 6.0 && mag < 1.0) return d;
  if (depth > 40 || std::abs(b - a) < 1e-13 * std::max(1.0, std::abs(a)))
    throw ContourHit();
  const cplx c = 0.5 * (a + b);
  const cplx fc = f.scaled(c);
  return arg_change(f, a, c, fa, fc, depth + 1) + arg_change(f, c, b, fc, fb, depth + 1);
}

int winding(const DispersionFunction& f, const SearchBox& b, int per_edge = 32) {
  const std::array<cplx, 5> corners{cplx(b.re_min, b.im_min), cplx(b.re_max, b.im_min),
                                    cplx(b.re_max, b.im_max), cplx(b.re_min, b.im_max),
                                    cplx(b.re_min, b.im_min)};
  double total = 0.0;
  for (int e = 0; e < 4; ++e) {
    cplx za = corners[e];
    cplx fa = f.scaled(za);
    for (int k = 1; k <= per_edge; ++k) {
      const cplx zb = corners[e] + (corners[e + 1] - corners[e]) * (double(k) / per_edge);
      const cplx fb = f.scaled(zb);
      total += arg_change(f, za, zb, fa, fb, 0);
      za = zb;
      fa = fb;
    }
  }
  const double turns = total / (2.0 * pi);
  const long r = std::lround(turns);
  if (std::abs(turns - r) > 0.1) throw ContourHit();
  return static_cast<int>(r);
}

void subdivide(const DispersionFunction& f, const SearchBox& b, int count,
               std::vector<cplx>& out, int max_roots, int depth) {
  if (count <= 0) return;
  if (static_cast<int>(out.size()) + count > max_roots)
    throw std::runtime_error("rayleigh_lamb_roots: more than max_roots zeros");
  const double wr = b.re_max - b.re_min;
  const double wi = b.im_max - b.im_min;
  const double scale = box_scale(b);
  const cplx centre(0.5 * (b.re_min + b.re_max), 0.5 * (b.im_min + b.im_max));

  if (count == 1 && std::max(wr, wi) <= 0.25 * scale) {
    const cplx r = newton_polish(f, centre);
    if (inside(b, r, 1e-12 * scale)) {
      out.push_back(r);
      return;
    }
  }
  if (std::max(wr, wi) < 1e-9 * scale || depth > 80) {
    // multiple zero (or unresolvable cluster)
    const cplx r = newton_polish(f, centre);
    for (int k = 0; k < count; ++k) out.push_back(inside(b, r, 0.5 * std::max(wr, wi)) ? r : centre);
    return;
  }

  // off-centre splits so that the symmetry axes never carry an edge
  static constexpr std::array<double, 4> fracs{0.5 + 0.0123, 0.5 - 0.0371, 0.5 + 0.0619, 0.5 - 0.0853};
  for (double fr : fracs) {
    try {
      std::vector<SearchBox> kids;
      if (wr >= wi) {
        const double s = b.re_min + fr * wr;
        kids = {{b.re_min, s, b.im_min, b.im_max}, {s, b.re_max, b.im_min, b.im_max}};
      } else {
        const double s = b.im_min + fr * wi;
        kids = {{b.re_min, b.re_max, b.im_min, s}, {b.re_min, b.re_max, s, b.im_max}};
      }
      std::array<int, 2> counts{winding(f, kids[0]), winding(f, kids[1])};
      if (counts[0] + counts[1] != count || counts[0] < 0 || counts[1] < 0) continue;
      for (int k = 0; k < 2; ++k) subdivide(f, kids[k], counts[k], out, max_roots, depth + 1);
      return;
    } catch (const ContourHit&) {
      continue;
    }
  }
  throw std::runtime_error("rayleigh_lamb_roots: subdivision kept hitting roots");
}

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::Symmetric: return "symmetric";
    case Family::Antisymmetric: return "antisymmetric";
    case Family::FreeFree: return "free-free";
    default: return "clamped-free";
  }
}

DispersionFunction::DispersionFunction(const Material& m, Family f) : m_(m), f_(f) {
  validate(m_);
}

cplx DispersionFunction::operator()(cplx beta) const {
  const double h = m_.h;
  switch (f_) {
    case Family::Symmetric: {
      const auto s = basis_at(m_, beta, h);
      return s[Lc].t1 * s[Ss].t3 - s[Ss].t1 * s[Lc].t3;
    }
    case Family::Antisymmetric: {
      const auto s = basis_at(m_, beta, h);
      return s[Ls].t1 * s[Sc].t3 - s[Sc].t1 * s[Ls].t3;
    }
    case Family::FreeFree:
    case Family::ClampedFree: {
      const auto lo = basis_at(m_, beta, -h);
      const auto hi = basis_at(m_, beta, h);
      Eigen::Matrix4cd mat;
      for (int k = 0; k < 4; ++k) {
        if (f_ == Family::FreeFree) {
          mat(0, k) = lo[k].t1;
          mat(1, k) = lo[k].t3;
        } else {
          mat(0, k) = lo[k].v1;
          mat(1, k) = lo[k].v3;
        }
        mat(2, k) = hi[k].t1;
        mat(3, k) = hi[k].t3;
      }
      return mat.determinant();
    }
  }
  return 0.0;
}

cplx DispersionFunction::scaled(cplx beta) const {
  const double k = (f_ == Family::Symmetric || f_ == Family::Antisymmetric) ? 1.0 : 2.0;
  return (*this)(beta) * std::exp(-k * log_scale(m_, beta));
}

cplx newton_polish(const DispersionFunction& f, cplx beta0, int max_iter) {
  cplx b = beta0;
  for (int it = 0; it < max_iter; ++it) {
    const double d = 1e-7 * std::max(1.0, std::abs(b));
    const cplx fb = f(b);
    if (fb == 0.0) break;
    const cplx df = (f(b + d) - f(b - d)) / (2.0 * d);
    if (df == 0.0 || !std::isfinite(std::abs(df))) break;
    const cplx step = fb / df;
    b -= step;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(b))) break;
  }
  return b;
}

int argument_principle_count(const DispersionFunction& f, const SearchBox& box) {
  try {
    return winding(f, box);
  } catch (const ContourHit&) {
    throw std::runtime_error("argument_principle_count: contour passes through a root");
  }
}

RootSearchReport rayleigh_lamb_roots(const Material& m, Family fam, const SearchBox& box,
                                     int max_roots) {
  const DispersionFunction f(m, fam);
  RootSearchReport rep;
  SearchBox b = box;
  const double s = box_scale(box);
  for (int attempt = 0; attempt < 6; ++attempt) {
    try {
      rep.contour_count = winding(f, b);
      break;
    } catch (const ContourHit&) {
      ++rep.retries;
      const double e = 1e-3 * s * (attempt + 1) * 0.7071;
      b = {b.re_min - e, b.re_max + 0.9 * e, b.im_min - 0.8 * e, b.im_max + 1.1 * e};
      if (attempt == 5)
        throw std::runtime_error("rayleigh_lamb_roots: contour passes through a root");
    }
  }
  rep.box = b;
  if (rep.contour_count < 0)
    throw std::runtime_error("rayleigh_lamb_roots: negative winding (poles?)");
  subdivide(f, b, rep.contour_count, rep.roots, max_roots, 0);
  std::sort(rep.roots.begin(), rep.roots.end(), [](cplx x, cplx y) {
    if (std::abs(x) != std::abs(y)) return std::abs(x) < std::abs(y);
    if (x.real() != y.real()) return x.real() > y.real();
    return x.imag() > y.imag();
  });
  rep.certified = static_cast<int>(rep.roots.size()) == rep.contour_count;
  if (rep.retries > 0) rep.message = "box perturbed " + std::to_string(rep.retries) + " time(s)";
  return rep;
}

double SHMode::shape(double x, double h) const {
  return std::cos(n * pi * (x + h) / (2.0 * h));
}

std::vector<SHMode> sh_modes_closed_form(const Material& m, int n_max) {
  if (n_max < 0) throw std::invalid_argument("sh_modes_closed_form: n_max < 0");
  std::vector<SHMode> out;
  const double k0 = m.omega * m.omega * m.rho / m.mu;
  for (int n = 0; n <= n_max; ++n) {
    const double kn = n * pi / (2.0 * m.h);
    out.push_back({n, std::sqrt(cplx(k0 - kn * kn, 0.0))});
  }
  return out;
}

StableSolutionReport stable_solution_check(const Material& m, cplx beta, int gamma) {
  if (gamma != 1 && gamma != -1)
    throw std::invalid_argument("stable_solution_check: gamma must be +1 or -1");
  if (beta == 0.0) throw std::invalid_argument("stable_solution_check: beta = 0");
  if (beta.real() == 0.0) throw std::domain_error("no stable choice");
  const int eps = beta.real() > 0.0 ? 1 : -1;
  const double l = m.lambda;
  const double g = m.mu;
  const Eigen::Matrix2d A{{l + 2 * g, 0.0}, {0.0, g}};
  const Eigen::Matrix2d B{{0.0, l + g}, {l + g, 0.0}};
  const Eigen::Matrix2d C{{g, 0.0}, {0.0, l + 2 * g}};
  const Eigen::Matrix2d D{{0.0, l}, {g, 0.0}};
  const cplx e = static_cast<double>(eps);
  const cplx ig = I1 * static_cast<double>(gamma);

  const Eigen::Vector2cd a(1.0, ig * e);
  const Eigen::Vector2cd c(e * (l + 3 * g) / (beta * (l + g)), 0.0);

  struct W {
    Eigen::Vector2cd w, d1, d2;
  };
  auto w1 = [&](double y) {
    const cplx x = std::exp(-e * beta * y);
    return W{a * x, -e * beta * a * x, beta * beta * a * x};
  };
  auto w2 = [&](double y) {
    const cplx x = std::exp(-e * beta * y);
    const Eigen::Vector2cd u = y * a + c;
    return W{u * x, (a - e * beta * u) * x, (-2.0 * e * beta * a + beta * beta * u) * x};
  };
  auto residual = [&](auto&& fn) {
    double worst = 0.0;
    double scale = 0.0;
    for (int k = 0; k <= 60; ++k) {
      const double y = 4.0 * k / 60.0 / std::max(1.0, std::abs(beta.real()));
      const W s = fn(y);
      const Eigen::Vector2cd t1 = -A.cast<cplx>() * s.d2;
      const Eigen::Vector2cd t2 = ig * beta * (B.cast<cplx>() * s.d1);
      const Eigen::Vector2cd t3 = beta * beta * (C.cast<cplx>() * s.w);
      worst = std::max(worst, (t1 + t2 + t3).norm());
      scale = std::max(scale, t1.norm() + t2.norm() + t3.norm());
    }
    return worst / scale;
  };

  StableSolutionReport r;
  r.beta = beta;
  r.gamma = gamma;
  r.epsilon = eps;
  r.ode_residual_w1 = residual(w1);
  r.ode_residual_w2 = residual(w2);

  Eigen::Matrix2cd N;
  const W s1 = w1(0.0);
  const W s2 = w2(0.0);
  N.col(0) = ig * (A.cast<cplx>() * s1.d1) + beta * (D.cast<cplx>() * s1.w);
  N.col(1) = ig * (A.cast<cplx>() * s2.d1) + beta * (D.cast<cplx>() * s2.w);
  N.row(0) *= ig / (2.0 * g);
  N.row(1) *= 1.0 / (2.0 * g);
  r.boundary_det = N.determinant();
  return r;
}

double rayleigh_speed(const Material& m) {
  validate(m);
  const double k2 = m.mu / (m.lambda + 2.0 * m.mu);
  auto g = [&](double x) {
    const double x2 = x * x;
    const double r = (2.0 - x2) * (2.0 - x2) - 4.0 * std::sqrt(1.0 - x2) * std::sqrt(1.0 - k2 * x2);
    return r / x2;
  };
  double lo = 1e-3, hi = 1.0;
  if (!(g(lo) < 0.0 && g(hi) > 0.0))
    throw std::runtime_error("rayleigh_speed: no bracket");
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi) * m.transverse_speed();
}

double plate_speed(const Material& m) {
  return 2.0 * std::sqrt(m.mu * (m.lambda + m.mu) / (m.rho * (m.lambda + 2.0 * m.mu)));
}

std::vector<double> cutoff_frequencies(const Material& m, int n_max) {
  std::vector<double> w;
  for (int n = 1; n <= n_max; ++n) {
    w.push_back(n * pi * m.longitudinal_speed() / (2.0 * m.h));
    w.push_back(n * pi * m.transverse_speed() / (2.0 * m.h));
  }
  std::sort(w.begin(), w.end());
  return w;
}

DoubleRoot locate_double_root(const Material& m, Family f, double beta0, double omega0) {
  if (f != Family::Symmetric && f != Family::Antisymmetric)
    throw std::invalid_argument("locate_double_root: parity family required");
  auto eval = [&](double b, double w) {
    Material mm = m;
    mm.omega = w;
    const DispersionFunction F(mm, f);
    const double hs = 1e-30;
    const cplx val = F(cplx(b, hs));
    // complex step: F is real on the real axis
    return Eigen::Vector2d(F(cplx(b, 0.0)).real(), val.imag() / hs);
  };
  DoubleRoot r;
  double b = beta0, w = omega0;
  for (int it = 0; it < 60; ++it) {
    const Eigen::Vector2d g = eval(b, w);
    const double db = 1e-6 * std::max(1.0, std::abs(b));
    const double dw = 1e-6 * std::max(1.0, std::abs(w));
    Eigen::Matrix2d J;
    J.col(0) = (eval(b + db, w) - eval(b - db, w)) / (2.0 * db);
    J.col(1) = (eval(b, w + dw) - eval(b, w - dw)) / (2.0 * dw);
    const Eigen::Vector2d step = J.fullPivLu().solve(g);
    b -= step(0);
    w -= step(1);
    r.iterations = it + 1;
    if (std::abs(step(0)) <= 1e-15 * std::max(1.0, std::abs(b)) &&
        std::abs(step(1)) <= 1e-15 * std::max(1.0, std::abs(w)))
      break;
  }
  const Eigen::Vector2d g = eval(b, w);
  r.beta = b;
  r.omega = w;
  r.residual = std::abs(g(0)) + std::abs(g(1));
  return r;
}

}  // namespace lamb
