#include "sgf/operators.hpp"

#include <cmath>

namespace sgf {

double sobolev_mode_weight(double lambda, double s) {
  const double r = 2.0 * s;
  const long ri = std::lround(r);
  if (r == static_cast<double>(ri) && ri % 2 == 0 && std::labs(ri) <= 16) {
    double p = 1.0;
    for (long i = 0; i < std::labs(ri); i += 2) p *= lambda;
    return ri >= 0 ? p : 1.0 / p;
  }
  return std::pow(lambda, s);
}

SpectralVectorField dealias(SpectralVectorField u) {
  const TorusGrid& g = u.grid();
  for (int c = 0; c < 2; ++c) {
    for (int i1 = 0; i1 < g.n; ++i1) {
      for (int i2 = 0; i2 < g.n; ++i2) {
        if (!g.dealias_keep(i1, i2)) u.at(c, i1, i2) = Complex{};
      }
    }
  }
  return u;
}

SpectralVectorField leray_project(const SpectralVectorField& u) {
  const TorusGrid& g = u.grid();
  SpectralVectorField out(g);
  const double k0 = g.k0();
  for (int i1 = 0; i1 < g.n; ++i1) {
    const double k1 = k0 * g.freq(i1);
    for (int i2 = 0; i2 < g.n; ++i2) {
      if (g.is_mean(i1, i2)) continue;
      const double k2 = k0 * g.freq(i2);
      const double lam = k1 * k1 + k2 * k2;
      // c = (kperp . u_hat)/|k|^2, then u_hat' = kperp c, which is
      // divergence free by construction.
      const Complex c = (-k2 * u.at(0, i1, i2) + k1 * u.at(1, i1, i2)) / lam;
      out.at(0, i1, i2) = -k2 * c;
      out.at(1, i1, i2) = k1 * c;
    }
  }
  out.set_divergence_free(true);
  return out;
}

SpectralVectorField stokes_apply(const SpectralVectorField& u) {
  if (!u.divergence_free()) {
    throw InvalidArgument("stokes_apply requires a divergence-free field");
  }
  const TorusGrid& g = u.grid();
  SpectralVectorField out(g);
  for (int i1 = 0; i1 < g.n; ++i1) {
    for (int i2 = 0; i2 < g.n; ++i2) {
      const double lam = g.lambda(i1, i2);
      out.at(0, i1, i2) = lam * u.at(0, i1, i2);
      out.at(1, i1, i2) = lam * u.at(1, i1, i2);
    }
  }
  out.set_divergence_free(true);
  return out;
}

SpectralVectorField helmholtz_apply(const SpectralVectorField& u, double alpha) {
  if (alpha < 0.0) throw InvalidArgument("alpha must be >= 0");
  const TorusGrid& g = u.grid();
  SpectralVectorField out(g);
  for (int i1 = 0; i1 < g.n; ++i1) {
    for (int i2 = 0; i2 < g.n; ++i2) {
      const double w = 1.0 + alpha * g.lambda(i1, i2);
      out.at(0, i1, i2) = w * u.at(0, i1, i2);
      out.at(1, i1, i2) = w * u.at(1, i1, i2);
    }
  }
  out.set_divergence_free(u.divergence_free());
  return out;
}

SpectralVectorField inverse_helmholtz(const SpectralVectorField& u, double alpha) {
  if (alpha < 0.0) throw InvalidArgument("alpha must be >= 0");
  const TorusGrid& g = u.grid();
  SpectralVectorField out(g);
  for (int i1 = 0; i1 < g.n; ++i1) {
    for (int i2 = 0; i2 < g.n; ++i2) {
      const double w = 1.0 + alpha * g.lambda(i1, i2);
      out.at(0, i1, i2) = u.at(0, i1, i2) / w;
      out.at(1, i1, i2) = u.at(1, i1, i2) / w;
    }
  }
  out.set_divergence_free(u.divergence_free());
  return out;
}

SpectralVectorField derivative(const SpectralVectorField& u, int axis) {
  if (axis != 0 && axis != 1) throw InvalidArgument("derivative axis must be 0 or 1");
  const TorusGrid& g = u.grid();
  SpectralVectorField out(g);
  const double k0 = g.k0();
  for (int i1 = 0; i1 < g.n; ++i1) {
    for (int i2 = 0; i2 < g.n; ++i2) {
      const double ka = k0 * g.freq(axis == 0 ? i1 : i2);
      const Complex ik{0.0, ka};
      out.at(0, i1, i2) = ik * u.at(0, i1, i2);
      out.at(1, i1, i2) = ik * u.at(1, i1, i2);
    }
  }
  out.set_divergence_free(u.divergence_free());
  return out;
}

std::vector<Complex> curl_coefficients(const SpectralVectorField& u) {
  const TorusGrid& g = u.grid();
  std::vector<Complex> w(static_cast<size_t>(g.modes()));
  const double k0 = g.k0();
  for (int i1 = 0; i1 < g.n; ++i1) {
    const double k1 = k0 * g.freq(i1);
    for (int i2 = 0; i2 < g.n; ++i2) {
      const double k2 = k0 * g.freq(i2);
      w[static_cast<size_t>(i1) * g.n + i2] =
          Complex{0.0, 1.0} * (k1 * u.at(1, i1, i2) - k2 * u.at(0, i1, i2));
    }
  }
  return w;
}

double sobolev_norm(const SpectralVectorField& u, double s) {
  const TorusGrid& g = u.grid();
  double sum = 0.0;
  for (int i1 = 0; i1 < g.n; ++i1) {
    for (int i2 = 0; i2 < g.n; ++i2) {
      if (g.is_mean(i1, i2)) continue;
      const double w = sobolev_mode_weight(g.lambda(i1, i2), s);
      sum += w * (std::norm(u.at(0, i1, i2)) + std::norm(u.at(1, i1, i2)));
    }
  }
  return std::sqrt(g.length * g.length * sum);
}

double h_inner(const SpectralVectorField& u, const SpectralVectorField& w) {
  u.check_same_grid(w);
  const TorusGrid& g = u.grid();
  double sum = 0.0;
  for (int i1 = 0; i1 < g.n; ++i1) {
    for (int i2 = 0; i2 < g.n; ++i2) {
      sum += (u.at(0, i1, i2) * std::conj(w.at(0, i1, i2))).real() +
             (u.at(1, i1, i2) * std::conj(w.at(1, i1, i2))).real();
    }
  }
  return g.length * g.length * sum;
}

double grad_inner(const SpectralVectorField& u, const SpectralVectorField& w) {
  u.check_same_grid(w);
  const TorusGrid& g = u.grid();
  double sum = 0.0;
  for (int i1 = 0; i1 < g.n; ++i1) {
    for (int i2 = 0; i2 < g.n; ++i2) {
      const double lam = g.lambda(i1, i2);
      sum += lam * ((u.at(0, i1, i2) * std::conj(w.at(0, i1, i2))).real() +
                    (u.at(1, i1, i2) * std::conj(w.at(1, i1, i2))).real());
    }
  }
  return g.length * g.length * sum;
}

double inner_product_v(const SpectralVectorField& u, const SpectralVectorField& w,
                       double alpha) {
  if (alpha < 0.0) throw InvalidArgument("alpha must be >= 0");
  return h_inner(u, w) + alpha * grad_inner(u, w);
}

double max_divergence(const SpectralVectorField& u) {
  const TorusGrid& g = u.grid();
  const double k0 = g.k0();
  double worst = 0.0;
  for (int i1 = 0; i1 < g.n; ++i1) {
    const double k1 = k0 * g.freq(i1);
    for (int i2 = 0; i2 < g.n; ++i2) {
      const double k2 = k0 * g.freq(i2);
      const double d = std::abs(k1 * u.at(0, i1, i2) + k2 * u.at(1, i1, i2));
      if (d > worst) worst = d;
    }
  }
  return worst;
}

double max_abs_coeff(const SpectralVectorField& u) {
  double worst = 0.0;
  for (const Complex& x : u.raw()) {
    const double d = std::abs(x);
    if (d > worst) worst = d;
  }
  return worst;
}

}  // namespace sgf
