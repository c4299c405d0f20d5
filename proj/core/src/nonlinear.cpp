#include "sgf/nonlinear.hpp"

#include <vector>

#include "sgf/operators.hpp"

namespace sgf {

SpectralVectorField curl_cross(const SpectralVectorField& u, double alpha, Workspace& ws) {
  if (alpha < 0.0) throw InvalidArgument("alpha must be >= 0");
  const TorusGrid& g = u.grid();
  SpectralVectorField ud = dealias(u);

  std::vector<Complex> w = curl_coefficients(ud);
  for (int i1 = 0; i1 < g.n; ++i1) {
    for (int i2 = 0; i2 < g.n; ++i2) {
      w[static_cast<size_t>(i1) * g.n + i2] *= 1.0 + alpha * g.lambda(i1, i2);
    }
  }
  std::vector<double> ws_samples(static_cast<size_t>(g.modes()));
  ws.scalar_to_physical(w, ws_samples);

  PhysicalVectorField p = ws.to_physical(ud);
  PhysicalVectorField prod(g);
  auto p0 = p.component(0);
  auto p1 = p.component(1);
  auto q0 = prod.component(0);
  auto q1 = prod.component(1);
  for (int i = 0; i < g.modes(); ++i) {
    // omega_alpha x u = omega_alpha * (-u2, u1)
    q0[i] = -ws_samples[static_cast<size_t>(i)] * p1[i];
    q1[i] = ws_samples[static_cast<size_t>(i)] * p0[i];
  }
  return dealias(ws.to_spectral(prod));
}

SpectralVectorField advection(const SpectralVectorField& v, Workspace& ws) {
  const TorusGrid& g = v.grid();
  SpectralVectorField vd = dealias(v);
  PhysicalVectorField p = ws.to_physical(vd);
  PhysicalVectorField d1 = ws.to_physical(derivative(vd, 0));
  PhysicalVectorField d2 = ws.to_physical(derivative(vd, 1));
  PhysicalVectorField prod(g);
  for (int c = 0; c < 2; ++c) {
    auto out = prod.component(c);
    auto g1 = d1.component(c);
    auto g2 = d2.component(c);
    auto p0 = p.component(0);
    auto p1 = p.component(1);
    for (int i = 0; i < g.modes(); ++i) {
      out[i] = p0[i] * g1[i] + p1[i] * g2[i];
    }
  }
  return leray_project(dealias(ws.to_spectral(prod)));
}

SpectralVectorField remainder(const SpectralVectorField& u, double alpha, Workspace& ws) {
  if (alpha < 0.0) throw InvalidArgument("alpha must be >= 0");
  const TorusGrid& g = u.grid();
  if (alpha == 0.0) {
    SpectralVectorField zero(g);
    zero.set_divergence_free(true);
    return zero;
  }
  SpectralVectorField ud = dealias(u);
  const PhysicalVectorField p = ws.to_physical(ud);
  // d[k] holds the velocity gradient along axis k: d[k].component(j) = d_k u_j.
  const PhysicalVectorField d[2] = {ws.to_physical(derivative(ud, 0)),
                                    ws.to_physical(derivative(ud, 1))};

  const double k0 = g.k0();
  SpectralVectorField acc(g);
  PhysicalVectorField prod(g);
  const int m = g.modes();
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 2; ++k) {
      // term 1: d_i d_k (u_i d_k u), multiplier -k_i k_k
      for (int c = 0; c < 2; ++c) {
        auto out = prod.component(c);
        auto ui = p.component(i);
        auto dku = d[k].component(c);
        for (int x = 0; x < m; ++x) out[x] = ui[x] * dku[x];
      }
      SpectralVectorField t1 = ws.to_spectral(prod);
      // term 2: d_i (d_k u_i d_k u), multiplier i k_i
      for (int c = 0; c < 2; ++c) {
        auto out = prod.component(c);
        auto dkui = d[k].component(i);
        auto dku = d[k].component(c);
        for (int x = 0; x < m; ++x) out[x] = dkui[x] * dku[x];
      }
      SpectralVectorField t2 = ws.to_spectral(prod);
      // term 3: -d_k (d_k u_i grad u_i), multiplier -i k_k
      for (int c = 0; c < 2; ++c) {
        auto out = prod.component(c);
        auto dkui = d[k].component(i);
        auto dcui = d[c].component(i);
        for (int x = 0; x < m; ++x) out[x] = dkui[x] * dcui[x];
      }
      SpectralVectorField t3 = ws.to_spectral(prod);

      for (int i1 = 0; i1 < g.n; ++i1) {
        const double kk1 = k0 * g.freq(i1);
        for (int i2 = 0; i2 < g.n; ++i2) {
          const double kk2 = k0 * g.freq(i2);
          const double ki = (i == 0) ? kk1 : kk2;
          const double kk = (k == 0) ? kk1 : kk2;
          for (int c = 0; c < 2; ++c) {
            const Complex a = t1.at(c, i1, i2);
            const Complex b = t2.at(c, i1, i2);
            const Complex e = t3.at(c, i1, i2);
            acc.at(c, i1, i2) += -ki * kk * a + Complex{0.0, ki} * b - Complex{0.0, kk} * e;
          }
        }
      }
    }
  }
  SpectralVectorField r = leray_project(dealias(acc));
  r.scale(alpha);
  return r;
}

SpectralVectorField nonlinear_term(const SpectralVectorField& u, double alpha,
                                   Workspace& ws) {
  if (alpha == 0.0) return advection(u, ws);
  return leray_project(curl_cross(u, alpha, ws));
}

}  // namespace sgf
