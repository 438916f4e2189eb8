#pragma once

// Adaptive Dormand-Prince 8(5,3) integration of complex linear systems along
// straight segments of the complex plane, with overflow-safe renormalization.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "quartic/types.hpp"

namespace quartic::ode {

template <std::size_t N>
using Vec = std::array<cplx, N>;

struct Options {
  double rtol = 1e-12;
  // Absolute tolerance as a fraction of rtol, measured against the current
  // state magnitude so that the step sequence is invariant under scaling.
  double atol_ratio = 1e-2;
  // Renormalize whenever the leading components leave [1, renorm_max].
  double renorm_max = 1e8;
  // Number of leading components whose magnitude defines the scale.
  std::size_t scale_components = 2;
  long max_steps = 10'000'000;
};

struct Stats {
  long accepted = 0;
  long rejected = 0;
};

namespace detail {

// Hairer & Wanner DOP853 tableau.
inline constexpr double c2 = 0.526001519587677318785587544488e-01;
inline constexpr double c3 = 0.789002279381515978178381316732e-01;
inline constexpr double c4 = 0.118350341907227396726757197510e+00;
inline constexpr double c5 = 0.281649658092772603273242802490e+00;
inline constexpr double c6 = 0.333333333333333333333333333333e+00;
inline constexpr double c7 = 0.25e+00;
inline constexpr double c8 = 0.307692307692307692307692307692e+00;
inline constexpr double c9 = 0.651282051282051282051282051282e+00;
inline constexpr double c10 = 0.6e+00;
inline constexpr double c11 = 0.857142857142857142857142857142e+00;

inline constexpr double a21 = 5.26001519587677318785587544488e-2;
inline constexpr double a31 = 1.97250569845378994544595329183e-2;
inline constexpr double a32 = 5.91751709536136983633785987549e-2;
inline constexpr double a41 = 2.95875854768068491816892993775e-2;
inline constexpr double a43 = 8.87627564304205475450678981324e-2;
inline constexpr double a51 = 2.41365134159266685502369798665e-1;
inline constexpr double a53 = -8.84549479328286085344864962717e-1;
inline constexpr double a54 = 9.24834003261792003115737966543e-1;
inline constexpr double a61 = 3.7037037037037037037037037037e-2;
inline constexpr double a64 = 1.70828608729473871279604482173e-1;
inline constexpr double a65 = 1.25467687566822425016691814123e-1;
inline constexpr double a71 = 3.7109375e-2;
inline constexpr double a74 = 1.70252211019544039314978060272e-1;
inline constexpr double a75 = 6.02165389804559606850219397283e-2;
inline constexpr double a76 = -1.7578125e-2;
inline constexpr double a81 = 3.70920001185047927108779319836e-2;
inline constexpr double a84 = 1.70383925712239993810214054705e-1;
inline constexpr double a85 = 1.07262030446373284651809199168e-1;
inline constexpr double a86 = -1.53194377486244017527936158236e-2;
inline constexpr double a87 = 8.27378916381402288758473766002e-3;
inline constexpr double a91 = 6.24110958716075717114429577812e-1;
inline constexpr double a94 = -3.36089262944694129406857109825e0;
inline constexpr double a95 = -8.68219346841726006818189891453e-1;
inline constexpr double a96 = 2.75920996994467083049415600797e1;
inline constexpr double a97 = 2.01540675504778934086186788979e1;
inline constexpr double a98 = -4.34898841810699588477366255144e1;
inline constexpr double a101 = 4.77662536438264365890433908527e-1;
inline constexpr double a104 = -2.48811461997166764192642586468e0;
inline constexpr double a105 = -5.90290826836842996371446475743e-1;
inline constexpr double a106 = 2.12300514481811942347288949897e1;
inline constexpr double a107 = 1.52792336328824235832596922938e1;
inline constexpr double a108 = -3.32882109689848629194453265587e1;
inline constexpr double a109 = -2.03312017085086261358222928593e-2;
inline constexpr double a111 = -9.3714243008598732571704021658e-1;
inline constexpr double a114 = 5.18637242884406370830023853209e0;
inline constexpr double a115 = 1.09143734899672957818500254654e0;
inline constexpr double a116 = -8.14978701074692612513997267357e0;
inline constexpr double a117 = -1.85200656599969598641566180701e1;
inline constexpr double a118 = 2.27394870993505042818970056734e1;
inline constexpr double a119 = 2.49360555267965238987089396762e0;
inline constexpr double a1110 = -3.0467644718982195003823669022e0;
inline constexpr double a121 = 2.27331014751653820792359768449e0;
inline constexpr double a124 = -1.05344954667372501984066689879e1;
inline constexpr double a125 = -2.00087205822486249909675718444e0;
inline constexpr double a126 = -1.79589318631187989172765950534e1;
inline constexpr double a127 = 2.79488845294199600508499808837e1;
inline constexpr double a128 = -2.85899827713502369474065508674e0;
inline constexpr double a129 = -8.87285693353062954433549289258e0;
inline constexpr double a1210 = 1.23605671757943030647266201528e1;
inline constexpr double a1211 = 6.43392746015763530355970484046e-1;

inline constexpr double b1 = 5.42937341165687622380535766363e-2;
inline constexpr double b6 = 4.45031289275240888144113950566e0;
inline constexpr double b7 = 1.89151789931450038304281599044e0;
inline constexpr double b8 = -5.8012039600105847814672114227e0;
inline constexpr double b9 = 3.1116436695781989440891606237e-1;
inline constexpr double b10 = -1.52160949662516078556178806805e-1;
inline constexpr double b11 = 2.01365400804030348374776537501e-1;
inline constexpr double b12 = 4.47106157277725905176885569043e-2;

inline constexpr double bhh1 = 0.244094488188976377952755905512e+00;
inline constexpr double bhh2 = 0.733846688281611857341361741547e+00;
inline constexpr double bhh3 = 0.220588235294117647058823529412e-01;

inline constexpr double er1 = 0.1312004499419488073250102996e-01;
inline constexpr double er6 = -0.1225156446376204440720569753e+01;
inline constexpr double er7 = -0.4957589496572501915214079952e+00;
inline constexpr double er8 = 0.1664377182454986536961530415e+01;
inline constexpr double er9 = -0.3503288487499736816886487290e+00;
inline constexpr double er10 = 0.3341791187130174790297318841e+00;
inline constexpr double er11 = 0.8192320648511571246570742613e-01;
inline constexpr double er12 = -0.2235530786388629525884427845e-01;

template <std::size_t N>
double leading_magnitude(const Vec<N>& y, std::size_t count) {
  double m = 0.0;
  for (std::size_t i = 0; i < std::min(count, N); ++i) m = std::max(m, std::abs(y[i]));
  return m;
}

// Rescale by an exact power of two so that the leading magnitude lands in
// [1, 2); the factor is folded into log_scale.
template <std::size_t N>
void renormalize(Vec<N>& y, double& log_scale, std::size_t count) {
  const double m = leading_magnitude(y, count);
  if (!(m > 0.0) || !std::isfinite(m)) return;
  int e = 0;
  std::frexp(m, &e);
  const int shift = e - 1;
  if (shift == 0) return;
  for (auto& v : y) v = cplx(std::ldexp(v.real(), -shift), std::ldexp(v.imag(), -shift));
  log_scale += shift * std::log(2.0);
}

}  // namespace detail

struct NoObserver {
  template <std::size_t N>
  void operator()(cplx, const Vec<N>&, double) const {}
};

// Integrates y' = rhs(z, y) along the straight segment z0 -> z1. The true
// state is y * exp(log_scale); both are updated in place. The observer is
// invoked after every accepted step with (z, y, log_scale).
template <std::size_t N, class Rhs, class Observer = NoObserver>
void integrate_segment(const Rhs& rhs, cplx z0, cplx z1, Vec<N>& y, double& log_scale,
                       const Options& opt, Observer&& observer = {}, Stats* stats = nullptr) {
  using namespace detail;
  const double length = std::abs(z1 - z0);
  if (length == 0.0) return;
  const cplx u = (z1 - z0) / length;

  auto f = [&](double s, const Vec<N>& state) {
    Vec<N> d = rhs(z0 + s * u, state);
    for (auto& v : d) v *= u;
    return d;
  };

  if (detail::leading_magnitude(y, opt.scale_components) > opt.renorm_max ||
      detail::leading_magnitude(y, opt.scale_components) < 1.0)
    renormalize(y, log_scale, opt.scale_components);

  Vec<N> k1 = f(0.0, y), k2, k3, k4, k5, k6, k7, k8, k9, k10, yw;
  double s = 0.0;

  double h;
  {
    double ny = 0.0, nf = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      ny = std::max(ny, std::abs(y[i]));
      nf = std::max(nf, std::abs(k1[i]));
    }
    h = (nf > 0.0) ? 0.01 * ny / nf : length;
    h = std::min(h, length);
  }

  bool last_rejected = false;
  long steps = 0;

  while (s < length) {
    if (++steps > opt.max_steps) throw IntegrationError("maximum number of integration steps exceeded");
    bool last = false;
    // The final step absorbs a remainder too small to be taken on its own.
    if (s + h >= length * (1.0 - 1e-12)) {
      h = length - s;
      last = true;
    }
    if (!last && h <= 1e-14 * std::max(1.0, length)) {
      throw IntegrationError("step-size underflow at z = " + std::to_string((z0 + s * u).real()) +
                             (std::string(" + ") + std::to_string((z0 + s * u).imag()) + "i"));
    }

    for (std::size_t i = 0; i < N; ++i) yw[i] = y[i] + h * (a21 * k1[i]);
    k2 = f(s + c2 * h, yw);
    for (std::size_t i = 0; i < N; ++i) yw[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    k3 = f(s + c3 * h, yw);
    for (std::size_t i = 0; i < N; ++i) yw[i] = y[i] + h * (a41 * k1[i] + a43 * k3[i]);
    k4 = f(s + c4 * h, yw);
    for (std::size_t i = 0; i < N; ++i) yw[i] = y[i] + h * (a51 * k1[i] + a53 * k3[i] + a54 * k4[i]);
    k5 = f(s + c5 * h, yw);
    for (std::size_t i = 0; i < N; ++i) yw[i] = y[i] + h * (a61 * k1[i] + a64 * k4[i] + a65 * k5[i]);
    k6 = f(s + c6 * h, yw);
    for (std::size_t i = 0; i < N; ++i)
      yw[i] = y[i] + h * (a71 * k1[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    k7 = f(s + c7 * h, yw);
    for (std::size_t i = 0; i < N; ++i)
      yw[i] = y[i] + h * (a81 * k1[i] + a84 * k4[i] + a85 * k5[i] + a86 * k6[i] + a87 * k7[i]);
    k8 = f(s + c8 * h, yw);
    for (std::size_t i = 0; i < N; ++i)
      yw[i] = y[i] + h * (a91 * k1[i] + a94 * k4[i] + a95 * k5[i] + a96 * k6[i] + a97 * k7[i] +
                          a98 * k8[i]);
    k9 = f(s + c9 * h, yw);
    for (std::size_t i = 0; i < N; ++i)
      yw[i] = y[i] + h * (a101 * k1[i] + a104 * k4[i] + a105 * k5[i] + a106 * k6[i] + a107 * k7[i] +
                          a108 * k8[i] + a109 * k9[i]);
    k10 = f(s + c10 * h, yw);
    for (std::size_t i = 0; i < N; ++i)
      yw[i] = y[i] + h * (a111 * k1[i] + a114 * k4[i] + a115 * k5[i] + a116 * k6[i] + a117 * k7[i] +
                          a118 * k8[i] + a119 * k9[i] + a1110 * k10[i]);
    k2 = f(s + c11 * h, yw);
    for (std::size_t i = 0; i < N; ++i)
      yw[i] = y[i] + h * (a121 * k1[i] + a124 * k4[i] + a125 * k5[i] + a126 * k6[i] + a127 * k7[i] +
                          a128 * k8[i] + a129 * k9[i] + a1210 * k10[i] + a1211 * k2[i]);
    k3 = f(s + h, yw);
    for (std::size_t i = 0; i < N; ++i) {
      k4[i] = b1 * k1[i] + b6 * k6[i] + b7 * k7[i] + b8 * k8[i] + b9 * k9[i] + b10 * k10[i] +
              b11 * k2[i] + b12 * k3[i];
      k5[i] = y[i] + h * k4[i];
    }

    // Error estimate: the stretched 5th/3rd order combination of DOP853.
    double scale = 0.0;
    for (std::size_t i = 0; i < N; ++i) scale = std::max({scale, std::abs(y[i]), std::abs(k5[i])});
    const double atol = opt.rtol * opt.atol_ratio * scale;
    double err5 = 0.0, err3 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sk = atol + opt.rtol * std::max(std::abs(y[i]), std::abs(k5[i]));
      if (sk == 0.0) continue;
      const cplx e3 = k4[i] - bhh1 * k1[i] - bhh2 * k9[i] - bhh3 * k3[i];
      const cplx e5 = er1 * k1[i] + er6 * k6[i] + er7 * k7[i] + er8 * k8[i] + er9 * k9[i] +
                      er10 * k10[i] + er11 * k2[i] + er12 * k3[i];
      err3 += std::norm(e3 / sk);
      err5 += std::norm(e5 / sk);
    }
    double deno = err5 + 0.01 * err3;
    if (deno <= 0.0) deno = 1.0;
    const double err = h * err5 * std::sqrt(1.0 / (static_cast<double>(N) * deno));
    if (!std::isfinite(err)) throw IntegrationError("non-finite error estimate");

    const double fac11 = std::pow(err, 0.125);
    // Step ratio limited to [1/3, 6] with safety factor 0.9.
    const double fac = std::clamp(fac11 / 0.9, 1.0 / 6.0, 3.0);
    double hnew = h / fac;

    if (err <= 1.0) {
      s = last ? length : s + h;
      y = k5;
      if (stats) ++stats->accepted;
      const double m = detail::leading_magnitude(y, opt.scale_components);
      if (m > opt.renorm_max || m < 1.0) renormalize(y, log_scale, opt.scale_components);
      observer(z0 + s * u, y, log_scale);
      if (last) break;
      k1 = f(s, y);
      if (last_rejected) hnew = std::min(hnew, h);
      last_rejected = false;
      h = hnew;
    } else {
      hnew = h / std::min(3.0, fac11 / 0.9);
      last_rejected = true;
      if (stats) ++stats->rejected;
      h = hnew;
    }
  }
}

}  // namespace quartic::ode
