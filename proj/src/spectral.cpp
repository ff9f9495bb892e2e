#include "kirchhoff/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstring>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace kirchhoff {

namespace {

/// Per-(dim, M) FFT plans and scratch. All entry points lock `mu`; FFTW
/// planning is not thread safe and the scratch buffer is shared.
class Workspace {
 public:
  Workspace(int dim, int m) : dim_(dim), m_(m) {
    std::size_t n = 1;
    for (int d = 0; d < dim; ++d) n *= static_cast<std::size_t>(m);
    n_ = n;
    buf_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n_));
    if (!buf_) throw std::bad_alloc();
    int dims[3] = {m, m, m};
    fwd_ = fftw_plan_dft(dim, dims, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft(dim, dims, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Workspace() {
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
    fftw_free(buf_);
  }
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  static Workspace& get(const Grid& g) {
    static std::mutex cache_mu;
    static std::map<std::pair<int, int>, std::unique_ptr<Workspace>> cache;
    std::lock_guard<std::mutex> lock(cache_mu);
    auto key = std::make_pair(g.dim, g.points_per_dim);
    auto it = cache.find(key);
    if (it == cache.end())
      it = cache.emplace(key, std::make_unique<Workspace>(g.dim, g.points_per_dim))
               .first;
    return *it->second;
  }

  /// Wavenumber index (signed mode number) for FFT bin j.
  int mode(int j) const { return j <= m_ / 2 ? j : j - m_; }

  double parseval_grad_sq(const Grid& g, const std::vector<double>& u) {
    std::lock_guard<std::mutex> lock(mu_);
    load(u);
    fftw_execute(fwd_);
    const double k0 = std::numbers::pi / g.half_width;
    double acc = 0.0;
    for_modes([&](std::size_t idx, const int* mm) {
      double k2 = 0.0;
      for (int d = 0; d < dim_; ++d) {
        double k = k0 * mm[d];
        k2 += k * k;
      }
      acc += k2 * (buf_[idx][0] * buf_[idx][0] + buf_[idx][1] * buf_[idx][1]);
    });
    return acc * g.cell_volume() / static_cast<double>(n_);
  }

  void neg_laplacian(const Grid& g, const std::vector<double>& u,
                     std::vector<double>& out) {
    std::lock_guard<std::mutex> lock(mu_);
    load(u);
    fftw_execute(fwd_);
    const double k0 = std::numbers::pi / g.half_width;
    const double inv_n = 1.0 / static_cast<double>(n_);
    for_modes([&](std::size_t idx, const int* mm) {
      double k2 = 0.0;
      for (int d = 0; d < dim_; ++d) {
        double k = k0 * mm[d];
        k2 += k * k;
      }
      buf_[idx][0] *= k2 * inv_n;
      buf_[idx][1] *= k2 * inv_n;
    });
    fftw_execute(bwd_);
    store(out);
  }

  /// Circular convolution of a with b (both length n), result scaled by 1/n.
  void convolve(const std::vector<double>& a, const std::vector<double>& b,
                std::vector<double>& out) {
    std::lock_guard<std::mutex> lock(mu_);
    std::vector<std::complex<double>> bh(n_);
    load(b);
    fftw_execute(fwd_);
    for (std::size_t i = 0; i < n_; ++i)
      bh[i] = {buf_[i][0], buf_[i][1]};
    load(a);
    fftw_execute(fwd_);
    const double inv_n = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      std::complex<double> v =
          std::complex<double>(buf_[i][0], buf_[i][1]) * bh[i] * inv_n;
      buf_[i][0] = v.real();
      buf_[i][1] = v.imag();
    }
    fftw_execute(bwd_);
    store(out);
  }

 private:
  void load(const std::vector<double>& u) {
    for (std::size_t i = 0; i < n_; ++i) {
      buf_[i][0] = u[i];
      buf_[i][1] = 0.0;
    }
  }
  void store(std::vector<double>& out) {
    out.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = buf_[i][0];
  }
  template <class F>
  void for_modes(F&& f) const {
    int mm[3] = {0, 0, 0};
    std::size_t idx = 0;
    if (dim_ == 1) {
      for (int j = 0; j < m_; ++j, ++idx) {
        mm[0] = mode(j);
        f(idx, mm);
      }
    } else if (dim_ == 2) {
      for (int j0 = 0; j0 < m_; ++j0)
        for (int j1 = 0; j1 < m_; ++j1, ++idx) {
          mm[0] = mode(j0);
          mm[1] = mode(j1);
          f(idx, mm);
        }
    } else {
      for (int j0 = 0; j0 < m_; ++j0)
        for (int j1 = 0; j1 < m_; ++j1)
          for (int j2 = 0; j2 < m_; ++j2, ++idx) {
            mm[0] = mode(j0);
            mm[1] = mode(j1);
            mm[2] = mode(j2);
            f(idx, mm);
          }
    }
  }

  int dim_, m_;
  std::size_t n_;
  fftw_complex* buf_;
  fftw_plan fwd_, bwd_;
  std::mutex mu_;
};

void warn(const std::string& msg) {
  std::cerr << "[kirchhoff] warning: " << msg << "\n";
}

/// Periodic cardinal (Dirichlet) interpolation weight for even M:
/// S(x) = sin(M theta / 2) / (M tan(theta / 2)), theta = pi x / L.
double trig_kernel(double x, int m, double half_width) {
  double theta = std::numbers::pi * x / half_width;
  theta = std::remainder(theta, 2.0 * std::numbers::pi);
  if (std::fabs(theta) < 1e-14) return 1.0;
  return std::sin(0.5 * m * theta) / (m * std::tan(0.5 * theta));
}

/// Resamples along one axis at arbitrary target coordinates (periodic).
std::vector<double> resample_axis(const Grid& g, const std::vector<double>& in,
                                  int axis, const std::vector<double>& targets,
                                  Interp interp) {
  const int m = g.points_per_dim;
  const std::size_t n = g.size();
  // Targets outside the fundamental domain read the field's (vanishing)
  // tail, not a periodic copy.
  std::vector<bool> outside(m);
  for (int i = 0; i < m; ++i)
    outside[i] = targets[i] < -g.half_width || targets[i] >= g.half_width;
  // Row weights: w[i][j] = weight of sample j for target i.
  std::vector<double> w;
  std::vector<int> lin_j0(m);
  std::vector<double> lin_f(m);
  if (interp == Interp::trig) {
    w.assign(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) {
      if (outside[i]) continue;
      for (int j = 0; j < m; ++j)
        w[static_cast<std::size_t>(i) * m + j] =
            trig_kernel(targets[i] - g.coord(j), m, g.half_width);
    }
  } else {
    for (int i = 0; i < m; ++i) {
      double s = (targets[i] + g.half_width) / g.spacing;
      double fl = std::floor(s);
      lin_f[i] = s - fl;
      int j0 = static_cast<int>(fl) % m;
      if (j0 < 0) j0 += m;
      lin_j0[i] = j0;
    }
  }

  std::vector<double> out(n);
  // Strides for row-major layout.
  std::size_t stride = 1;
  for (int d = g.dim - 1; d > axis; --d) stride *= static_cast<std::size_t>(m);
  const std::size_t block = stride * static_cast<std::size_t>(m);
  std::vector<double> line(m);
  for (std::size_t base = 0; base < n; base += block) {
    for (std::size_t off = 0; off < stride; ++off) {
      for (int j = 0; j < m; ++j) line[j] = in[base + off + stride * j];
      for (int i = 0; i < m; ++i) {
        double acc = 0.0;
        if (outside[i]) {
          acc = 0.0;
        } else if (interp == Interp::trig) {
          const double* wi = &w[static_cast<std::size_t>(i) * m];
          for (int j = 0; j < m; ++j) acc += wi[j] * line[j];
        } else {
          int j0 = lin_j0[i];
          int j1 = (j0 + 1) % m;
          acc = (1.0 - lin_f[i]) * line[j0] + lin_f[i] * line[j1];
        }
        out[base + off + stride * i] = acc;
      }
    }
  }
  return out;
}

}  // namespace

double grad_norm_sq(const Field& u) {
  return Workspace::get(u.grid).parseval_grad_sq(u.grid, u.samples);
}

Field neg_laplacian(const Field& u) {
  Field out;
  out.grid = u.grid;
  Workspace::get(u.grid).neg_laplacian(u.grid, u.samples, out.samples);
  return out;
}

Field scale_fiber(const Field& u, double t, Interp interp) {
  if (!(t > 0.0)) throw std::invalid_argument("scale_fiber: t must be positive");
  const Grid& g = u.grid;
  if (t < g.spacing / g.half_width)
    warn("scale_fiber: t below grid resolution scale, resampling ill-posed");
  if (t < 1.0) {
    double r = support_radius(u);
    if (r / t > g.half_width)
      warn("scale_fiber: rescaled support exceeds the box, tails clipped");
  }
  if (t == 1.0) return u;

  Field out = u;
  std::vector<double> targets(g.points_per_dim);
  for (int i = 0; i < g.points_per_dim; ++i) targets[i] = t * g.coord(i);
  for (int axis = 0; axis < g.dim; ++axis)
    out.samples = resample_axis(g, out.samples, axis, targets, interp);
  double amp = std::pow(t, 0.5 * g.dim);
  for (double& v : out.samples) v *= amp;
  return out;
}

Field translate(const Field& u, const std::array<double, 3>& y, Interp interp) {
  const Grid& g = u.grid;
  double ynorm = 0.0;
  for (int d = 0; d < g.dim; ++d) ynorm += y[d] * y[d];
  ynorm = std::sqrt(ynorm);
  if (ynorm == 0.0) return u;
  if (ynorm + support_radius(u) > g.half_width)
    warn("translate: support reaches the box boundary, tails clipped");

  Field out = u;
  std::vector<double> targets(g.points_per_dim);
  for (int axis = 0; axis < g.dim; ++axis) {
    if (y[axis] == 0.0) continue;
    for (int i = 0; i < g.points_per_dim; ++i)
      targets[i] = g.coord(i) - y[axis];
    out.samples = resample_axis(g, out.samples, axis, targets, interp);
  }
  return out;
}

Field unit_ball_average(const Field& u) {
  const Grid& g = u.grid;
  if (g.half_width <= 1.0)
    throw std::invalid_argument("unit_ball_average: box smaller than unit ball");
  const double ball_vol = g.dim == 1 ? 2.0
                          : g.dim == 2 ? std::numbers::pi
                                       : 4.0 * std::numbers::pi / 3.0;
  // Kernel indexed by periodic displacement: bin k along an axis stands for
  // offset k*spacing, wrapped to (-L, L].
  const int m = g.points_per_dim;
  std::vector<double> kernel(g.size());
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    std::size_t rem = i;
    double n2 = 0.0;
    for (int d = g.dim - 1; d >= 0; --d) {
      int k = static_cast<int>(rem % static_cast<std::size_t>(m));
      rem /= static_cast<std::size_t>(m);
      int mode = k <= m / 2 ? k : k - m;
      double disp = mode * g.spacing;
      n2 += disp * disp;
    }
    kernel[i] = n2 <= 1.0 ? g.cell_volume() / ball_vol : 0.0;
  }
  std::vector<double> au(g.size());
  for (std::size_t i = 0; i < au.size(); ++i) au[i] = std::fabs(u.samples[i]);

  Field out;
  out.grid = g;
  Workspace::get(g).convolve(au, kernel, out.samples);
  return out;
}

}  // namespace kirchhoff
