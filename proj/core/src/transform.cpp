#include "biqwlct/transform.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "biqwlct/error.hpp"
#include "biqwlct/fft.hpp"
#include "biqwlct/parallel.hpp"

namespace biqwlct {

namespace {

constexpr double kPi = std::numbers::pi;

// x e^{rho t} = x cos t + (x rho) sin t.
Biquaternion rotate_right(const Biquaternion& x, const Biquaternion& rho, double t) {
  return x * std::cos(t) + (x * rho) * std::sin(t);
}

// --- direct path ----------------------------------------------------------

// table[in * n_out + out] = kernel value for one axis.
std::vector<Biquaternion> forward_table(const LctParam& m, const RootOfMinusOne& root,
                                        const Axis& xi, const Axis& omega, bool fault) {
  std::vector<Biquaternion> t(xi.n * omega.n);
  for (std::size_t n = 0; n < xi.n; ++n) {
    for (std::size_t p = 0; p < omega.n; ++p) {
      Biquaternion k = kernel_eval(m, root, xi.coord(n), omega.coord(p));
      if (fault && xi.coord(n) > 0.0 && omega.coord(p) > 0.0) k = -k;
      t[n * omega.n + p] = k;
    }
  }
  return t;
}

// table[in * n_out + out] with in = omega, out = xi, kernel K^{-root}(xi, omega).
std::vector<Biquaternion> inverse_table(const LctParam& m, const RootOfMinusOne& root,
                                        const Axis& omega, const Axis& xi) {
  const RootOfMinusOne neg = root.negated();
  std::vector<Biquaternion> t(omega.n * xi.n);
  for (std::size_t p = 0; p < omega.n; ++p) {
    for (std::size_t m_ = 0; m_ < xi.n; ++m_) {
      t[p * xi.n + m_] = kernel_eval(m, neg, xi.coord(m_), omega.coord(p));
    }
  }
  return t;
}

// out(p1, p2) = weight * sum_{n2} sum_{n1} in(n1, n2) T_first[n1][p1] T_second[n2][p2]
// when first_axis == 1, or in(n1, n2) T_first[n2][p2] T_second[n1][p1] when 2.
Field2D direct_separable(const Field2D& in, const GridSpec& out_grid,
                         const std::vector<Biquaternion>& t1,
                         const std::vector<Biquaternion>& t2, int first_axis, double weight,
                         bool parallel) {
  Field2D out{out_grid};
  const std::size_t n1 = in.n1(), n2 = in.n2();
  const std::size_t p1n = out_grid.axis1.n, p2n = out_grid.axis2.n;
  auto body = [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      const std::size_t p1 = idx % p1n, p2 = idx / p1n;
      Biquaternion acc{};
      for (std::size_t i2 = 0; i2 < n2; ++i2) {
        const Biquaternion& k2 = t2[i2 * p2n + p2];
        for (std::size_t i1 = 0; i1 < n1; ++i1) {
          const Biquaternion& k1 = t1[i1 * p1n + p1];
          acc += first_axis == 1 ? (in.at(i1, i2) * k1) * k2 : (in.at(i1, i2) * k2) * k1;
        }
      }
      out.at(p1, p2) = acc * weight;
    }
  };
  if (parallel) {
    parallel_for(out_grid.size(), body);
  } else {
    body(0, out_grid.size());
  }
  return out;
}

// --- fast path ------------------------------------------------------------

// y(v_p) = amp sum_n x(u_n) e^{rho (A u^2 + B u v + C v^2 + D)}, the kernel
// multiplied on the right.
struct ChirpLine {
  Axis in;
  Axis out;
  double A = 0.0, B = 0.0, C = 0.0, D = 0.0;
  double amp = 1.0;
  Biquaternion rho;
};

class ChirpEngine {
 public:
  explicit ChirpEngine(const ChirpLine& line) : line_(line), plan_(line.in.n) {
    const std::size_t n = line.in.n;
    const double product = std::abs(line.B) * line.in.step * line.out.step * static_cast<double>(n);
    if (line.out.n != n || std::abs(product - 2.0 * kPi) > 1e-9 * 2.0 * kPi) {
      throw Error(ErrorCode::GridMismatch, "fast path needs the dual frequency grid");
    }
    sigma_ = line.B > 0.0 ? 1.0 : -1.0;
    pre_.resize(n);
    post_.resize(n);
    const double uo = line.in.origin, vo = line.out.origin;
    for (std::size_t j = 0; j < n; ++j) {
      const double u = line.in.coord(j), v = line.out.coord(j);
      const double jd = static_cast<double>(j);
      pre_[j] = line.A * u * u + line.B * vo * line.in.step * jd;
      post_[j] = line.C * v * v + line.B * uo * line.out.step * jd + line.B * uo * vo + line.D;
    }
  }

  // Transforms n values read at in[j * in_stride] into out[p * out_stride].
  void run(const Biquaternion* in, std::size_t in_stride, Biquaternion* out,
           std::size_t out_stride) const {
    const std::size_t n = line_.in.n;
    std::array<std::vector<Complex>, 8> coords;
    std::array<std::vector<Complex>, 8> spectra;
    for (std::size_t r = 0; r < 8; ++r) {
      coords[r].resize(n);
      spectra[r].resize(n);
    }
    for (std::size_t j = 0; j < n; ++j) {
      const auto z = rotate_right(in[j * in_stride], line_.rho, pre_[j]).to_reals();
      for (std::size_t r = 0; r < 8; ++r) coords[r][j] = Complex{z[r], 0.0};
    }
    for (std::size_t r = 0; r < 8; ++r) plan_.forward(coords[r], spectra[r]);
    std::array<double, 8> c{}, s{};
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t r = 0; r < 8; ++r) {
        c[r] = spectra[r][p].real();
        s[r] = -spectra[r][p].imag();
      }
      const Biquaternion w = Biquaternion::from_reals(c) +
                             (Biquaternion::from_reals(s) * line_.rho) * sigma_;
      out[p * out_stride] = rotate_right(w, line_.rho, post_[p]) * line_.amp;
    }
  }

 private:
  ChirpLine line_;
  FftPlan plan_;
  double sigma_ = 1.0;
  std::vector<double> pre_;
  std::vector<double> post_;
};

ChirpLine forward_line(const LctParam& m, const RootOfMinusOne& root, const Axis& xi,
                       const Axis& omega) {
  return {xi, omega, m.a / (2.0 * m.b), -1.0 / m.b, m.d / (2.0 * m.b), -kPi / 4.0,
          kernel_amplitude(m), root.value()};
}

ChirpLine inverse_line(const LctParam& m, const RootOfMinusOne& root, const Axis& omega,
                       const Axis& xi) {
  return {omega, xi, m.d / (2.0 * m.b), -1.0 / m.b, m.a / (2.0 * m.b), -kPi / 4.0,
          kernel_amplitude(m), root.negated().value()};
}

// Applies `first` along axis first_axis and then `second` along the other.
Field2D fast_separable(const Field2D& in, const GridSpec& out_grid, const ChirpLine& first,
                       const ChirpLine& second, int first_axis, double weight, bool parallel) {
  const ChirpEngine e1{first}, e2{second};
  const std::size_t n1 = in.n1(), n2 = in.n2();
  auto run = [&](std::size_t count, const std::function<void(std::size_t)>& line) {
    if (parallel) {
      parallel_for(count, [&](std::size_t b, std::size_t e) {
        for (std::size_t q = b; q < e; ++q) line(q);
      });
    } else {
      for (std::size_t q = 0; q < count; ++q) line(q);
    }
  };
  // Output sizes equal input sizes on dual grids, so one buffer serves both passes.
  std::vector<Biquaternion> buf(in.values().begin(), in.values().end());
  const ChirpEngine& ax1 = first_axis == 1 ? e1 : e2;
  const ChirpEngine& ax2 = first_axis == 1 ? e2 : e1;
  auto pass1 = [&] {
    run(n2, [&](std::size_t i2) {
      std::vector<Biquaternion> tmp(n1);
      ax1.run(buf.data() + i2 * n1, 1, tmp.data(), 1);
      std::copy(tmp.begin(), tmp.end(), buf.begin() + static_cast<std::ptrdiff_t>(i2 * n1));
    });
  };
  auto pass2 = [&] {
    run(n1, [&](std::size_t i1) {
      std::vector<Biquaternion> tmp(n2);
      ax2.run(buf.data() + i1, n1, tmp.data(), 1);
      for (std::size_t i2 = 0; i2 < n2; ++i2) buf[i1 + i2 * n1] = tmp[i2];
    });
  };
  if (first_axis == 1) {
    pass1();
    pass2();
  } else {
    pass2();
    pass1();
  }
  for (auto& v : buf) v *= weight;
  return Field2D{out_grid, std::move(buf)};
}

// --- shared pieces --------------------------------------------------------

void require_grid(const GridSpec& actual, const GridSpec& expected, const char* what) {
  if (!actual.matches(expected)) {
    throw Error(ErrorCode::GridMismatch, std::string(what) + " is not the dual grid");
  }
}

Field2D forward_impl(const Field2D& f, const TransformConfig& cfg, const GridSpec& omega_grid,
                     bool parallel) {
  cfg.validate();
  omega_grid.validate();
  const GridSpec& g = f.grid();
  const bool fault = cfg.fault == KernelFault::QuadrantSignFlip;
  if (cfg.path == TransformPath::Fast && !fault) {
    require_grid(omega_grid, dual_grid(g, cfg.m1, cfg.m2), "frequency grid");
    return fast_separable(f, omega_grid, forward_line(cfg.m1, cfg.mu, g.axis1, omega_grid.axis1),
                          forward_line(cfg.m2, cfg.axis2_root(), g.axis2, omega_grid.axis2), 1,
                          g.cell_area(), parallel);
  }
  const auto t1 = forward_table(cfg.m1, cfg.mu, g.axis1, omega_grid.axis1, fault);
  const auto t2 = forward_table(cfg.m2, cfg.axis2_root(), g.axis2, omega_grid.axis2, false);
  return direct_separable(f, omega_grid, t1, t2, 1, g.cell_area(), parallel);
}

Field2D inverse_impl(const Field2D& spectrum, const TransformConfig& cfg, const GridSpec& xi_grid,
                     bool parallel) {
  cfg.validate();
  xi_grid.validate();
  const GridSpec& w = spectrum.grid();
  require_grid(w, dual_grid(xi_grid, cfg.m1, cfg.m2), "spectrum grid");
  if (cfg.path == TransformPath::Fast) {
    return fast_separable(spectrum, xi_grid,
                          inverse_line(cfg.m2, cfg.axis2_root(), w.axis2, xi_grid.axis2),
                          inverse_line(cfg.m1, cfg.mu, w.axis1, xi_grid.axis1), 2,
                          w.cell_area(), parallel);
  }
  const auto t1 = inverse_table(cfg.m1, cfg.mu, w.axis1, xi_grid.axis1);
  const auto t2 = inverse_table(cfg.m2, cfg.axis2_root(), w.axis2, xi_grid.axis2);
  return direct_separable(spectrum, xi_grid, t1, t2, 2, w.cell_area(), parallel);
}

// Integer lattice offset t with phi index = signal index - t, or throws.
long lattice_offset(const Axis& signal, const Axis& window, double nu) {
  if (std::abs(signal.step - window.step) > 1e-12 * signal.step) {
    throw Error(ErrorCode::GridMismatch, "window and signal spacings differ");
  }
  const double t = (nu + window.origin - signal.origin) / signal.step;
  const double r = std::round(t);
  if (std::abs(t - r) > 1e-9 * std::max(1.0, std::abs(t))) {
    throw Error(ErrorCode::GridMismatch, "window shift is off the sample lattice");
  }
  return static_cast<long>(r);
}

// Window index for signal index i, or -1 outside the support.
long window_index(std::size_t i, long offset, std::size_t n_window, WindowExtension ext) {
  long j = static_cast<long>(i) - offset;
  const long n = static_cast<long>(n_window);
  if (ext == WindowExtension::Periodic) {
    j %= n;
    if (j < 0) j += n;
    return j;
  }
  return (j < 0 || j >= n) ? -1 : j;
}

template <typename Op>
Field2D shifted_apply(const GridSpec& xi_grid, const Field2D& window, double nu1, double nu2,
                      WindowExtension ext, Op op) {
  const GridSpec& wg = window.grid();
  const long t1 = lattice_offset(xi_grid.axis1, wg.axis1, nu1);
  const long t2 = lattice_offset(xi_grid.axis2, wg.axis2, nu2);
  Field2D out{xi_grid};
  for (std::size_t i2 = 0; i2 < xi_grid.axis2.n; ++i2) {
    const long j2 = window_index(i2, t2, wg.axis2.n, ext);
    for (std::size_t i1 = 0; i1 < xi_grid.axis1.n; ++i1) {
      const long j1 = window_index(i1, t1, wg.axis1.n, ext);
      const Biquaternion phi = (j1 < 0 || j2 < 0)
                                   ? Biquaternion{}
                                   : window.at(static_cast<std::size_t>(j1),
                                               static_cast<std::size_t>(j2));
      out.at(i1, i2) = op(i1, i2, phi);
    }
  }
  return out;
}

double window_energy(const Field2D& window) {
  double e = 0.0;
  for (const auto& v : window.values()) e += norm_sq(v);
  return e * window.grid().cell_area();
}

// Checks every nu of the lattice once up front so errors surface before work.
void check_nu_grid(const GridSpec& xi_grid, const Field2D& window, const GridSpec& nu_grid) {
  nu_grid.validate();
  for (std::size_t v = 0; v < nu_grid.axis1.n; ++v) {
    lattice_offset(xi_grid.axis1, window.grid().axis1, nu_grid.axis1.coord(v));
  }
  for (std::size_t v = 0; v < nu_grid.axis2.n; ++v) {
    lattice_offset(xi_grid.axis2, window.grid().axis2, nu_grid.axis2.coord(v));
  }
}

void check_windowed(const Field2D& f, const Field2D& window, const TransformConfig& cfg,
                    const GridSpec& omega_grid, const GridSpec& nu_grid) {
  cfg.validate();
  require_nonzero_window(window);
  check_nu_grid(f.grid(), window, nu_grid);
  omega_grid.validate();
  if (cfg.path == TransformPath::Fast && cfg.fault == KernelFault::None) {
    require_grid(omega_grid, dual_grid(f.grid(), cfg.m1, cfg.m2), "frequency grid");
  }
}

}  // namespace

void TransformConfig::validate() const {
  require_nondegenerate(m1);
  require_nondegenerate(m2);
}

Field2D rbiqft_direct(const Field2D& f, const RootOfMinusOne& mu, const GridSpec& omega_grid) {
  omega_grid.validate();
  const GridSpec& g = f.grid();
  Field2D out{omega_grid};
  const double weight = g.cell_area();
  parallel_for(omega_grid.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      const std::size_t p1 = idx % omega_grid.axis1.n, p2 = idx / omega_grid.axis1.n;
      const double w1 = omega_grid.axis1.coord(p1), w2 = omega_grid.axis2.coord(p2);
      Biquaternion acc{};
      for (std::size_t i2 = 0; i2 < g.axis2.n; ++i2) {
        for (std::size_t i1 = 0; i1 < g.axis1.n; ++i1) {
          const double phase = w1 * g.axis1.coord(i1) + w2 * g.axis2.coord(i2);
          acc += rotate_right(f.at(i1, i2), mu.value(), -phase);
        }
      }
      out.at(p1, p2) = acc * weight;
    }
  });
  return out;
}

Field2D rbiqlct_direct(const Field2D& f, const TransformConfig& cfg, const GridSpec& omega_grid) {
  TransformConfig direct = cfg;
  direct.path = TransformPath::Direct;
  return forward_impl(f, direct, omega_grid, true);
}

Field2D rbiqlct_fast(const Field2D& f, const TransformConfig& cfg) {
  cfg.validate();
  return rbiqlct_fast(f, cfg, dual_grid(f.grid(), cfg.m1, cfg.m2));
}

Field2D rbiqlct_fast(const Field2D& f, const TransformConfig& cfg, const GridSpec& omega_grid) {
  cfg.validate();
  require_grid(omega_grid, dual_grid(f.grid(), cfg.m1, cfg.m2), "frequency grid");
  TransformConfig fast = cfg;
  fast.path = TransformPath::Fast;
  return forward_impl(f, fast, omega_grid, true);
}

Field2D rbiqlct(const Field2D& f, const TransformConfig& cfg, const GridSpec& omega_grid) {
  return forward_impl(f, cfg, omega_grid, true);
}

Field2D rbiqlct_inverse(const Field2D& spectrum, const TransformConfig& cfg,
                        const GridSpec& xi_grid) {
  return inverse_impl(spectrum, cfg, xi_grid, true);
}

GridSpec nu_lattice(const GridSpec& xi_grid, std::size_t stride) {
  if (stride == 0) throw Error(ErrorCode::InvalidArgument, "nu stride must be positive");
  xi_grid.validate();
  auto make = [stride](const Axis& a) {
    const std::size_t count = std::max<std::size_t>(2, (a.n + stride - 1) / stride);
    const double step = a.step * static_cast<double>(stride);
    const double first = -static_cast<double>(count / 2);
    return Axis{count, first * step, step};
  };
  return {make(xi_grid.axis1), make(xi_grid.axis2)};
}

Field2D window_product(const Field2D& f, const Field2D& window, double nu1, double nu2,
                       WindowExtension extension) {
  return shifted_apply(f.grid(), window, nu1, nu2, extension,
                       [&](std::size_t i1, std::size_t i2, const Biquaternion& phi) {
                         return f.at(i1, i2) * conjugate(phi);
                       });
}

Field2D shifted_window(const GridSpec& xi_grid, const Field2D& window, double nu1, double nu2,
                       WindowExtension extension) {
  return shifted_apply(xi_grid, window, nu1, nu2, extension,
                       [](std::size_t, std::size_t, const Biquaternion& phi) { return phi; });
}

void require_nonzero_window(const Field2D& window) {
  if (!(std::sqrt(window_energy(window)) >= 1e-14)) {
    throw Error(ErrorCode::ZeroWindow, "window has zero norm");
  }
}

WlctField biqwlct(const Field2D& f, const Field2D& window, const TransformConfig& cfg,
                  const GridSpec& omega_grid, const GridSpec& nu_grid) {
  check_windowed(f, window, cfg, omega_grid, nu_grid);
  WlctField out{omega_grid, nu_grid};
  const std::size_t nv1 = nu_grid.axis1.n;
  parallel_for(nu_grid.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t v = begin; v < end; ++v) {
      const std::size_t v1 = v % nv1, v2 = v / nv1;
      const Field2D h = window_product(f, window, nu_grid.axis1.coord(v1),
                                       nu_grid.axis2.coord(v2), cfg.window_extension);
      out.slice(v1, v2) = forward_impl(h, cfg, omega_grid, false);
    }
  });
  return out;
}

void biqwlct_stream(const Field2D& f, const Field2D& window, const TransformConfig& cfg,
                    const GridSpec& omega_grid, const GridSpec& nu_grid,
                    const std::function<void(std::size_t, std::size_t, Field2D&&)>& sink) {
  check_windowed(f, window, cfg, omega_grid, nu_grid);
  for (std::size_t v2 = 0; v2 < nu_grid.axis2.n; ++v2) {
    for (std::size_t v1 = 0; v1 < nu_grid.axis1.n; ++v1) {
      const Field2D h = window_product(f, window, nu_grid.axis1.coord(v1),
                                       nu_grid.axis2.coord(v2), cfg.window_extension);
      sink(v1, v2, forward_impl(h, cfg, omega_grid, true));
    }
  }
}

Field2D biqwlct_inverse(const WlctField& transform, const Field2D& window,
                        const TransformConfig& cfg, const GridSpec& xi_grid) {
  cfg.validate();
  require_nonzero_window(window);
  const GridSpec& nu_grid = transform.nu_grid();
  check_nu_grid(xi_grid, window, nu_grid);
  require_grid(transform.omega_grid(), dual_grid(xi_grid, cfg.m1, cfg.m2), "frequency grid");

  const std::size_t nv1 = nu_grid.axis1.n;
  std::vector<Field2D> parts(nu_grid.size(), Field2D{xi_grid});
  parallel_for(nu_grid.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t v = begin; v < end; ++v) {
      const std::size_t v1 = v % nv1, v2 = v / nv1;
      const Field2D back = inverse_impl(transform.slice(v1, v2), cfg, xi_grid, false);
      parts[v] = shifted_apply(xi_grid, window, nu_grid.axis1.coord(v1), nu_grid.axis2.coord(v2),
                               cfg.window_extension,
                               [&](std::size_t i1, std::size_t i2, const Biquaternion& phi) {
                                 return back.at(i1, i2) * phi;
                               });
    }
  });
  // Summed in lattice order so the result does not depend on the thread count.
  Field2D out{xi_grid};
  for (const auto& part : parts) {
    for (std::size_t i = 0; i < out.size(); ++i) out.values()[i] += part.values()[i];
  }
  const double scale = nu_grid.cell_area() / window_energy(window);
  for (auto& v : out.values()) v *= scale;
  return out;
}

}  // namespace biqwlct
