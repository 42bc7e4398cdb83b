#include "biqwlct/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "biqwlct/analysis.hpp"
#include "biqwlct/error.hpp"

namespace biqwlct {

// --- report ---------------------------------------------------------------

void VerificationReport::add(std::string id, double residual, double tolerance, std::string notes) {
  const bool pass = residual <= tolerance;  // false for NaN
  rows_.push_back({std::move(id), residual, tolerance, pass, true, std::move(notes)});
}

void VerificationReport::add_measured(std::string id, double value, std::string notes) {
  std::string text = "measured only";
  if (!notes.empty()) text += ": " + notes;
  rows_.push_back({std::move(id), value, std::numeric_limits<double>::infinity(), true, false,
                   std::move(text)});
}

bool VerificationReport::all_mandatory_passed() const noexcept { return failures() == 0; }

std::size_t VerificationReport::failures() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      rows_.begin(), rows_.end(), [](const CheckResult& r) { return r.mandatory && !r.pass; }));
}

const CheckResult* VerificationReport::find(const std::string& id) const noexcept {
  for (const auto& r : rows_) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

std::string format_row(const CheckResult& row) {
  char residual[32];
  char tolerance[32];
  std::snprintf(residual, sizeof residual, "%.6e", row.residual);
  if (std::isinf(row.tolerance)) {
    std::snprintf(tolerance, sizeof tolerance, "inf");
  } else {
    std::snprintf(tolerance, sizeof tolerance, "%.6e", row.tolerance);
  }
  std::string notes = row.notes;
  std::replace(notes.begin(), notes.end(), '\t', ' ');
  std::replace(notes.begin(), notes.end(), '\n', ' ');
  return row.id + '\t' + residual + '\t' + tolerance + '\t' + (row.pass ? "PASS" : "FAIL") + '\t' +
         notes;
}

std::string VerificationReport::to_text() const {
  std::string out;
  for (const auto& r : rows_) out += format_row(r) + '\n';
  return out;
}

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(const char* format, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, format, a);
  return buf;
}

std::string fmt(const char* format, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, format, a, b);
  return buf;
}

double rel(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

// Shared state of one run.
class Suite {
 public:
  explicit Suite(const VerifyOptions& opt) : opt_(opt), rng_(opt.seed) {}

  VerificationReport run() {
    if (!opt_.zero_signals) {
      algebra();
      exponential();
      kernel();
    }
    fast_vs_direct();
    lct_inverse();
    windowed_basics();
    windowed_inverse();
    plancherel_and_orthogonality();
    parity();
    shift();
    heisenberg();
    windowed_uncertainty();
    haar_example();
    return std::move(report_);
  }

 private:
  bool small() const { return opt_.scale == VerifyScale::Small; }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>{lo, hi}(rng_); }

  Biquaternion random_bq(double scale = 1.0) {
    std::normal_distribution<double> normal;
    std::array<double, 8> r{};
    for (auto& x : r) x = normal(rng_) * scale;
    return Biquaternion::from_reals(r);
  }

  Biquaternion random_real_quaternion() {
    std::normal_distribution<double> normal;
    return {normal(rng_), normal(rng_), normal(rng_), normal(rng_)};
  }

  Field2D signal(Field2D f) const {
    if (opt_.zero_signals) return Field2D{f.grid()};
    return f;
  }

  Field2D random_signal(const GridSpec& g, double taper = 0.5) {
    const std::uint64_t seed = rng_();
    return signal(make_random_field(g, seed, taper));
  }

  TransformConfig config(const LctParam& m1, const LctParam& m2, const RootOfMinusOne& mu,
                         TransformPath path) const {
    TransformConfig c;
    c.m1 = m1;
    c.m2 = m2;
    c.mu = mu;
    c.path = path;
    c.fault = opt_.fault;
    return c;
  }

  static std::vector<LctParam> parameter_sets() {
    return {LctParam::make(1, 1, 0, 1), LctParam::make(0, 1, -1, 0),
            LctParam::make(0.8, 0.6, -0.6, 0.8), LctParam::make(1, -1, 0, 1),
            LctParam::make(0.5, -2, 0.25, 1)};
  }

  static RootOfMinusOne unit_quaternion_root() {
    const double s = 1.0 / std::sqrt(3.0);
    return RootOfMinusOne::make({0.0, s, s, s});
  }

  static RootOfMinusOne complex_root() {
    return RootOfMinusOne::make({0.0, std::sqrt(2.0), kImagUnit, 0.0});
  }

  // --- algebra --------------------------------------------------------------

  void algebra() {
    const Biquaternion one{1.0}, i = Biquaternion::unit_i(), j = Biquaternion::unit_j(),
                       k = Biquaternion::unit_k(), I = Biquaternion::unit_I();
    double table = 0.0;
    auto chk = [&](const Biquaternion& a, const Biquaternion& b) {
      table = std::max(table, max_abs_diff(a, b));
    };
    chk(i * i, -one);
    chk(j * j, -one);
    chk(k * k, -one);
    chk(i * j * k, -one);
    chk(i * j, k);
    chk(j * k, i);
    chk(k * i, j);
    chk(j * i, -k);
    chk(k * j, -i);
    chk(i * k, -j);
    chk(I * I, -one);
    for (const auto& u : {i, j, k}) chk(I * u, u * I);
    report_.add("algebra.hamilton_table", table, 0.0, "basis products i j k I");

    const std::size_t count = 10000;
    double invol = 0.0, bar = 0.0, tilde = 0.0, check = 0.0, check_rev = 0.0, normmul = 0.0,
           cyclic = 0.0, split = 0.0;
    const RootOfMinusOne gamma = RootOfMinusOne::i();
    const RootOfMinusOne nu = RootOfMinusOne::j();
    for (std::size_t n = 0; n < count; ++n) {
      const Biquaternion h = random_bq(), g = random_bq(), q = random_bq();
      for (auto kind : {Conjugation::Quaternion, Conjugation::Complex, Conjugation::Biquaternion}) {
        invol = std::max(invol, max_abs_diff(conjugate(conjugate(h, kind), kind), h));
      }
      bar = std::max(bar, max_abs_diff(conjugate(h * g), conjugate(g) * conjugate(h)));
      tilde = std::max(tilde, max_abs_diff(conjugate(h * g, Conjugation::Quaternion),
                                           conjugate(g, Conjugation::Quaternion) *
                                               conjugate(h, Conjugation::Quaternion)));
      const Biquaternion ch = conjugate(h, Conjugation::Complex);
      const Biquaternion cg = conjugate(g, Conjugation::Complex);
      check = std::max(check, max_abs_diff(conjugate(h * g, Conjugation::Complex), ch * cg));
      check_rev = std::max(check_rev, max_abs_diff(conjugate(h * g, Conjugation::Complex), cg * ch));
      const Biquaternion p = random_real_quaternion(), r = random_real_quaternion();
      normmul = std::max(normmul, rel(norm(p * r), norm(p) * norm(r)));
      cyclic = std::max(cyclic, std::abs((h * g * q).scalar() - (g * q * h).scalar()));
      const auto sp = split_simplex_perplex(h, gamma, nu);
      split = std::max(split, max_abs_diff(sp.simplex + sp.perplex, h));
    }
    report_.add("algebra.involutions", invol, 1e-12, "all three conjugations applied twice");
    report_.add("algebra.bar_antihomomorphism", bar, 1e-12);
    report_.add("algebra.tilde_antihomomorphism", tilde, 1e-12);
    report_.add("algebra.check_homomorphism", check, 1e-12,
                "complex conjugation keeps the factor order");
    report_.add_measured("algebra.check_reversed_order", check_rev,
                         "complex conjugation with reversed factors");
    report_.add("algebra.norm_multiplicative_real", normmul, 1e-12, "real quaternions, relative");
    report_.add("algebra.cyclic_scalar", cyclic, 1e-12);
    report_.add("algebra.simplex_perplex_sum", split, 1e-12, "gamma = i, nu = j");
  }

  // --- exponential --------------------------------------------------------

  static Biquaternion exp_series(const Biquaternion& h) {
    Biquaternion term{1.0}, sum{1.0};
    for (int n = 1; n < 40; ++n) {
      term = term * h * (1.0 / n);
      sum += term;
    }
    return sum;
  }

  void exponential() {
    double worst = 0.0;
    for (int n = 0; n < 2000; ++n) {
      Biquaternion h = random_bq();
      const double radius = uniform(0.0, 4.0);
      h *= radius / std::max(norm(h), 1e-300);
      if (n % 4 == 0) {
        // tiny vector part exercises the series branch
        const double tiny = std::pow(10.0, uniform(-12.0, -6.0));
        Biquaternion v = random_bq().vector();
        v *= tiny / std::max(norm(v), 1e-300);
        h = Biquaternion{h.scalar()} + v;
      }
      worst = std::max(worst, max_abs_diff(exp(h), exp_series(h)));
    }
    report_.add("exp.closed_vs_series", worst, 1e-12, "norm <= 4, 40-term series");

    double root = 0.0;
    for (const auto& mu : {RootOfMinusOne::i(), RootOfMinusOne::j(), RootOfMinusOne::k(),
                           RootOfMinusOne::I(), unit_quaternion_root()}) {
      root = std::max(root, max_abs_diff(exp(mu.value() * kPi), Biquaternion{-1.0}));
    }
    report_.add("exp.root_times_pi", root, 1e-12, "i j k I and (i+j+k)/sqrt3");
  }

  // --- kernel ---------------------------------------------------------------

  void kernel() {
    const std::vector<RootOfMinusOne> real_roots = {RootOfMinusOne::i(), RootOfMinusOne::j(),
                                                    RootOfMinusOne::k(), unit_quaternion_root(),
                                                    RootOfMinusOne::I()};
    const RootOfMinusOne cplx = complex_root();
    double conj = 0.0, conj_cplx = 0.0, modulus = 0.0, modulus_cplx = 0.0, literal = 0.0,
           swapped = 0.0, det = 0.0;
    for (int n = 0; n < 1000; ++n) {
      LctParam m;
      for (;;) {
        const double a = uniform(-2, 2), b = uniform(-2, 2), c = uniform(-2, 2);
        if (std::abs(b) < 0.1 || std::abs(a) < 0.1) continue;
        m = LctParam{a, b, c, (1.0 + b * c) / a};
        break;
      }
      const double xi = uniform(-5, 5), om = uniform(-5, 5);
      const LctParam inv = inverse_param(m);
      det = std::max(det, std::abs(inv.det() - 1.0) / std::max(1.0, std::abs(m.a * m.d)));
      for (const auto& mu : real_roots) {
        const Biquaternion k = kernel_eval(m, mu, xi, om);
        conj = std::max(conj, max_abs_diff(conjugate(k), kernel_eval(m, mu.negated(), xi, om)));
        modulus = std::max(modulus, std::abs(norm_sq(k) * 2.0 * kPi * std::abs(m.b) - 1.0));
        literal = std::max(literal, max_abs_diff(kernel_eval(m, mu.negated(), xi, om),
                                                 kernel_eval(inv, mu, xi, om)));
        swapped = std::max(swapped, max_abs_diff(kernel_eval(m, mu.negated(), xi, om),
                                                 kernel_eval(inv, mu, om, xi)));
      }
      const Biquaternion kc = kernel_eval(m, cplx, xi, om);
      conj_cplx = std::max(conj_cplx, max_abs_diff(conjugate(kc), kernel_eval(m, cplx.negated(), xi, om)));
      modulus_cplx = std::max(modulus_cplx, std::abs(norm_sq(kc) * 2.0 * kPi * std::abs(m.b) - 1.0));
    }
    report_.add("kernel.conjugation", conj, 1e-14, "roots i j k (i+j+k)/sqrt3 I");
    report_.add_measured("kernel.conjugation.complex_root", conj_cplx,
                         "root sqrt2 i + I j; conj(mu) != -mu");
    report_.add("kernel.modulus", modulus, 1e-14, "norm_sq * 2 pi |b| = 1");
    report_.add_measured("kernel.modulus.complex_root", modulus_cplx,
                         "root sqrt2 i + I j is not unimodular");
    report_.add_measured("kernel.inverse_param.literal", literal,
                         "K^{-mu}_M(xi,w) vs K^{mu}_{M^-1}(xi,w)");
    report_.add_measured("kernel.inverse_param.swapped", swapped,
                         "K^{-mu}_M(xi,w) vs K^{mu}_{M^-1}(w,xi); off by exp(-mu pi/2)");
    report_.add("kernel.inverse_param.det", det, 1e-14);
  }

  // --- BiQLCT ---------------------------------------------------------------

  void fast_vs_direct() {
    const auto sets = parameter_sets();
    const std::vector<RootOfMinusOne> thetas = {RootOfMinusOne::i(), RootOfMinusOne::j(),
                                                unit_quaternion_root(), complex_root(),
                                                RootOfMinusOne::I()};
    std::vector<std::size_t> sizes = {16};
    if (!small()) sizes.push_back(32);
    double worst = 0.0;
    for (std::size_t n : sizes) {
      const GridSpec g = GridSpec::symmetric(n, n, 0.5, 0.4);
      for (std::size_t s = 0; s < sets.size(); ++s) {
        TransformConfig cfg = config(sets[s], sets[(s + 1) % sets.size()], RootOfMinusOne::i(),
                                     TransformPath::Direct);
        cfg.theta = thetas[s];
        cfg.fault = KernelFault::None;
        const Field2D f = random_signal(g);
        const GridSpec w = dual_grid(g, cfg.m1, cfg.m2);
        worst = std::max(worst, max_abs_diff(rbiqlct_fast(f, cfg), rbiqlct_direct(f, cfg, w)));
      }
    }
    report_.add("lct.fast_vs_direct", worst, 1e-10,
                small() ? "16x16, 5 parameter sets incl b<0" : "16x16 and 32x32, 5 sets incl b<0");
  }

  // F -> f by the literal reading with M^{-1} kernels, arguments as written
  // (swap = false) or exchanged.
  static Field2D literal_inverse(const Field2D& spec, const TransformConfig& cfg,
                                 const GridSpec& xi, bool swap) {
    const LctParam i1 = inverse_param(cfg.m1), i2 = inverse_param(cfg.m2);
    Field2D out{xi};
    const GridSpec& w = spec.grid();
    for (std::size_t m2 = 0; m2 < xi.axis2.n; ++m2) {
      for (std::size_t m1 = 0; m1 < xi.axis1.n; ++m1) {
        Biquaternion acc{};
        const double x1 = xi.axis1.coord(m1), x2 = xi.axis2.coord(m2);
        for (std::size_t p2 = 0; p2 < w.axis2.n; ++p2) {
          const double o2 = w.axis2.coord(p2);
          const Biquaternion k2 = swap ? kernel_eval(i2, cfg.axis2_root(), o2, x2)
                                       : kernel_eval(i2, cfg.axis2_root(), x2, o2);
          for (std::size_t p1 = 0; p1 < w.axis1.n; ++p1) {
            const double o1 = w.axis1.coord(p1);
            const Biquaternion k1 = swap ? kernel_eval(i1, cfg.mu, o1, x1)
                                         : kernel_eval(i1, cfg.mu, x1, o1);
            acc += spec.at(p1, p2) * conjugate(k1 * k2);
          }
        }
        out.at(m1, m2) = acc * w.cell_area();
      }
    }
    return out;
  }

  Field2D bandlimited(const GridSpec& g) {
    Field2D f{g};
    for (int q = 0; q < 4; ++q) {
      const Biquaternion c = random_bq();
      const double k1 = static_cast<double>(q + 1), k2 = static_cast<double>(3 - q);
      const double ph = uniform(0, 2 * kPi);
      for (std::size_t i2 = 0; i2 < g.axis2.n; ++i2) {
        for (std::size_t i1 = 0; i1 < g.axis1.n; ++i1) {
          const double t = 2 * kPi * (k1 * static_cast<double>(i1) / static_cast<double>(g.axis1.n) +
                                      k2 * static_cast<double>(i2) / static_cast<double>(g.axis2.n));
          f.at(i1, i2) += c * std::cos(t + ph);
        }
      }
    }
    return signal(f);
  }

  void lct_inverse() {
    const auto sets = parameter_sets();
    const GridSpec g16 = GridSpec::symmetric(16, 16, 0.5, 0.5);
    double periodic = 0.0, periodic_fast = 0.0, negative_b = 0.0;
    for (std::size_t s = 0; s < sets.size(); ++s) {
      TransformConfig cfg = config(sets[s], sets[(s + 2) % sets.size()], RootOfMinusOne::i(),
                                   TransformPath::Direct);
      if (s == 3) cfg.mu = complex_root();
      if (s == 4) cfg.theta = RootOfMinusOne::k();
      const Field2D f = bandlimited(g16);
      const GridSpec w = dual_grid(g16, cfg.m1, cfg.m2);
      const double e = relative_l2(rbiqlct_inverse(rbiqlct(f, cfg, w), cfg, g16), f);
      periodic = std::max(periodic, e);
      if (sets[s].b < 0.0) negative_b = std::max(negative_b, e);
      TransformConfig fast = cfg;
      fast.path = TransformPath::Fast;
      periodic_fast = std::max(periodic_fast, relative_l2(rbiqlct_inverse(rbiqlct(f, fast, w), fast, g16), f));
    }
    report_.add("lct.inverse.periodic_direct", periodic, 1e-9, "bandlimited lattice signals, 5 sets");
    report_.add("lct.inverse.periodic_fast", periodic_fast, 1e-9);
    report_.add("lct.inverse.negative_b", negative_b, 1e-9, "fixed -pi/4 offset for b<0");

    // Gaussian on a resolved 32x32 grid
    const std::size_t n = 32;
    const double step = std::sqrt(2 * kPi / static_cast<double>(n));
    const GridSpec g32 = GridSpec::symmetric(n, n, step, step);
    const TransformConfig cfg = config(sets[0], sets[2], RootOfMinusOne::i(), TransformPath::Direct);
    const Field2D gauss = signal(make_gaussian(1.0, 0.5, 0.5, g32));
    const GridSpec w32 = dual_grid(g32, cfg.m1, cfg.m2);
    const Field2D spec = rbiqlct(gauss, cfg, w32);
    report_.add("lct.inverse.gaussian", relative_l2(rbiqlct_inverse(spec, cfg, g32), gauss), 1e-3,
                "32x32, alpha = 1/2");

    // linearity of the inverse
    const Field2D fa = random_signal(g16), fb = random_signal(g16);
    const GridSpec w16 = dual_grid(g16, cfg.m1, cfg.m2);
    Field2D combo{w16};
    const Field2D sa = rbiqlct(fa, cfg, w16), sb = rbiqlct(fb, cfg, w16);
    for (std::size_t i = 0; i < combo.size(); ++i) {
      combo.values()[i] = sa.values()[i] * 0.7 - sb.values()[i] * 1.3;
    }
    const Field2D ia = rbiqlct_inverse(sa, cfg, g16), ib = rbiqlct_inverse(sb, cfg, g16);
    Field2D expect{g16};
    for (std::size_t i = 0; i < expect.size(); ++i) {
      expect.values()[i] = ia.values()[i] * 0.7 - ib.values()[i] * 1.3;
    }
    report_.add("lct.inverse.linearity", max_abs_diff(rbiqlct_inverse(combo, cfg, g16), expect), 1e-13);

    // the two literal readings of the inverse formula
    TransformConfig clean = cfg;
    clean.fault = KernelFault::None;
    const Field2D f = random_signal(g16);
    const Field2D sf = rbiqlct(f, clean, w16);
    report_.add_measured("lct.inverse.literal_minv", relative_l2(literal_inverse(sf, clean, g16, false), f),
                         "conj(K_{M^-1}(xi,w)) as written");
    report_.add_measured("lct.inverse.literal_minv_swapped",
                         relative_l2(literal_inverse(sf, clean, g16, true), f),
                         "conj(K_{M^-1}(w,xi))");

    // relation to the Fourier transform for a = d = 0, b = 1
    const LctParam ft = LctParam::make(0, 1, -1, 0);
    TransformConfig fcfg = config(ft, ft, RootOfMinusOne::j(), TransformPath::Direct);
    fcfg.fault = KernelFault::None;
    const Field2D lf = rbiqlct(f, fcfg, w16);
    Field2D viaft = rbiqft_direct(f, fcfg.mu, w16);
    const Biquaternion factor = exp(fcfg.mu.value() * (-kPi / 2.0)) * (1.0 / (2.0 * kPi));
    for (auto& v : viaft.values()) v = v * factor;
    report_.add("lct.fourier_relation", relative_l2(lf, viaft), 1e-12,
                "M = (0,1,-1,0): L f = F f e^{-mu pi/2} / 2pi");
  }

  // --- windowed ---------------------------------------------------------------

  static GridSpec window_grid() { return GridSpec::symmetric(16, 16, 0.25, 0.25); }

  TransformConfig windowed_config(TransformPath path, WindowExtension ext) const {
    TransformConfig c = config(LctParam::make(1, 1, 0, 1), LctParam::make(0.8, 0.6, -0.6, 0.8),
                               RootOfMinusOne::i(), path);
    c.window_extension = ext;
    return c;
  }

  static GridSpec strided_nu(const GridSpec& g, std::size_t stride) { return nu_lattice(g, stride); }

  static double wlct_max_diff(const WlctField& a, const WlctField& b) {
    double m = 0.0;
    for (std::size_t s = 0; s < a.slices().size(); ++s) {
      m = std::max(m, max_abs_diff(a.slices()[s], b.slices()[s]));
    }
    return m;
  }

  void windowed_basics() {
    const GridSpec g = window_grid();
    const GridSpec nu = strided_nu(g, 4);
    const Field2D phi = make_gaussian(1.0, 1.0, 2.0, g);
    TransformConfig cfg = windowed_config(TransformPath::Direct, WindowExtension::Zero);
    const GridSpec w = dual_grid(g, cfg.m1, cfg.m2);
    const Field2D f = random_signal(g), h = random_signal(g);

    Field2D combo{g};
    for (std::size_t i = 0; i < combo.size(); ++i) {
      combo.values()[i] = f.values()[i] * 2.5 + h.values()[i] * (-0.5);
    }
    const WlctField wf = biqwlct(f, phi, cfg, w, nu), wh = biqwlct(h, phi, cfg, w, nu);
    const WlctField wc = biqwlct(combo, phi, cfg, w, nu);
    double lin = 0.0;
    for (std::size_t s = 0; s < wc.slices().size(); ++s) {
      for (std::size_t i = 0; i < wc.slices()[s].size(); ++i) {
        const Biquaternion e = wf.slices()[s].values()[i] * 2.5 + wh.slices()[s].values()[i] * (-0.5);
        lin = std::max(lin, max_abs_diff(wc.slices()[s].values()[i], e));
      }
    }
    report_.add("wlct.linearity", lin, 1e-12, "direct path, nu stride 4");

    TransformConfig fast = cfg;
    fast.path = TransformPath::Fast;
    report_.add("wlct.fast_vs_direct", wlct_max_diff(biqwlct(f, phi, fast, w, nu), wf), 1e-10);

    Field2D ones{g};
    for (auto& v : ones.values()) v = 1.0;
    TransformConfig per = fast;
    per.window_extension = WindowExtension::Periodic;
    const WlctField wu = biqwlct(f, ones, per, w, nu);
    const Field2D lf = rbiqlct(f, per, w);
    double unit = 0.0;
    for (const auto& s : wu.slices()) unit = std::max(unit, max_abs_diff(s, lf));
    report_.add("wlct.unit_window", unit, 1e-12, "phi = 1: every nu slice equals L f");
  }

  void windowed_inverse() {
    const GridSpec g = window_grid();
    const GridSpec nu = nu_lattice(g, 1);
    const Field2D f = random_signal(g);
    const TransformConfig per = windowed_config(TransformPath::Fast, WindowExtension::Periodic);
    const GridSpec w = dual_grid(g, per.m1, per.m2);

    double periodic = 0.0;
    for (const Field2D& phi : {make_gaussian(1.0, 1.0, 2.0, g), make_haar_window(g)}) {
      const WlctField wf = biqwlct(f, phi, per, w, nu);
      periodic = std::max(periodic, relative_l2(biqwlct_inverse(wf, phi, per, g), f));
    }
    report_.add("wlct.inverse.periodic", periodic, 1e-9, "16x16, Gaussian and Haar windows");

    // doubling the window
    const Field2D phi = make_gaussian(1.0, 1.0, 2.0, g);
    Field2D phi2 = phi;
    for (auto& v : phi2.values()) v *= 2.0;
    const Field2D r1 = biqwlct_inverse(biqwlct(f, phi, per, w, nu), phi, per, g);
    const Field2D r2 = biqwlct_inverse(biqwlct(f, phi2, per, w, nu), phi2, per, g);
    report_.add("wlct.window_scaling", relative_l2(r2, r1), 1e-12);

    // truncated: zero extension, nu running over the signal lattice only
    const Truncated t = truncated_setup();
    const WlctField wg = biqwlct(t.f, t.phi, t.cfg, t.omega, t.xi);
    report_.add("wlct.inverse.truncated", relative_l2(biqwlct_inverse(wg, t.phi, t.cfg, t.xi), t.f),
                1e-2, "Gaussian alpha 1/2, step 1/2, window alpha 1, nu on the signal lattice");
  }

  // 16x16 signal with a window sampled on the odd integer-centred lattice, so
  // the admissible shifts are exactly the signal sample positions.
  struct Truncated {
    GridSpec xi;
    GridSpec omega;
    TransformConfig cfg;
    Field2D f;
    Field2D phi;
  };

  Truncated truncated_setup() const {
    const GridSpec xi = GridSpec::symmetric(16, 16, 0.5, 0.5);
    const TransformConfig cfg = windowed_config(TransformPath::Fast, WindowExtension::Zero);
    return {xi, dual_grid(xi, cfg.m1, cfg.m2), cfg, signal(make_gaussian(1.0, 0.5, 0.5, xi)),
            make_gaussian(1.0, 1.0, 1.0, GridSpec::symmetric(17, 17, 0.5, 0.5))};
  }

  void plancherel_and_orthogonality() {
    const GridSpec g = window_grid();
    const GridSpec nu = nu_lattice(g, 1);
    const TransformConfig per = windowed_config(TransformPath::Fast, WindowExtension::Periodic);
    const GridSpec w = dual_grid(g, per.m1, per.m2);
    const Field2D f = random_signal(g), h = random_signal(g);
    const Field2D phi = make_gaussian(1.0, 1.0, 2.0, g);
    const double ephi = energy(phi);

    const WlctField wf = biqwlct(f, phi, per, w, nu), wh = biqwlct(h, phi, per, w, nu);
    const double scale = std::sqrt(energy(f) * energy(h));
    const double inner = std::abs(wlct_inner(wf, wh) / ephi - scalar_inner(f, h));
    report_.add("plancherel.inner", scale > 0 ? inner / scale : inner, 1e-9,
                "periodized nu, normalized by ||phi||^2");
    report_.add("plancherel.energy", rel(wlct_inner(wf, wf) / ephi, energy(f)), 1e-9);

    const Truncated t = truncated_setup();
    const Field2D th = signal(make_gaussian(Complex{0.6, 0.8}, 0.7, 0.4, t.xi));
    const WlctField zf = biqwlct(t.f, t.phi, t.cfg, t.omega, t.xi);
    const WlctField zh = biqwlct(th, t.phi, t.cfg, t.omega, t.xi);
    const double zscale = std::sqrt(energy(t.f) * energy(th));
    const double zinner = std::abs(wlct_inner(zf, zh) / energy(t.phi) - scalar_inner(t.f, th));
    report_.add("plancherel.inner_truncated", zscale > 0 ? zinner / zscale : zinner, 1e-2,
                "zero extension, same corpus as wlct.inverse.truncated");

    // same window on both sides: Upsilon = ||Psi||^2
    report_.add("orthogonality.same_window", scale > 0 ? inner / scale : inner, 1e-9,
                "phi = Psi, Upsilon = sum |Psi(xi-nu)|^2 dnu");

    // distinct windows
    const Field2D psi = make_haar_window(g);
    const WlctField wpsi = biqwlct(h, psi, per, w, nu);
    const double lhs = wlct_inner(wf, wpsi);
    // Upsilon(xi) = sum_nu conj(phi(xi - nu)) Psi(xi - nu) dnu
    Field2D upsilon{g};
    for (std::size_t v2 = 0; v2 < nu.axis2.n; ++v2) {
      for (std::size_t v1 = 0; v1 < nu.axis1.n; ++v1) {
        const double n1 = nu.axis1.coord(v1), n2 = nu.axis2.coord(v2);
        const Field2D sp = shifted_window(g, phi, n1, n2, per.window_extension);
        const Field2D sq = shifted_window(g, psi, n1, n2, per.window_extension);
        for (std::size_t i = 0; i < upsilon.size(); ++i) {
          upsilon.values()[i] += conjugate(sp.values()[i]) * sq.values()[i] * nu.cell_area();
        }
      }
    }
    double corrected = 0.0, literal = 0.0;
    const double epsi = energy(psi);
    for (std::size_t i = 0; i < upsilon.size(); ++i) {
      corrected += (f.values()[i] * upsilon.values()[i] * conjugate(h.values()[i])).scalar().real();
      literal += (f.values()[i] * conjugate(h.values()[i])).scalar().real() * epsi;
    }
    corrected *= g.cell_area();
    literal *= g.cell_area();
    const double oscale = std::sqrt(energy(f) * energy(h) * ephi * epsi);
    auto norm_res = [&](double r) { return oscale > 0 ? std::abs(r) / oscale : std::abs(r); };
    report_.add("orthogonality.distinct_windows", norm_res(lhs - corrected), 1e-9,
                "Upsilon = sum conj(phi) Psi; Gaussian phi, Haar Psi");
    report_.add_measured("orthogonality.distinct_windows.literal", norm_res(lhs - literal),
                         "Upsilon from Psi alone");
  }

  // --- parity and shift ------------------------------------------------------

  static Field2D reflect(const Field2D& f) {
    Field2D out{f.grid()};
    for (std::size_t i2 = 0; i2 < f.n2(); ++i2) {
      for (std::size_t i1 = 0; i1 < f.n1(); ++i1) {
        out.at(i1, i2) = f.at(f.n1() - 1 - i1, f.n2() - 1 - i2);
      }
    }
    return out;
  }

  void parity() {
    const GridSpec g = window_grid();
    const double d = g.axis1.step;
    const GridSpec nu{{15, -7 * d, d}, {15, -7 * d, d}};
    const Field2D phi = make_haar_window(g);
    double worst = 0.0;
    const auto sets = parameter_sets();
    for (std::size_t s : {0u, 3u, 4u}) {
      TransformConfig cfg = config(sets[s], sets[(s + 1) % sets.size()], RootOfMinusOne::i(),
                                   TransformPath::Fast);
      cfg.theta = RootOfMinusOne::k();
      const GridSpec w = dual_grid(g, cfg.m1, cfg.m2);
      const Field2D f = random_signal(g);
      const WlctField a = biqwlct(reflect(f), reflect(phi), cfg, w, nu);
      const WlctField b = biqwlct(f, phi, cfg, w, nu);
      const std::size_t nw1 = w.axis1.n, nw2 = w.axis2.n, nv1 = nu.axis1.n, nv2 = nu.axis2.n;
      for (std::size_t v2 = 0; v2 < nv2; ++v2) {
        for (std::size_t v1 = 0; v1 < nv1; ++v1) {
          for (std::size_t p2 = 0; p2 < nw2; ++p2) {
            for (std::size_t p1 = 0; p1 < nw1; ++p1) {
              worst = std::max(worst, max_abs_diff(a.at(p1, p2, v1, v2),
                                                   b.at(nw1 - 1 - p1, nw2 - 1 - p2, nv1 - 1 - v1,
                                                        nv2 - 1 - v2)));
            }
          }
        }
      }
    }
    report_.add("parity", worst, 1e-11, "Haar window, symmetric grids, 3 parameter sets");
  }

  void shift() {
    const GridSpec g = window_grid();
    const double d = g.axis1.step;
    // random signal supported on the central 10x10 block
    Field2D f = random_signal(g);
    for (std::size_t i2 = 0; i2 < g.axis2.n; ++i2) {
      for (std::size_t i1 = 0; i1 < g.axis1.n; ++i1) {
        if (i1 < 3 || i1 > 12 || i2 < 3 || i2 > 12) f.at(i1, i2) = Biquaternion{};
      }
    }
    const long s1 = 2, s2 = -1;
    const double r1 = static_cast<double>(s1) * d, r2 = static_cast<double>(s2) * d;
    Field2D fr{g};
    for (std::size_t i2 = 0; i2 < g.axis2.n; ++i2) {
      for (std::size_t i1 = 0; i1 < g.axis1.n; ++i1) {
        const long j1 = static_cast<long>(i1) - s1, j2 = static_cast<long>(i2) - s2;
        if (j1 >= 0 && j2 >= 0 && j1 < 16 && j2 < 16) {
          fr.at(i1, i2) = f.at(static_cast<std::size_t>(j1), static_cast<std::size_t>(j2));
        }
      }
    }
    const Field2D phi = make_gaussian(1.0, 2.0, 1.0, g);
    const GridSpec nu{{5, -2 * d, d}, {5, -2 * d, d}};
    const GridSpec w{{12, -1.5, 0.25}, {12, -1.5, 0.25}};

    auto measure = [&](const TransformConfig& cfg) {
      const WlctField lhs = biqwlct(fr, phi, cfg, w, nu);
      const LctParam& m1 = cfg.m1;
      const LctParam& m2 = cfg.m2;
      const GridSpec wm{{w.axis1.n, w.axis1.origin - m1.a * r1, w.axis1.step},
                        {w.axis2.n, w.axis2.origin - m2.a * r2, w.axis2.step}};
      const GridSpec nm{{nu.axis1.n, nu.axis1.origin - r1, d}, {nu.axis2.n, nu.axis2.origin - r2, d}};
      const WlctField base = biqwlct(f, phi, cfg, wm, nm);
      double worst = 0.0, scale = 0.0;
      for (std::size_t v2 = 0; v2 < nu.axis2.n; ++v2) {
        for (std::size_t v1 = 0; v1 < nu.axis1.n; ++v1) {
          for (std::size_t p2 = 0; p2 < w.axis2.n; ++p2) {
            for (std::size_t p1 = 0; p1 < w.axis1.n; ++p1) {
              const double o1 = w.axis1.coord(p1), o2 = w.axis2.coord(p2);
              const Biquaternion e1 = exp(cfg.mu.value() * (m1.c * r1 * o1 - m1.a * m1.c * r1 * r1 / 2));
              const Biquaternion e2 =
                  exp(cfg.axis2_root().value() * (m2.c * r2 * o2 - m2.a * m2.c * r2 * r2 / 2));
              const Biquaternion rhs = base.at(p1, p2, v1, v2) * e1 * e2;
              worst = std::max(worst, max_abs_diff(lhs.at(p1, p2, v1, v2), rhs));
              scale = std::max(scale, norm(lhs.at(p1, p2, v1, v2)));
            }
          }
        }
      }
      return scale > 0 ? worst / scale : worst;
    };

    double worst = 0.0;
    for (const auto& [m1, m2, mu] :
         {std::tuple{LctParam::make(2, 1, 1, 1), LctParam::make(-1, 2, -1, 1), RootOfMinusOne::i()},
          std::tuple{LctParam::make(-1, 2, -1, 1), LctParam::make(1, -1, 0, 1), RootOfMinusOne::j()},
          std::tuple{LctParam::make(1, 1, 0, 1), LctParam::make(2, 1, 1, 1), unit_quaternion_root()}}) {
      worst = std::max(worst, measure(config(m1, m2, mu, TransformPath::Direct)));
    }
    report_.add("shift", worst, 1e-9,
                "literal phases e^{mu c r w} e^{-mu a c r^2/2}, integer a, single root");
    TransformConfig mixed =
        config(LctParam::make(2, 1, 1, 1), LctParam::make(-1, 2, -1, 1), RootOfMinusOne::i(),
               TransformPath::Direct);
    mixed.theta = RootOfMinusOne::j();
    report_.add_measured("shift.two_roots", measure(mixed),
                         "mu != theta: axis-1 phase does not commute past the axis-2 kernel");
  }

  // --- uncertainty ------------------------------------------------------------

  void heisenberg() {
    const std::size_t n = 64;
    double ineq = 0.0, near = 0.0;
    std::string near_notes;
    const std::vector<double> alphas = {0.25, 0.5, 1.0, 2.0};
    struct Case {
      LctParam m;
      bool equality;
    };
    const std::vector<Case> cases = {{LctParam::make(0, 1, -1, 0), true},
                                     {LctParam::make(0, 2, -0.5, 0), true},
                                     {LctParam::make(1, 1, 0, 1), false},
                                     {LctParam::make(0.8, -0.6, 0.6, 0.8), false}};
    double worst_ratio = 1.0;
    for (const auto& c : cases) {
      const double step = std::sqrt(2 * kPi * std::abs(c.m.b) / static_cast<double>(n));
      const GridSpec g = GridSpec::symmetric(n, n, step, step);
      const TransformConfig cfg = config(c.m, c.m, RootOfMinusOne::i(), TransformPath::Fast);
      for (double a : alphas) {
        const Field2D f = signal(make_gaussian(1.0, a, a, g));
        const HeisenbergReport r = lct_uncertainty(f, cfg, 1);
        const double deficit = r.rhs > 0 ? std::max(0.0, (r.rhs - r.lhs) / r.rhs) : 0.0;
        ineq = std::max(ineq, deficit);
        if (c.equality) {
          const double dev = r.rhs > 0 ? std::abs(r.ratio - 1.0) : 0.0;
          if (dev >= near) {
            near = dev;
            worst_ratio = r.ratio;
          }
        } else if (!opt_.zero_signals) {
          const double predicted = 1.0 + std::pow(c.m.a / (2.0 * a * c.m.b), 2);
          report_.add_measured("lct_uncertainty.ratio.a" + fmt("%g", c.m.a) + "_b" + fmt("%g", c.m.b) +
                                   "_alpha" + fmt("%g", a),
                               r.ratio, fmt("continuous value 1 + (a/(2 alpha b))^2 = %.6f", predicted));
        }
      }
    }
    report_.add("lct_uncertainty.inequality", ineq, 1e-6, "Gaussians alpha 1/4..2, 4 parameter sets, 64x64");
    report_.add("lct_uncertainty.gaussian_equality", near, 0.05,
                fmt("a = 0 sets, worst lhs/rhs = %.6f", worst_ratio));

    // moment identity over the windowed transform (periodized)
    const GridSpec g = window_grid();
    const TransformConfig per = windowed_config(TransformPath::Fast, WindowExtension::Periodic);
    const Field2D f = random_signal(g);
    const Field2D phi = make_gaussian(1.0, 1.0, 2.0, g);
    const WlctField wf = biqwlct(f, phi, per, dual_grid(g, per.m1, per.m2), nu_lattice(g, 1));
    double id = 0.0;
    for (int k : {1, 2}) id = std::max(id, windowed_moment_identity(wf, f, phi, per, k).relative_error);
    report_.add("moment_identity.windowed", id, 1e-9, "periodized nu, both axes");
  }

  void windowed_uncertainty() {
    const std::size_t n = small() ? 16 : 32;
    const GridSpec g = GridSpec::symmetric(n, n, 0.25, 0.25);
    std::vector<std::pair<std::string, Field2D>> signals = {
        {"gauss_half", make_gaussian(1.0, 0.5, 0.5, g)},
        {"gauss_aniso", make_gaussian(Complex{0.6, 0.8}, 1.0, 0.25, g)},
        {"random", make_random_field(g, opt_.seed + 7, 0.3)}};
    std::vector<std::pair<std::string, Field2D>> windows = {
        {"haar", make_haar_window(g)}, {"gauss", make_gaussian(1.0, 1.0, 1.0, g)}};
    const std::vector<std::pair<std::string, std::pair<LctParam, LctParam>>> params = {
        {"shear", {LctParam::make(1, 1, 0, 1), LctParam::make(1, 1, 0, 1)}},
        {"FT", {LctParam::make(0, 1, -1, 0), LctParam::make(0, 1, -1, 0)}},
        {"rot-negb", {LctParam::make(0.8, -0.6, 0.6, 0.8), LctParam::make(2, 1, 1, 1)}},
        {"scaled", {LctParam::make(1, 2, 0, 1), LctParam::make(0.5, -2, 0.25, 1)}}};
    std::size_t combos = 0, squared_ok = 0, single_ok = 0;
    double worst = 0.0;
    double min_sq = std::numeric_limits<double>::infinity(), min_single = min_sq;
    for (auto& [sname, sig] : signals) {
      const Field2D f = signal(sig);
      for (const auto& [wname, phi] : windows) {
        for (const auto& [pname, mm] : params) {
          const TransformConfig cfg =
              config(mm.first, mm.second, RootOfMinusOne::i(), TransformPath::Fast);
          const auto both = uncertainty_check_axes(f, phi, cfg);
          for (const auto& r : both) {
            ++combos;
            squared_ok += r.satisfied;
            single_ok += r.satisfied_single;
            const double v_sq = r.rhs > 0 ? std::max(0.0, (r.rhs - r.lhs) / r.rhs) : 0.0;
            const double v_single =
                r.rhs_single > 0 ? std::max(0.0, (r.rhs_single - r.lhs) / r.rhs_single) : 0.0;
            const double v = std::min(v_sq, v_single);
            worst = std::max(worst, v);
            if (r.rhs > 0) min_sq = std::min(min_sq, r.margin);
            if (r.rhs_single > 0) min_single = std::min(min_single, r.margin_single);
            const std::string form = r.satisfied && r.satisfied_single ? "both"
                                     : r.satisfied                     ? "phi^2 only"
                                     : r.satisfied_single              ? "phi^1 only"
                                                                       : "neither";
            report_.add("wlct_uncertainty." + sname + "." + wname + "." + pname + ".axis" +
                            std::to_string(r.axis),
                        v, 1e-12,
                        "holds: " + form + fmt("; lhs/rhs phi^2 = %.4g", r.margin) +
                            fmt(", phi^1 = %.4g", r.margin_single));
          }
        }
      }
    }
    if (std::isinf(min_sq)) min_sq = 0.0;
    if (std::isinf(min_single)) min_single = 0.0;
    report_.add("wlct_uncertainty.corpus", worst, 1e-12,
                std::to_string(combos) + " combinations; phi^2 form holds in " +
                    std::to_string(squared_ok) + ", phi^1 form in " + std::to_string(single_ok) +
                    fmt("; min margins %.4g / %.4g", min_sq, min_single));
  }

  // --- Haar example -------------------------------------------------------------

  // 1-D midpoint sums on a grid refine x finer: sum_x g(x) chi(x - nu) K(x, w) dx,
  // with the kernel written as a complex number for mu = i.
  static Complex haar_factor(double alpha, const LctParam& m, double lo, double hi, double nu,
                             double omega, const Axis& ax, int refine) {
    const double h = ax.step / refine;
    const double start = ax.origin - ax.step / 2 + h / 2;
    const std::size_t count = ax.n * static_cast<std::size_t>(refine);
    Complex acc{};
    for (std::size_t q = 0; q < count; ++q) {
      const double x = start + h * static_cast<double>(q);
      const double t = x - nu;
      if (t < lo || t >= hi) continue;
      const double ph = kernel_phase(m, x, omega).value;
      acc += std::exp(-alpha * x * x) * Complex{std::cos(ph), std::sin(ph)};
    }
    return acc * h * kernel_amplitude(m);
  }

  static Field2D haar_oracle_slice(double alpha, const LctParam& m, const GridSpec& xi,
                                   const GridSpec& w, double nu1, double nu2, int refine) {
    Field2D out{w};
    for (std::size_t p2 = 0; p2 < w.axis2.n; ++p2) {
      const double o2 = w.axis2.coord(p2);
      const Complex a2 = haar_factor(alpha, m, 0.0, 0.5, nu2, o2, xi.axis2, refine);
      const Complex b2 = haar_factor(alpha, m, 0.5, 1.0, nu2, o2, xi.axis2, refine);
      for (std::size_t p1 = 0; p1 < w.axis1.n; ++p1) {
        const double o1 = w.axis1.coord(p1);
        const Complex a1 = haar_factor(alpha, m, 0.0, 0.5, nu1, o1, xi.axis1, refine);
        const Complex b1 = haar_factor(alpha, m, 0.5, 1.0, nu1, o1, xi.axis1, refine);
        const Complex z = a1 * a2 - b1 * b2;
        out.at(p1, p2) = Biquaternion{z.real(), z.imag(), 0.0, 0.0};
      }
    }
    return out;
  }

  double haar_error(const GridSpec& xi, const GridSpec& w, const GridSpec& nu) {
    const double alpha = 0.5;
    const LctParam m = LctParam::make(1, 1, 0, 1);
    const TransformConfig cfg = config(m, m, RootOfMinusOne::i(), TransformPath::Direct);
    const Field2D f = signal(make_gaussian(1.0, alpha, alpha, xi));
    // window lattice wide enough to hold the Haar support for every shift
    const std::size_t wn = 2 * xi.axis1.n;
    const GridSpec wg = GridSpec::symmetric(wn, wn, xi.axis1.step, xi.axis2.step);
    const Field2D phi = make_haar_window(wg);
    double num = 0.0, den = 0.0;
    biqwlct_stream(f, phi, cfg, w, nu, [&](std::size_t v1, std::size_t v2, Field2D&& slice) {
      Field2D ref = haar_oracle_slice(alpha, m, xi, w, nu.axis1.coord(v1), nu.axis2.coord(v2), 4);
      if (opt_.zero_signals) ref = Field2D{w};
      for (std::size_t i = 0; i < slice.size(); ++i) {
        num += norm_sq(slice.values()[i] - ref.values()[i]);
        den += norm_sq(ref.values()[i]);
      }
    });
    return den > 0 ? std::sqrt(num / den) : std::sqrt(num);
  }

  void haar_example() {
    const std::size_t n = 16;
    const double d = 1.0 / 16.0;
    const GridSpec xi = GridSpec::symmetric(n, n, d, d);
    const GridSpec nu{{n, -8 * d, d}, {n, -8 * d, d}};
    const GridSpec w = GridSpec::symmetric(n, n, 2.0 / 15.0, 2.0 / 15.0);
    report_.add("haar_example", haar_error(xi, w, nu), 1e-3,
                "16x16, step 1/16, omega on [-1,1], vs 4x oversampled midpoint oracle");
    const GridSpec coarse = GridSpec::symmetric(n, n, 0.25, 0.25);
    const LctParam m = LctParam::make(1, 1, 0, 1);
    report_.add_measured("haar_example.dual_grid",
                         haar_error(coarse, dual_grid(coarse, m, m),
                                    GridSpec{{n, -8 * 0.25, 0.25}, {n, -8 * 0.25, 0.25}}),
                         "step 1/4 with its dual frequency grid");
  }

  VerifyOptions opt_;
  std::mt19937_64 rng_;
  VerificationReport report_;
};

}  // namespace

VerificationReport verify_all(const VerifyOptions& options) { return Suite{options}.run(); }

}  // namespace biqwlct
