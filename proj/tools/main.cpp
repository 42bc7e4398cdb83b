// biqwlct command-line front end: generate | transform | inverse | analyze | verify.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include "biqwlct/analysis.hpp"
#include "biqwlct/bqf_io.hpp"
#include "biqwlct/error.hpp"
#include "biqwlct/transform.hpp"
#include "biqwlct/verify.hpp"

namespace fs = std::filesystem;
using namespace biqwlct;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kInvalid = 2, kGrid = 3, kZeroWindow = 4 };

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::GridMismatch:
      return kGrid;
    case ErrorCode::ZeroWindow:
      return kZeroWindow;
    default:
      return kInvalid;
  }
}

std::vector<double> parse_reals(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, std::string("cannot parse ") + what + ": " + text);
    }
  }
  return out;
}

LctParam parse_param(const std::string& text) {
  const auto v = parse_reals(text, "LCT matrix");
  if (v.size() != 4) throw Error(ErrorCode::InvalidArgument, "LCT matrix needs a,b,c,d: " + text);
  const LctParam m = LctParam::make(v[0], v[1], v[2], v[3]);
  require_nondegenerate(m);
  return m;
}

RootOfMinusOne parse_root(const std::string& text) {
  if (text == "i") return RootOfMinusOne::i();
  if (text == "j") return RootOfMinusOne::j();
  if (text == "k") return RootOfMinusOne::k();
  if (text == "I") return RootOfMinusOne::I();
  if (text == "-i") return RootOfMinusOne::i().negated();
  if (text == "-j") return RootOfMinusOne::j().negated();
  if (text == "-k") return RootOfMinusOne::k().negated();
  if (text == "-I") return RootOfMinusOne::I().negated();
  const auto v = parse_reals(text, "root");
  if (v.size() != 8) {
    throw Error(ErrorCode::InvalidArgument, "root needs i|j|k|I or 8 reals (re,im of h0..h3)");
  }
  std::array<double, 8> r{};
  std::copy(v.begin(), v.end(), r.begin());
  return RootOfMinusOne::make(Biquaternion::from_reals(r), 1e-10);
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// --- shared transform flags ----------------------------------------------------

struct TransformFlags {
  std::string m1 = "1,1,0,1";
  std::string m2 = "1,1,0,1";
  std::string mu = "i";
  std::string theta;
  std::string path = "fast";
  bool periodic = false;
  bool fault = false;

  void attach(CLI::App* app) {
    app->add_option("--m1", m1, "axis-1 matrix a,b,c,d")->capture_default_str();
    app->add_option("--m2", m2, "axis-2 matrix a,b,c,d")->capture_default_str();
    app->add_option("--mu", mu, "root of -1: i|j|k|I or 8 reals")->capture_default_str();
    app->add_option("--theta", theta, "axis-2 root (defaults to --mu)");
    app->add_option("--path", path, "direct|fast")
        ->check(CLI::IsMember({"direct", "fast"}))
        ->capture_default_str();
    app->add_flag("--periodic", periodic, "wrap window shifts around the window lattice");
    app->add_flag("--inject-kernel-fault", fault)->group("");
  }

  TransformConfig config() const {
    TransformConfig c;
    c.m1 = parse_param(m1);
    c.m2 = parse_param(m2);
    c.mu = parse_root(mu);
    if (!theta.empty()) c.theta = parse_root(theta);
    c.path = path == "direct" ? TransformPath::Direct : TransformPath::Fast;
    c.window_extension = periodic ? WindowExtension::Periodic : WindowExtension::Zero;
    if (fault) c.fault = KernelFault::QuadrantSignFlip;
    return c;
  }
};

// --- derived views -----------------------------------------------------------------

fs::path with_suffix(const fs::path& base, const std::string& suffix) {
  return base.parent_path() / (base.stem().string() + suffix);
}

// 8-bit P5 image, rows from the largest axis-2 coordinate down; linear scale
// against the maximum, which goes into a sidecar line.
void write_pgm(const fs::path& path, const GridSpec& g, const std::vector<double>& mag) {
  const double peak = mag.empty() ? 0.0 : *std::max_element(mag.begin(), mag.end());
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  os << "P5\n" << g.axis1.n << ' ' << g.axis2.n << "\n255\n";
  for (std::size_t r = 0; r < g.axis2.n; ++r) {
    const std::size_t i2 = g.axis2.n - 1 - r;
    for (std::size_t i1 = 0; i1 < g.axis1.n; ++i1) {
      const double m = mag[i1 + g.axis1.n * i2];
      const long v = peak > 0.0 ? std::lround(255.0 * m / peak) : 0;
      os.put(static_cast<char>(static_cast<unsigned char>(std::clamp(v, 0L, 255L))));
    }
  }
  std::ofstream side(path.string() + ".txt", std::ios::trunc);
  side << "pgm linear 0..255 max_magnitude " << num(peak) << '\n';
  if (!os || !side) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
}

std::vector<double> magnitudes(const Field2D& f) {
  std::vector<double> m(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) m[i] = norm(f.values()[i]);
  return m;
}

void write_spectrum_views(const fs::path& out, const Field2D& spectrum) {
  const GridSpec& g = spectrum.grid();
  const auto mag = magnitudes(spectrum);
  std::ofstream csv(with_suffix(out, ".csv"), std::ios::trunc);
  csv << "omega1,omega2,magnitude\n";
  for (std::size_t i2 = 0; i2 < g.axis2.n; ++i2) {
    for (std::size_t i1 = 0; i1 < g.axis1.n; ++i1) {
      csv << num(g.axis1.coord(i1)) << ',' << num(g.axis2.coord(i2)) << ','
          << num(mag[i1 + g.axis1.n * i2]) << '\n';
    }
  }
  write_pgm(with_suffix(out, ".pgm"), g, mag);
}

std::string grid_line(const char* tag, const GridSpec& g) {
  return std::string(tag) + '\t' + std::to_string(g.axis1.n) + '\t' + std::to_string(g.axis2.n) +
         '\t' + num(g.axis1.origin) + '\t' + num(g.axis2.origin) + '\t' + num(g.axis1.step) + '\t' +
         num(g.axis2.step);
}

GridSpec parse_grid_line(const std::string& line, const char* tag) {
  std::stringstream ss(line);
  std::string t;
  GridSpec g;
  ss >> t >> g.axis1.n >> g.axis2.n >> g.axis1.origin >> g.axis2.origin >> g.axis1.step >>
      g.axis2.step;
  if (!ss || t != tag) throw Error(ErrorCode::Format, std::string("index file lacks ") + tag);
  return g;
}

// --- subcommands -----------------------------------------------------------------

struct GridFlags {
  std::size_t n1 = 32, n2 = 32;
  double step1 = 0.25, step2 = 0.25;
  std::optional<double> origin1, origin2;

  void attach(CLI::App* app) {
    app->add_option("--n1", n1, "samples along axis 1")->capture_default_str();
    app->add_option("--n2", n2, "samples along axis 2")->capture_default_str();
    app->add_option("--step1", step1, "spacing along axis 1")->capture_default_str();
    app->add_option("--step2", step2, "spacing along axis 2")->capture_default_str();
    app->add_option("--origin1", origin1, "first coordinate (default: symmetric grid)");
    app->add_option("--origin2", origin2, "first coordinate (default: symmetric grid)");
  }

  GridSpec grid() const {
    GridSpec g{{n1, 0.0, step1}, {n2, 0.0, step2}};
    g.validate();
    g.axis1.origin = origin1 ? *origin1 : Axis::symmetric(n1, step1).origin;
    g.axis2.origin = origin2 ? *origin2 : Axis::symmetric(n2, step2).origin;
    g.validate();
    return g;
  }
};

struct GenerateCmd {
  std::string kind = "gaussian";
  GridFlags grid;
  double alpha1 = 0.5, alpha2 = 0.5;
  std::string c0 = "1";
  std::string at = "0,0";
  std::string value = "1";
  std::uint64_t seed = 1;
  double taper = 0.5;
  std::string out;

  void attach(CLI::App* app) {
    app->add_option("kind", kind, "gaussian|haar|impulse|random")
        ->check(CLI::IsMember({"gaussian", "haar", "impulse", "random"}))
        ->capture_default_str();
    grid.attach(app);
    app->add_option("--alpha1", alpha1)->capture_default_str();
    app->add_option("--alpha2", alpha2)->capture_default_str();
    app->add_option("--c0", c0, "Gaussian amplitude re[,im]")->capture_default_str();
    app->add_option("--at", at, "impulse position x1,x2")->capture_default_str();
    app->add_option("--value", value, "impulse value: 1 real or 8 reals")->capture_default_str();
    app->add_option("--seed", seed)->capture_default_str();
    app->add_option("--taper", taper, "random-field envelope width factor")->capture_default_str();
    app->add_option("--out", out, "output .bqf")->required();
  }

  int run() const {
    const GridSpec g = grid.grid();
    std::optional<Field2D> f;
    if (kind == "gaussian") {
      const auto c = parse_reals(c0, "--c0");
      if (c.empty() || c.size() > 2) throw Error(ErrorCode::InvalidArgument, "--c0 takes re[,im]");
      f = make_gaussian(Complex{c[0], c.size() == 2 ? c[1] : 0.0}, alpha1, alpha2, g);
    } else if (kind == "haar") {
      f = make_haar_window(g);
    } else if (kind == "impulse") {
      const auto p = parse_reals(at, "--at");
      const auto v = parse_reals(value, "--value");
      if (p.size() != 2) throw Error(ErrorCode::InvalidArgument, "--at takes x1,x2");
      Biquaternion h;
      if (v.size() == 1) {
        h = v[0];
      } else if (v.size() == 8) {
        std::array<double, 8> r{};
        std::copy(v.begin(), v.end(), r.begin());
        h = Biquaternion::from_reals(r);
      } else {
        throw Error(ErrorCode::InvalidArgument, "--value takes 1 or 8 reals");
      }
      f = make_impulse(g, p[0], p[1], h);
    } else {
      f = make_random_field(g, seed, taper);
    }
    write_bqf(out, *f);
    return kOk;
  }
};

struct TransformCmd {
  std::string in, window, out;
  TransformFlags flags;
  std::size_t nu_stride = 1;

  void attach(CLI::App* app) {
    app->add_option("input", in, "signal .bqf")->required();
    app->add_option("--window", window, "window .bqf (runs the windowed transform)");
    app->add_option("--nu-stride", nu_stride, "window shift stride in samples")
        ->capture_default_str();
    app->add_option("--out", out, "output .bqf (windowed: base name)")->required();
    flags.attach(app);
  }

  int run() const {
    const TransformConfig cfg = flags.config();
    const Field2D f = read_bqf(in);
    const GridSpec omega = dual_grid(f.grid(), cfg.m1, cfg.m2);
    if (window.empty()) {
      const Field2D spectrum = rbiqlct(f, cfg, omega);
      write_bqf(out, spectrum);
      write_spectrum_views(out, spectrum);
      return kOk;
    }
    const Field2D phi = read_bqf(window);
    require_nonzero_window(phi);
    const GridSpec nu = nu_lattice(f.grid(), nu_stride);
    const fs::path base = out;
    std::ofstream index(with_suffix(base, ".index"), std::ios::trunc);
    index << "BQF1-INDEX\n" << grid_line("xi", f.grid()) << '\n' << grid_line("omega", omega)
          << '\n' << grid_line("nu", nu) << '\n';
    std::ofstream csv(with_suffix(base, ".csv"), std::ios::trunc);
    csv << "omega1,omega2,nu1,nu2,magnitude\n";
    std::vector<double> peak(omega.size(), 0.0);
    biqwlct_stream(f, phi, cfg, omega, nu, [&](std::size_t v1, std::size_t v2, Field2D&& slice) {
      const std::string name =
          base.stem().string() + "_nu_" + std::to_string(v1) + "_" + std::to_string(v2) + ".bqf";
      write_bqf(base.parent_path() / name, slice);
      index << v1 << '\t' << v2 << '\t' << num(nu.axis1.coord(v1)) << '\t'
            << num(nu.axis2.coord(v2)) << '\t' << name << '\n';
      const auto mag = magnitudes(slice);
      for (std::size_t i2 = 0; i2 < omega.axis2.n; ++i2) {
        for (std::size_t i1 = 0; i1 < omega.axis1.n; ++i1) {
          const std::size_t i = i1 + omega.axis1.n * i2;
          csv << num(omega.axis1.coord(i1)) << ',' << num(omega.axis2.coord(i2)) << ','
              << num(nu.axis1.coord(v1)) << ',' << num(nu.axis2.coord(v2)) << ',' << num(mag[i])
              << '\n';
          peak[i] = std::max(peak[i], mag[i]);
        }
      }
    });
    write_pgm(with_suffix(base, ".pgm"), omega, peak);
    if (!index || !csv) throw Error(ErrorCode::InvalidArgument, "cannot write outputs for " + out);
    return kOk;
  }
};

struct InverseCmd {
  std::string in, window, out, reference;
  TransformFlags flags;

  void attach(CLI::App* app) {
    app->add_option("input", in, "spectrum .bqf or windowed .index")->required();
    app->add_option("--window", window, "window .bqf (required for an .index input)");
    app->add_option("--reference", reference, "print relative l2 error against this .bqf");
    app->add_option("--out", out, "output .bqf")->required();
    flags.attach(app);
  }

  int run() const {
    const TransformConfig cfg = flags.config();
    std::optional<Field2D> ref;
    if (!reference.empty()) ref = read_bqf(reference);
    std::optional<Field2D> result;
    if (fs::path(in).extension() == ".index") {
      if (window.empty()) throw Error(ErrorCode::InvalidArgument, "--window is required for .index input");
      const Field2D phi = read_bqf(window);
      std::ifstream is(in);
      std::string line;
      if (!std::getline(is, line) || line != "BQF1-INDEX") {
        throw Error(ErrorCode::Format, "not a BQF1 index: " + in);
      }
      std::getline(is, line);
      const GridSpec xi = parse_grid_line(line, "xi");
      std::getline(is, line);
      const GridSpec omega = parse_grid_line(line, "omega");
      std::getline(is, line);
      const GridSpec nu = parse_grid_line(line, "nu");
      WlctField w{omega, nu};
      const fs::path dir = fs::path(in).parent_path();
      std::size_t count = 0;
      while (std::getline(is, line)) {
        std::stringstream ss(line);
        std::size_t v1 = 0, v2 = 0;
        std::string n1, n2, name;
        ss >> v1 >> v2 >> n1 >> n2 >> name;
        if (!ss || v1 >= nu.axis1.n || v2 >= nu.axis2.n) {
          throw Error(ErrorCode::Format, "bad index line: " + line);
        }
        Field2D slice = read_bqf(dir / name);
        if (!slice.grid().matches(omega)) throw Error(ErrorCode::GridMismatch, name + " is off the index grid");
        w.slice(v1, v2) = std::move(slice);
        ++count;
      }
      if (count != nu.size()) throw Error(ErrorCode::Format, "index lists too few slices");
      result = biqwlct_inverse(w, phi, cfg, ref ? ref->grid() : xi);
    } else {
      const Field2D spectrum = read_bqf(in);
      GridSpec xi = ref ? ref->grid()
                        : GridSpec{dual_axis(spectrum.grid().axis1, inverse_param(cfg.m1)),
                                   dual_axis(spectrum.grid().axis2, inverse_param(cfg.m2))};
      result = rbiqlct_inverse(spectrum, cfg, xi);
    }
    write_bqf(out, *result);
    if (ref) std::cout << "relative_l2\t" << num(relative_l2(*result, *ref)) << '\n';
    return kOk;
  }
};

struct AnalyzeCmd {
  std::string in, window;
  TransformFlags flags;

  void attach(CLI::App* app) {
    app->add_option("input", in, "signal .bqf")->required();
    app->add_option("--window", window, "window .bqf for the windowed bound");
    flags.attach(app);
  }

  int run() const {
    const TransformConfig cfg = flags.config();
    const Field2D f = read_bqf(in);
    std::cout << "energy\t" << num(energy(f)) << '\n'
              << "second_moment_1\t" << num(second_moment(f, 1)) << '\n'
              << "second_moment_2\t" << num(second_moment(f, 2)) << '\n';
    for (int k : {1, 2}) {
      const HeisenbergReport h = lct_uncertainty(f, cfg, k);
      std::cout << "lct_uncertainty_" << k << "\tlhs " << num(h.lhs) << "\trhs " << num(h.rhs)
                << "\tratio " << num(h.ratio) << '\n';
    }
    if (!window.empty()) {
      const Field2D phi = read_bqf(window);
      for (const auto& r : uncertainty_check_axes(f, phi, cfg)) {
        std::cout << "wlct_uncertainty_" << r.axis << "\tlhs " << num(r.lhs) << "\trhs_phi2 "
                  << num(r.rhs) << '\t' << (r.satisfied ? "holds" : "violated") << "\trhs_phi1 "
                  << num(r.rhs_single) << '\t' << (r.satisfied_single ? "holds" : "violated")
                  << '\n';
      }
    }
    return kOk;
  }
};

struct VerifyCmd {
  std::string scale = "small";
  bool fault = false;
  bool zero = false;
  std::uint64_t seed = VerifyOptions{}.seed;

  void attach(CLI::App* app) {
    app->add_option("scale", scale, "small|default")
        ->check(CLI::IsMember({"small", "default"}))
        ->capture_default_str();
    app->add_option("--seed", seed, "seed of the random corpus")->capture_default_str();
    app->add_flag("--zero-signals", zero, "run the signal checks on all-zero signals");
    app->add_flag("--inject-kernel-fault", fault)->group("");
  }

  int run() const {
    VerifyOptions opt;
    opt.scale = scale == "default" ? VerifyScale::Default : VerifyScale::Small;
    opt.fault = fault ? KernelFault::QuadrantSignFlip : KernelFault::None;
    opt.zero_signals = zero;
    opt.seed = seed;
    const VerificationReport report = verify_all(opt);
    std::cout << report.to_text();
    return report.all_mandatory_passed() ? kOk : kVerifyFailed;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Biquaternion windowed linear canonical transform toolkit"};
  app.require_subcommand(1);

  GenerateCmd generate;
  TransformCmd transform;
  InverseCmd inverse;
  AnalyzeCmd analyze;
  VerifyCmd verify;
  auto* g = app.add_subcommand("generate", "write a test signal or window");
  auto* t = app.add_subcommand("transform", "forward transform, windowed when --window is given");
  auto* i = app.add_subcommand("inverse", "inverse transform");
  auto* a = app.add_subcommand("analyze", "energies, moments and uncertainty bounds");
  auto* v = app.add_subcommand("verify", "run the identity and inequality checks");
  generate.attach(g);
  transform.attach(t);
  inverse.attach(i);
  analyze.attach(a);
  verify.attach(v);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    if (g->parsed()) return generate.run();
    if (t->parsed()) return transform.run();
    if (i->parsed()) return inverse.run();
    if (a->parsed()) return analyze.run();
    return verify.run();
  } catch (const Error& e) {
    std::cerr << "biqwlct: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "biqwlct: " << e.what() << '\n';
    return kInvalid;
  }
}
