// Command-line front end: eigenvalues, generalized eigenvalues, pseudospectra
// grids, perturbation-bound trials, ODE trajectories and example generators.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tprod/tprod.hpp"

namespace {

using namespace tprod;

Norm parse_norm(const std::string& s) {
  if (s == "1") return Norm::one;
  if (s == "2") return Norm::two;
  if (s == "inf") return Norm::inf;
  if (s == "fro" || s == "F") return Norm::fro;
  throw std::invalid_argument("unknown norm '" + s + "' (expected 1, 2, inf or F)");
}

void print_report_line(const std::string& label, const BoundReport& rep) {
  std::printf("%s bound=%.17g observed=%.17g holds=%s\n", label.c_str(), rep.bound,
              rep.observed, rep.holds ? "yes" : "no");
}

struct EigOpts {
  std::string file;
  bool vectors = false;
};

int run_eig(const EigOpts& o) {
  const Tensor3 a = load_tensor(o.file);
  const TSpectrum s = t_eigenvalues(a, o.vectors);
  for (std::size_t q = 0; q < s.eigenvalues.size(); ++q) {
    std::printf("%s\n", format_complex(s.eigenvalues[q]).c_str());
    if (o.vectors) {
      std::printf("  vector:");
      const Tensor3& x = s.eigenvectors[q];
      for (int k = 0; k < x.slices(); ++k)
        for (int i = 0; i < x.rows(); ++i)
          std::printf(" %s", format_complex(x(i, 0, k)).c_str());
      std::printf("\n");
    }
  }
  return 0;
}

struct GeigOpts {
  std::string file_a, file_b;
};

int run_geig(const GeigOpts& o) {
  const Tensor3 a = load_tensor(o.file_a);
  const Tensor3 b = load_tensor(o.file_b);
  const GeneralizedTSpectrum g = generalized_t_eigenvalues(a, b);
  for (std::size_t q = 0; q < g.size(); ++q) {
    if (g.infinite[q])
      std::printf("inf alpha=%s beta=%s\n", format_complex(g.alphas[q]).c_str(),
                  format_complex(g.betas[q]).c_str());
    else
      std::printf("%s alpha=%s beta=%s\n", format_complex(g.eigenvalue(q)).c_str(),
                  format_complex(g.alphas[q]).c_str(),
                  format_complex(g.betas[q]).c_str());
  }
  std::printf("rank(bcirc(B)) = %d of %d\n", g.rank_bcirc_b,
              a.rows() * a.slices());
  std::printf("regular: %s\n", g.regular ? "yes" : "no");
  return 0;
}

struct PseudoOpts {
  std::string file, out;
  std::vector<double> re, im, eps;
  int nx = 200, ny = 200;
  std::string norm = "2";
};

int run_pseudo(const PseudoOpts& o) {
  const Tensor3 a = load_tensor(o.file);
  std::vector<double> eps = o.eps;
  if (eps.empty())
    for (int k = 1; k <= 10; ++k) eps.push_back(std::pow(10.0, -k));
  GridRegion region{};
  if (o.re.size() == 2 && o.im.size() == 2) {
    region = {o.re[0], o.re[1], o.im[0], o.im[1]};
  } else if (o.re.empty() && o.im.empty()) {
    region = auto_region(a, eps);
  } else {
    throw std::invalid_argument("pseudo: give both --re a,b and --im c,d or neither");
  }
  const PseudoGrid grid = pseudo_grid(a, region, o.nx, o.ny, eps, parse_norm(o.norm));
  write_grid_csv(o.out, grid, o.file);
  std::printf("wrote %d grid points to %s (region re [%s, %s] im [%s, %s])\n",
              o.nx * o.ny, o.out.c_str(), format_double(region.re_min).c_str(),
              format_double(region.re_max).c_str(),
              format_double(region.im_min).c_str(),
              format_double(region.im_max).c_str());
  return 0;
}

struct BoundsOpts {
  std::string file;
  std::string mode = "both";
  int trials = 10;
  std::uint64_t seed = 0;
  double delta_norm = 1e-4;
  std::string norm = "2";
};

int run_gershgorin(const BoundsOpts& o) {
  const Tensor3 a = load_tensor(o.file);
  const TSpectrum s = t_eigenvalues(a);
  const double slack = 1e-9 * std::max(1.0, tensor_norm(a, Norm::two));
  for (const char* mode : {"raw", "schur"}) {
    if (o.mode != "both" && o.mode != mode) continue;
    const DiskSet d = gershgorin_disks(
        a, mode == std::string("raw") ? GershgorinMode::raw : GershgorinMode::schur);
    std::printf("mode %s\n", mode);
    for (std::size_t q = 0; q < d.centers.size(); ++q)
      std::printf("disk %zu: center=%s radius=%s\n", q,
                  format_complex(d.centers[q]).c_str(),
                  format_double(d.radii[q]).c_str());
    bool all = true;
    for (const Complex& l : s.eigenvalues) all = all && d.contains(l, slack);
    std::printf("containment: %s\n", all ? "yes" : "no");
  }
  return 0;
}

// P from the per-face eigendecomposition; fails when a face is numerically
// defective.
Tensor3 diagonalizing_transform(const Tensor3& a) {
  const FaceSet f = to_faces(a);
  FaceSet fp(a.rows(), a.rows(), a.slices());
  for (int i = 0; i < f.count(); ++i) {
    Eigen::ComplexEigenSolver<Matrix> es(f.face(i), true);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("eigendecomposition failed on face " +
                               std::to_string(i));
    fp.face(i) = es.eigenvectors();
  }
  return from_faces(fp);
}

int run_bauer_fike(const BoundsOpts& o) {
  const Tensor3 a = load_tensor(o.file);
  const Tensor3 p = diagonalizing_transform(a);
  const Norm norm = parse_norm(o.norm);
  Rng rng(o.seed);
  int held = 0;
  for (int t = 0; t < o.trials; ++t) {
    Tensor3 delta = random_tensor(a.rows(), a.cols(), a.slices(), rng);
    delta *= Complex(o.delta_norm / tensor_norm(delta, Norm::two), 0);
    const BoundReport rep = bauer_fike_bound(a, p, delta, norm);
    print_report_line("trial " + std::to_string(t) + ":", rep);
    if (rep.holds) ++held;
  }
  std::printf("held %d of %d (kappa policy: per-face eigenvectors)\n", held,
              o.trials);
  return held == o.trials ? 0 : 1;
}

int run_gen_bf(const BoundsOpts& o) {
  const Tensor3 a = load_tensor(o.file);
  const Norm norm = parse_norm(o.norm);
  Rng rng(o.seed);
  int held = 0;
  for (int t = 0; t < o.trials; ++t) {
    Tensor3 delta = random_tensor(a.rows(), a.cols(), a.slices(), rng);
    delta *= Complex(o.delta_norm / tensor_norm(delta, Norm::two), 0);
    const BoundReport rep = generalized_bf_bound(a, delta, norm);
    std::printf("trial %d: q=%d theta=%.17g bound=%.17g observed=%.17g holds=%s\n",
                t, static_cast<int>(rep.detail.at("q")), rep.detail.at("theta"),
                rep.bound, rep.observed, rep.holds ? "yes" : "no");
    if (rep.holds) ++held;
  }
  std::printf("held %d of %d\n", held, o.trials);
  return held == o.trials ? 0 : 1;
}

int run_kahan(const BoundsOpts& o) {
  const Tensor3 a = load_tensor(o.file);
  Rng rng(o.seed);
  int held = 0;
  for (int t = 0; t < o.trials; ++t) {
    Tensor3 e = random_tensor(a.rows(), a.cols(), a.slices(), rng);
    e *= Complex(o.delta_norm / tensor_norm(e, Norm::two), 0);
    const KahanResult res = kahan_regions(a, e);
    std::printf(
        "trial %d: ||E||=%.17g ||Ey||=%.17g max|Im|=%.17g observed=%.17g holds=%s\n",
        t, res.e_norm, res.ey_norm, res.max_im, res.report.observed,
        res.report.holds ? "yes" : "no");
    if (res.report.holds) ++held;
  }
  std::printf("held %d of %d\n", held, o.trials);
  return held == o.trials ? 0 : 1;
}

struct OdeOpts {
  std::string file_a, file_y0, out;
  std::vector<double> times;
};

int run_ode(const OdeOpts& o) {
  const Tensor3 a = load_tensor(o.file_a);
  const Tensor3 y0 = load_tensor(o.file_y0);
  const OdeSolution sol = solve_ivp(a, y0, o.times);
  write_trajectory_csv(o.out, sol);
  std::printf("wrote %zu samples to %s\n", sol.times.size(), o.out.c_str());
  return 0;
}

struct GenOpts {
  std::string name, out;
  int n = 0;
};

int run_gen(const GenOpts& o) {
  const Tensor3 t = gen_example(o.name, o.n);
  save_tensor(o.out, t);
  std::printf("wrote %s N=%d (%s) to %s\n", o.name.c_str(), o.n,
              t.shape_string().c_str(), o.out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"t-product tensor algebra: T-eigenvalues, pseudospectra, "
               "perturbation bounds and t-exponential ODE solutions"};
  app.require_subcommand(1);

  EigOpts eig;
  auto* eig_cmd = app.add_subcommand("eig", "T-eigenvalues of a tensor");
  eig_cmd->add_option("tensor", eig.file, "tensor file")->required();
  eig_cmd->add_flag("--vectors", eig.vectors, "also print T-eigenvectors");

  GeigOpts geig;
  auto* geig_cmd =
      app.add_subcommand("geig", "generalized T-eigenvalues of (A, B)");
  geig_cmd->add_option("A", geig.file_a, "tensor file")->required();
  geig_cmd->add_option("B", geig.file_b, "tensor file")->required();

  PseudoOpts pseudo;
  auto* pseudo_cmd = app.add_subcommand("pseudo", "pseudospectra grid export");
  pseudo_cmd->add_option("tensor", pseudo.file, "tensor file")->required();
  pseudo_cmd->add_option("--re", pseudo.re, "real-axis bounds a,b")->delimiter(',');
  pseudo_cmd->add_option("--im", pseudo.im, "imaginary-axis bounds c,d")
      ->delimiter(',');
  pseudo_cmd->add_option("--nx", pseudo.nx, "grid columns (default 200)");
  pseudo_cmd->add_option("--ny", pseudo.ny, "grid rows (default 200)");
  pseudo_cmd->add_option("--eps", pseudo.eps,
                         "epsilon levels (default 1e-1..1e-10)")
      ->delimiter(',');
  pseudo_cmd->add_option("--norm", pseudo.norm, "norm: 1, 2 or inf (default 2)");
  pseudo_cmd->add_option("--out", pseudo.out, "output CSV path")->required();

  BoundsOpts bounds;
  auto* bounds_cmd =
      app.add_subcommand("bounds", "perturbation bounds with verification");
  bounds_cmd->require_subcommand(1);
  auto add_trial_opts = [&bounds](CLI::App* cmd, const char* delta_help) {
    cmd->add_option("tensor", bounds.file, "tensor file")->required();
    cmd->add_option("--trials", bounds.trials, "number of random trials");
    cmd->add_option("--seed", bounds.seed, "RNG seed (bit-reproducible)");
    cmd->add_option("--delta-norm", bounds.delta_norm, delta_help);
    cmd->add_option("--norm", bounds.norm, "norm: 1, 2, inf or F (default 2)");
  };
  auto* gersh_cmd = bounds_cmd->add_subcommand("gershgorin", "Gershgorin disks");
  gersh_cmd->add_option("tensor", bounds.file, "tensor file")->required();
  gersh_cmd->add_option("--mode", bounds.mode, "raw, schur or both (default both)")
      ->check(CLI::IsMember({"raw", "schur", "both"}));
  auto* bf_cmd = bounds_cmd->add_subcommand("bauer-fike", "Bauer-Fike bound");
  add_trial_opts(bf_cmd, "2-norm of each random perturbation (default 1e-4)");
  auto* gbf_cmd =
      bounds_cmd->add_subcommand("gen-bf", "generalized Bauer-Fike bound");
  add_trial_opts(gbf_cmd, "2-norm of each random perturbation (default 1e-4)");
  auto* kahan_cmd = bounds_cmd->add_subcommand("kahan", "Kahan regions");
  kahan_cmd->add_option("tensor", bounds.file, "tensor file")->required();
  kahan_cmd->add_option("--trials", bounds.trials, "number of random trials");
  kahan_cmd->add_option("--seed", bounds.seed, "RNG seed (bit-reproducible)");
  kahan_cmd->add_option("--perturb-norm", bounds.delta_norm,
                        "2-norm of each random perturbation (default 1e-4)");

  OdeOpts ode;
  auto* ode_cmd = app.add_subcommand("ode", "solve dY/dt = A * Y");
  ode_cmd->add_option("A", ode.file_a, "coefficient tensor file")->required();
  ode_cmd->add_option("Y0", ode.file_y0, "initial value tensor file")->required();
  ode_cmd->add_option("--times", ode.times, "sample times, starting at 0")
      ->delimiter(',')
      ->required();
  ode_cmd->add_option("--out", ode.out, "output CSV path")->required();

  GenOpts gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate an example tensor");
  gen_cmd->add_option("name", gen.name, "A0, A1, A2 or A3")->required();
  gen_cmd->add_option("--n", gen.n, "slice size N (N x N x 3)")->required();
  gen_cmd->add_option("--out", gen.out, "output tensor file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (eig_cmd->parsed()) return run_eig(eig);
    if (geig_cmd->parsed()) return run_geig(geig);
    if (pseudo_cmd->parsed()) return run_pseudo(pseudo);
    if (bounds_cmd->parsed()) {
      if (gersh_cmd->parsed()) return run_gershgorin(bounds);
      if (bf_cmd->parsed()) return run_bauer_fike(bounds);
      if (gbf_cmd->parsed()) return run_gen_bf(bounds);
      if (kahan_cmd->parsed()) return run_kahan(bounds);
    }
    if (ode_cmd->parsed()) return run_ode(ode);
    if (gen_cmd->parsed()) return run_gen(gen);
  } catch (const tprod::io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const tprod::dimension_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
