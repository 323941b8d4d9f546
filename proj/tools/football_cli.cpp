#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

void add_tol(CLI::App* cmd, std::optional<double>& tol) {
  cmd->add_option("--tol", tol, "root tolerance on |F(a)| (default 1e-12, or FOOTBALL_TOL)");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace football::cli;

  CLI::App app{"football: conical Ricci soliton footballs and their degenerations"};
  app.require_subcommand(1);

  SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "solve for the soliton coefficient a (JSON)");
  solve_cmd->add_option("--b1", solve.beta1, "cone-angle fraction beta1 in (0, 1]")->required();
  solve_cmd->add_option("--b2", solve.beta2, "cone-angle fraction beta2 in (0, 1]")->required();
  add_tol(solve_cmd, solve.tol);

  SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "solve over an n x n angle grid (CSV)");
  sweep_cmd->add_option("--n", sweep.n, "grid points per axis");
  sweep_cmd->add_option("--lo", sweep.lo, "smallest angle fraction");
  sweep_cmd->add_option("--hi", sweep.hi, "largest angle fraction");
  add_tol(sweep_cmd, sweep.tol);

  LimitOptions limit;
  auto* limit_cmd = app.add_subcommand("limit", "run a degeneration limit and report convergence (JSON)");
  limit_cmd->add_option("--regime", limit.regime, "cigar or cylinder")->required();
  limit_cmd->add_option("--beta", limit.beta, "cigar target angle fraction in [0, 1]");
  limit_cmd->add_option("--c", limit.c, "cylinder ratio beta1/beta2 in (0, 1)");
  limit_cmd->add_option("--L", limit.L, "cigar window [0, L]");
  limit_cmd->add_option("--U", limit.U, "cylinder window [-U, U]");
  limit_cmd->add_option("--k", limit.k, "highest derivative order");
  limit_cmd->add_option("--n-first", limit.n_first, "first path index");
  limit_cmd->add_option("--n-last", limit.n_last, "last path index");
  limit_cmd->add_option("--grid", limit.grid, "sample points on the window");
  limit_cmd->add_option("--rescaling", limit.rescaling, "cigar rescaling: proof (a g/2) or theorem (beta2/(2 beta1) g)");
  limit_cmd->add_option("--json", limit.json_path, "write the report here instead of stdout");
  limit_cmd->add_option("--csv", limit.csv_path, "per-step CSV");
  limit_cmd->add_option("--svg", limit.svg_path, "log-log error plot");
  add_tol(limit_cmd, limit.tol);

  EmbedOptions embed;
  auto* embed_cmd = app.add_subcommand("embed", "surface-of-revolution profile and mesh");
  embed_cmd->add_option("--b1", embed.beta1, "cone-angle fraction beta1")->required();
  embed_cmd->add_option("--b2", embed.beta2, "cone-angle fraction beta2")->required();
  embed_cmd->add_option("--N", embed.n, "profile samples");
  embed_cmd->add_option("--n-theta", embed.n_theta, "meridians in the mesh");
  embed_cmd->add_option("--mesh", embed.mesh_path, "triangle mesh output (v/f text)");
  embed_cmd->add_option("--csv", embed.csv_path, "profile CSV output (default stdout)");
  add_tol(embed_cmd, embed.tol);

  ProfileOptions profile;
  auto* profile_cmd = app.add_subcommand("profile", "sample phi, phi', curvature and metric coefficients (CSV)");
  profile_cmd->add_option("--b1", profile.beta1, "cone-angle fraction beta1")->required();
  profile_cmd->add_option("--b2", profile.beta2, "cone-angle fraction beta2")->required();
  profile_cmd->add_option("--N", profile.n, "samples on [0, beta1 + beta2]");
  add_tol(profile_cmd, profile.tol);

  GeometryOptions geometry;
  auto* geometry_cmd = app.add_subcommand("geometry", "area and distances by quadrature and mesh (JSON)");
  geometry_cmd->add_option("--b1", geometry.beta1, "cone-angle fraction beta1")->required();
  geometry_cmd->add_option("--b2", geometry.beta2, "cone-angle fraction beta2")->required();
  geometry_cmd->add_option("--nt", geometry.n_t, "mesh rings");
  geometry_cmd->add_option("--ntheta", geometry.n_theta, "mesh meridians");
  geometry_cmd->add_option("--samples", geometry.samples, "random point pairs");
  geometry_cmd->add_option("--seed", geometry.seed, "seed for the sample pairs");
  add_tol(geometry_cmd, geometry.tol);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidation;
  }

  if (*solve_cmd) return cmd_solve(solve, std::cout, std::cerr);
  if (*sweep_cmd) return cmd_sweep(sweep, std::cout, std::cerr);
  if (*limit_cmd) return cmd_limit(limit, std::cout, std::cerr);
  if (*embed_cmd) return cmd_embed(embed, std::cout, std::cerr);
  if (*profile_cmd) return cmd_profile(profile, std::cout, std::cerr);
  if (*geometry_cmd) return cmd_geometry(geometry, std::cout, std::cerr);
  return kValidation;
}
