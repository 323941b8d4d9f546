// Teardrop (one cone point, one smooth pole): prints the coefficient, the
// curvature along the meridian, and writes a mesh and profile CSV.

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "football/football.hpp"

int main(int argc, char** argv) {
  const double beta1 = argc > 1 ? std::atof(argv[1]) : 0.1;
  try {
    const football::SolitonProfile p = football::solve_coefficient(football::ConeAngles(beta1, 1.0));
    std::printf("beta1 = %.6g  a = %.12g  a*beta1 = %.12g\n", p.beta1(), p.a(), p.a_beta1());
    std::printf("%10s %14s %14s\n", "tau", "phi", "curvature");
    for (int i = 0; i <= 10; ++i) {
      const double t = p.length() * i / 10.0;
      std::printf("%10.5f %14.8f %14.8f\n", t, football::phi(t, p), football::curvature(t, p));
    }
    const double d = football::meridian_distance(football::football_metric(p), 0.0, p.length());
    std::printf("tip-to-pole distance %.10f, area %.10f\n", d, football::area(football::football_metric(p)));

    const football::EmbeddingProfile e = football::embedding_profile(p, 201);
    std::ofstream mesh("teardrop.mesh");
    football::write_mesh_text(mesh, e, 96);
    std::ofstream csv("teardrop.csv");
    football::write_profile_csv(csv, e);
    std::printf("height %.10f; wrote teardrop.mesh and teardrop.csv\n", e.height());
  } catch (const football::Error& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 2;
  }
  return 0;
}
