// Evaluates one parameter point and prints the headline observables.
#include <cstdio>

#include "aqrsm/aqrsm.hpp"

int main() {
  aqrsm::ModelParams model{1.0, 1.0, 0.8, 0.5, 0.0, 120};
  aqrsm::BathParams bath;  // alpha = 1e-3, omega_c = 10, kT = 0.07

  const aqrsm::ObservableReport rep = aqrsm::evaluate_point(model, bath);
  std::printf("G2(0)      = %.6f\n", *rep.g2);
  std::printf("G3(0)      = %.6f\n", *rep.g3);
  std::printf("xi_B^2     = %.6f\n", *rep.xi_b2);
  std::printf("<a^dag a>  = %.6e\n", rep.n_photon);
  if (auto gc = aqrsm::gc_analytic({1.0, 1.0, 0.0, 0.2, 0.2, 120})) std::printf("g_c(r=0.2, U=0.2) = %.6f\n", *gc);
  return 0;
}
