#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/types.hpp"

namespace botoc {

enum class ModelKind { TFIM, XXZ, CustomMatrix };

// Spin chains use open boundaries: two-site terms run over neighbors
// 1..n-1, field terms over all n sites. Site 0 is the most significant
// bit of the basis index, so a leading block of sites forms factor A.
struct HamiltonianSpec {
  ModelKind kind = ModelKind::TFIM;
  int n_sites = 0;
  std::map<std::string, double> params;  // TFIM: g, h; XXZ: J, delta
  std::string custom_path;               // CustomMatrix read from file
  std::optional<Matrix> custom_matrix;   // CustomMatrix given in process
};

Matrix build_hamiltonian(const HamiltonianSpec& spec);

struct SpectralData {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // columns are eigenstates
  double tol_level = 1e-9;
  double tol_gap = 1e-9;
  double spectral_range = 0.0;

  // Degenerate levels clustered within tol_level * spectral_range.
  std::vector<std::vector<int>> level_classes;
  std::vector<int> level_of;          // eigenstate index -> level class
  std::vector<double> class_energy;   // representative (mean) energy

  // Ordered level pairs (K, M) clustered by representative gap
  // class_energy[K] - class_energy[M] within tol_gap * spectral_range.
  // Expanding each level pair over its member eigenstates yields the
  // partition of all d^2 ordered eigenstate pairs.
  struct GapClass {
    double value = 0.0;
    std::vector<std::pair<int, int>> level_pairs;
    long index_pair_count = 0;
  };
  std::vector<GapClass> gap_classes;
  int zero_class = -1;  // class holding the zero gap (always present)

  int d() const { return int(eigenvalues.size()); }
};

SpectralData eigendecompose(const Matrix& h, double tol_level = 1e-9,
                            double tol_gap = 1e-9);

// Evolution operator exp(-i t H) assembled from the eigensystem.
Matrix evolution(const SpectralData& spec, double t);

struct NrcReport {
  bool levels_nondegenerate = false;
  bool gaps_nondegenerate = false;  // nonzero classes hold one eigenstate pair
  bool nrc = false;                 // both of the above
  bool nrc_plus = false;            // nonzero classes hold one level pair
  int n_level_classes = 0;
  int n_gap_classes = 0;
  int degenerate_level_count = 0;   // level classes with more than one state
  int degenerate_gap_count = 0;     // nonzero classes with extra state pairs
  int nrc_plus_violation_count = 0; // nonzero classes with extra level pairs
  bool basis_dependent_warning = false;  // degenerate levels make the
                                         // rank-1 Gram estimate basis-dependent
};

NrcReport nrc_report(const SpectralData& spec);

}  // namespace botoc
