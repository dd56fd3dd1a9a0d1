#pragma once

#include "msc/rng.hpp"
#include "msc/types.hpp"

#include <cstdint>
#include <vector>

namespace msc {

enum class Assignment {
  Uniform,     // k drawn uniformly for every item
  Balanced,    // round-robin k = n mod K
};

struct SynthCommon {
  int clusters = 2;
  int points = 40;
  // When non-empty, overrides `points`/`assignment`: cluster k gets
  // per_cluster[k] consecutive items.
  std::vector<int> per_cluster;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
  Assignment assignment = Assignment::Balanced;
};

// Union-of-subspaces model: x_n = U_k y_n.
struct UosSpec : SynthCommon {
  int ambient_dim = 10;  // D
  int latent_dim = 2;    // d
  // Carve all K bases out of one D x (K d) orthonormal matrix.
  bool mutually_orthogonal = false;
};

// Union-of-multilinear-subspaces model: A_n = U_k Y_n V_k^T.
struct UomsSpec : SynthCommon {
  int col_ambient = 20;  // D_u: length of a column fiber
  int row_ambient = 20;  // D_v: length of a row fiber
  int col_latent = 2;    // d_u
  int row_latent = 2;    // d_v
};

struct UosModel {
  std::vector<Eigen::MatrixXd> bases;  // D x d each
};

struct UomsModel {
  std::vector<Eigen::MatrixXd> col_bases;  // D_u x d_u each
  std::vector<Eigen::MatrixXd> row_bases;  // D_v x d_v each
};

// Haar-distributed matrix with orthonormal columns (Q from the QR of a
// Gaussian matrix, signs fixed so R has a positive diagonal).
Eigen::MatrixXd random_orthonormal_basis(Index rows, Index cols, Rng& rng);

struct UosSample {
  VectorDataset data;
  UosModel model;
};

struct UomsSample {
  Dataset data;
  UomsModel model;
};

UosSample generate_uos(const UosSpec& spec);
UomsSample generate_uoms(const UomsSpec& spec);

}  // namespace msc
