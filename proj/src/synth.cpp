#include "msc/synth.hpp"

#include "msc/error.hpp"

#include <string>

namespace msc {
namespace {

Eigen::MatrixXd gaussian_matrix(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) g(i, j) = normal(rng);
  return g;
}

void check_common(const SynthCommon& s) {
  if (s.clusters < 1) throw InvalidArgument("clusters must be >= 1");
  if (s.noise_sigma < 0.0) throw InvalidArgument("noise sigma must be >= 0");
  if (!s.per_cluster.empty()) {
    if (static_cast<int>(s.per_cluster.size()) != s.clusters)
      throw InvalidArgument("per-cluster counts must have one entry per cluster");
    for (int c : s.per_cluster)
      if (c < 0) throw InvalidArgument("per-cluster counts must be nonnegative");
  } else if (s.points < 1) {
    throw InvalidArgument("points must be >= 1");
  }
}

LabelVector draw_labels(const SynthCommon& s) {
  LabelVector labels;
  if (!s.per_cluster.empty()) {
    for (int k = 0; k < s.clusters; ++k) labels.insert(labels.end(), s.per_cluster[k], k);
    return labels;
  }
  labels.resize(s.points);
  if (s.assignment == Assignment::Balanced) {
    for (int n = 0; n < s.points; ++n) labels[n] = n % s.clusters;
  } else {
    Rng rng = make_stream(s.seed, {stream_tag::kAssign});
    std::uniform_int_distribution<int> pick(0, s.clusters - 1);
    for (int n = 0; n < s.points; ++n) labels[n] = pick(rng);
  }
  return labels;
}

}  // namespace

Eigen::MatrixXd random_orthonormal_basis(Index rows, Index cols, Rng& rng) {
  if (cols > rows) {
    throw InvalidArgument("cannot build " + std::to_string(cols) + " orthonormal columns in dimension " +
                          std::to_string(rows));
  }
  if (cols < 0) throw InvalidArgument("negative column count");
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian_matrix(rows, cols, rng));
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(rows, cols);
  const Eigen::MatrixXd& r = qr.matrixQR();
  for (Index j = 0; j < cols; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

UosSample generate_uos(const UosSpec& spec) {
  check_common(spec);
  if (spec.latent_dim < 1 || spec.latent_dim > spec.ambient_dim)
    throw InvalidArgument("UOS latent dimension must satisfy 1 <= d <= D");
  if (spec.mutually_orthogonal && spec.clusters * spec.latent_dim > spec.ambient_dim)
    throw InvalidArgument("mutually orthogonal bases need K*d <= D");

  UosSample out;
  const Index dim = spec.ambient_dim;
  const Index latent = spec.latent_dim;
  if (spec.mutually_orthogonal) {
    Rng rng = make_stream(spec.seed, {stream_tag::kBasis});
    Eigen::MatrixXd all = random_orthonormal_basis(dim, latent * spec.clusters, rng);
    for (int k = 0; k < spec.clusters; ++k) out.model.bases.push_back(all.middleCols(k * latent, latent));
  } else {
    for (int k = 0; k < spec.clusters; ++k) {
      Rng rng = make_stream(spec.seed, {stream_tag::kBasis, static_cast<std::uint64_t>(k)});
      out.model.bases.push_back(random_orthonormal_basis(dim, latent, rng));
    }
  }

  LabelVector labels = draw_labels(spec);
  const Index n = static_cast<Index>(labels.size());
  out.data.columns.resize(dim, n);
  for (Index i = 0; i < n; ++i) {
    Rng rng = make_stream(spec.seed, {stream_tag::kItem, static_cast<std::uint64_t>(i)});
    Eigen::VectorXd y = gaussian_matrix(latent, 1, rng);
    out.data.columns.col(i) = out.model.bases[labels[i]] * y;
    if (spec.noise_sigma > 0.0) out.data.columns.col(i) += spec.noise_sigma * gaussian_matrix(dim, 1, rng);
  }
  out.data.labels = std::move(labels);
  return out;
}

UomsSample generate_uoms(const UomsSpec& spec) {
  check_common(spec);
  if (spec.col_latent < 1 || spec.col_latent > spec.col_ambient)
    throw InvalidArgument("UOMS column latent dimension must satisfy 1 <= d_u <= D_u");
  if (spec.row_latent < 1 || spec.row_latent > spec.row_ambient)
    throw InvalidArgument("UOMS row latent dimension must satisfy 1 <= d_v <= D_v");

  UomsSample out;
  for (int k = 0; k < spec.clusters; ++k) {
    Rng rng = make_stream(spec.seed, {stream_tag::kBasis, static_cast<std::uint64_t>(k)});
    out.model.col_bases.push_back(random_orthonormal_basis(spec.col_ambient, spec.col_latent, rng));
    out.model.row_bases.push_back(random_orthonormal_basis(spec.row_ambient, spec.row_latent, rng));
  }

  LabelVector labels = draw_labels(spec);
  out.data.items.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    Rng rng = make_stream(spec.seed, {stream_tag::kItem, static_cast<std::uint64_t>(i)});
    const int k = labels[i];
    Eigen::MatrixXd y = gaussian_matrix(spec.col_latent, spec.row_latent, rng);
    DataMatrix a = out.model.col_bases[k] * y * out.model.row_bases[k].transpose();
    if (spec.noise_sigma > 0.0) a += spec.noise_sigma * gaussian_matrix(spec.col_ambient, spec.row_ambient, rng);
    out.data.items.push_back(std::move(a));
  }
  out.data.labels = std::move(labels);
  return out;
}

}  // namespace msc
