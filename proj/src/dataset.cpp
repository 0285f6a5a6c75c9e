#include "qnc/dataset.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "qnc/rng.hpp"

namespace qnc {

namespace {

double vec_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double vec_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Uniform draw from the d-ball: Gaussian direction times radius * U^(1/d).
std::vector<double> uniform_in_ball(std::size_t d, double radius, RngStream& rng) {
  std::vector<double> v(d);
  double n = 0.0;
  do {
    for (double& x : v) x = rng.normal();
    n = vec_norm(v);
  } while (n == 0.0);
  const double r = radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(d));
  for (double& x : v) x *= r / n;
  return v;
}

}  // namespace

Dataset generate_synthetic(const SyntheticSpec& spec) {
  if (spec.k < 1 || spec.d < 1 || spec.n_per < 1)
    throw std::invalid_argument("generate_synthetic: k, d, n_per must be positive");
  if (spec.min_sep <= 0.0 || spec.variance <= 0.0)
    throw std::invalid_argument("generate_synthetic: min_sep and variance must be positive");

  RngStream rng(spec.seed);
  std::size_t budget = spec.rejection_budget;
  const auto spend = [&budget](const char* what) {
    if (budget-- == 0) throw InfeasibleSpec(std::string("generate_synthetic: ") + what);
  };

  std::vector<std::vector<double>> centroids;
  while (centroids.size() < spec.k) {
    spend("rejection budget exhausted while separating centroids");
    std::vector<double> c = uniform_in_ball(spec.d, spec.radius, rng);
    const bool separated = std::all_of(centroids.begin(), centroids.end(), [&](const auto& o) {
      return vec_dist(c, o) >= spec.min_sep;
    });
    if (separated) centroids.push_back(std::move(c));
  }

  const double sigma = spec.variance_is_stddev ? spec.variance : std::sqrt(spec.variance);
  Dataset ds;
  for (std::size_t ci = 0; ci < spec.k; ++ci) {
    for (std::size_t pi = 0; pi < spec.n_per; ++pi) {
      std::vector<double> p(spec.d);
      for (;;) {
        spend("rejection budget exhausted while placing points in the ball");
        for (std::size_t j = 0; j < spec.d; ++j)
          p[j] = centroids[ci][j] + sigma * rng.normal();
        if (!spec.ball_constraint_points || vec_norm(p) <= spec.radius) break;
      }
      ds.points.push_back(p);
      ds.labels.push_back(std::to_string(ci));
    }
  }

  ds.provenance = {
      {"kind", "synthetic"},
      {"k", spec.k},
      {"d", spec.d},
      {"n_per", spec.n_per},
      {"min_sep", spec.min_sep},
      {"variance", spec.variance},
      {"radius", spec.radius},
      {"variance_is_stddev", spec.variance_is_stddev},
      {"ball_constraint_points", spec.ball_constraint_points},
      {"seed", spec.seed},
      {"centroids", centroids},
  };
  return ds;
}

std::vector<std::vector<double>> synthetic_centroids(const Dataset& ds) {
  if (!ds.provenance.contains("centroids"))
    throw std::invalid_argument("synthetic_centroids: dataset has no generator centroids");
  return ds.provenance.at("centroids").get<std::vector<std::vector<double>>>();
}

PcaModel fit_pca(const std::vector<std::vector<double>>& points, std::size_t q) {
  if (points.empty()) throw std::invalid_argument("fit_pca: empty point set");
  const std::size_t dim = points.front().size();
  if (q < 1 || q > dim) throw std::invalid_argument("fit_pca: q must be in [1, dimension]");
  if (points.size() < q + 1) throw std::invalid_argument("fit_pca: need at least q+1 points");

  Eigen::MatrixXd X(points.size(), dim);
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = points[i][j];

  const Eigen::RowVectorXd mean = X.colwise().mean();
  X.rowwise() -= mean;
  const Eigen::MatrixXd cov = X.transpose() * X / static_cast<double>(points.size() - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) throw std::runtime_error("fit_pca: eigensolver failed");

  PcaModel model;
  model.mean.assign(mean.data(), mean.data() + dim);
  model.axes.resize(q);
  model.variances.resize(q);
  // Eigen sorts ascending; take the top q, canonicalizing each axis sign so
  // the largest-magnitude component is positive (determinism across runs).
  for (std::size_t a = 0; a < q; ++a) {
    const auto col = static_cast<Eigen::Index>(dim - 1 - a);
    Eigen::VectorXd axis = solver.eigenvectors().col(col);
    Eigen::Index imax = 0;
    axis.cwiseAbs().maxCoeff(&imax);
    if (axis(imax) < 0.0) axis = -axis;
    model.axes[a].assign(axis.data(), axis.data() + dim);
    model.variances[a] = std::max(solver.eigenvalues()(col), 0.0);  // rank truncation
  }
  return model;
}

std::vector<std::vector<double>> apply_pca(const PcaModel& model,
                                           const std::vector<std::vector<double>>& points) {
  const std::size_t dim = model.mean.size();
  const std::size_t q = model.axes.size();
  std::vector<std::vector<double>> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    if (p.size() != dim) throw std::invalid_argument("apply_pca: dimension mismatch");
    std::vector<double> row(q, 0.0);
    for (std::size_t a = 0; a < q; ++a) {
      double s = 0.0;
      for (std::size_t j = 0; j < dim; ++j) s += (p[j] - model.mean[j]) * model.axes[a][j];
      row[a] = s;
    }
    out.push_back(std::move(row));
  }
  return out;
}

Dataset apply_pca(const PcaModel& model, const Dataset& ds) {
  Dataset out;
  out.points = apply_pca(model, ds.points);
  out.labels = ds.labels;
  out.provenance = ds.provenance;
  out.provenance["pca"] = {{"q", model.axes.size()}, {"fit_population", ds.size()}};
  return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    if (!cell.empty() && cell.back() == '\r') cell.pop_back();
    cells.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    throw DataFormatError("load_csv: non-numeric value '" + cell + "' at data row " +
                          std::to_string(row) + ", column " + std::to_string(col + 1));
  return value;
}

}  // namespace

Dataset load_csv(const std::string& path, const std::string& label_column) {
  std::ifstream in(path);
  if (!in) throw FileError("load_csv: cannot open " + path);

  std::string line;
  // header (skipping comment lines)
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    header = split_csv_line(line);
    break;
  }
  if (header.empty()) throw DataFormatError("load_csv: missing header row in " + path);

  std::size_t label_idx = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == label_column) label_idx = i;
  }
  if (label_idx == header.size())
    throw DataFormatError("load_csv: no column named '" + label_column + "' in " + path);

  Dataset ds;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    ++row;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw DataFormatError("load_csv: data row " + std::to_string(row) + " has " +
                            std::to_string(cells.size()) + " cells, header has " +
                            std::to_string(header.size()));
    std::vector<double> features;
    features.reserve(header.size() - 1);
    for (std::size_t col = 0; col < cells.size(); ++col) {
      if (col == label_idx) continue;
      features.push_back(parse_cell(cells[col], row, col));
    }
    ds.points.push_back(std::move(features));
    ds.labels.push_back(cells[label_idx]);
  }
  if (ds.points.empty()) throw DataFormatError("load_csv: no data rows in " + path);
  ds.provenance = {{"kind", "csv"}, {"path", path}, {"label_column", label_column}};
  return ds;
}

void save_csv(const Dataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FileError("save_csv: cannot open " + path + " for writing");
  if (!ds.provenance.is_null())
    out << "# provenance: " << ds.provenance.dump() << "\n";
  const std::size_t dim = ds.dimension();
  for (std::size_t j = 0; j < dim; ++j) out << "f" << j << ",";
  out << "label\n";
  out.precision(17);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t j = 0; j < dim; ++j) out << ds.points[i][j] << ",";
    out << ds.labels[i] << "\n";
  }
  if (!out) throw FileError("save_csv: write failed for " + path);
}

namespace {

std::uint32_t read_be32(std::ifstream& in, const std::string& path) {
  unsigned char buf[4];
  if (!in.read(reinterpret_cast<char*>(buf), 4))
    throw DataFormatError("load_idx: truncated header in " + path);
  return (std::uint32_t{buf[0]} << 24) | (std::uint32_t{buf[1]} << 16) |
         (std::uint32_t{buf[2]} << 8) | std::uint32_t{buf[3]};
}

}  // namespace

Dataset load_idx(const std::string& images_path, const std::string& labels_path) {
  std::ifstream imgs(images_path, std::ios::binary);
  if (!imgs) throw FileError("load_idx: cannot open " + images_path);
  std::ifstream labs(labels_path, std::ios::binary);
  if (!labs) throw FileError("load_idx: cannot open " + labels_path);

  const std::uint32_t img_magic = read_be32(imgs, images_path);
  if (img_magic != 0x00000803u)
    throw DataFormatError("load_idx: bad image magic in " + images_path);
  const std::uint32_t count = read_be32(imgs, images_path);
  const std::uint32_t rows = read_be32(imgs, images_path);
  const std::uint32_t cols = read_be32(imgs, images_path);

  const std::uint32_t lab_magic = read_be32(labs, labels_path);
  if (lab_magic != 0x00000801u)
    throw DataFormatError("load_idx: bad label magic in " + labels_path);
  const std::uint32_t lab_count = read_be32(labs, labels_path);
  if (lab_count != count)
    throw DataFormatError("load_idx: image/label count mismatch (" + std::to_string(count) +
                          " vs " + std::to_string(lab_count) + ")");

  const std::size_t dim = static_cast<std::size_t>(rows) * cols;
  Dataset ds;
  ds.points.reserve(count);
  ds.labels.reserve(count);
  std::vector<unsigned char> pixel_row(dim);
  for (std::uint32_t i = 0; i < count; ++i) {
    if (!imgs.read(reinterpret_cast<char*>(pixel_row.data()),
                   static_cast<std::streamsize>(dim)))
      throw DataFormatError("load_idx: truncated image data in " + images_path);
    std::vector<double> p(dim);
    for (std::size_t j = 0; j < dim; ++j) p[j] = pixel_row[j] / 255.0;
    ds.points.push_back(std::move(p));
    char lab = 0;
    if (!labs.read(&lab, 1))
      throw DataFormatError("load_idx: truncated label data in " + labels_path);
    ds.labels.push_back(std::to_string(static_cast<int>(static_cast<unsigned char>(lab))));
  }
  ds.provenance = {{"kind", "idx"},
                   {"images", images_path},
                   {"labels", labels_path},
                   {"rows", rows},
                   {"cols", cols}};
  return ds;
}

Dataset nonnegativity_shift(const Dataset& ds) {
  const std::size_t dim = ds.dimension();
  std::vector<double> shift(dim, 0.0);
  for (const auto& p : ds.points)
    for (std::size_t j = 0; j < dim; ++j) shift[j] = std::min(shift[j], p[j]);

  Dataset out = ds;
  for (auto& p : out.points)
    for (std::size_t j = 0; j < dim; ++j) p[j] -= shift[j];
  out.provenance["nonnegativity_shift"] = shift;
  return out;
}

Dataset pad_to_pow2(const Dataset& ds) {
  const std::size_t dim = ds.dimension();
  std::size_t target = 2;
  while (target < dim) target *= 2;
  if (target == dim) return ds;
  Dataset out = ds;
  for (auto& p : out.points) p.resize(target, 0.0);
  out.provenance["padded_from"] = dim;
  return out;
}

}  // namespace qnc
