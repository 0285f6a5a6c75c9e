#include "qnc/classifier.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <thread>

namespace qnc {

namespace {

DataVector padded_vector(const std::vector<double>& row) {
  return DataVector::padded(row);
}

std::size_t argmin_distance(const std::vector<DistanceEstimate>& ests) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < ests.size(); ++i) {
    if (ests[i].l_hat < ests[best].l_hat) best = i;
  }
  return best;
}

void fill_metrics(PredictionReport& rep, const Dataset& test) {
  const std::size_t k = rep.class_labels.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < k; ++i) index[rep.class_labels[i]] = i;

  // Reference labels outside the trained classes make accuracy meaningless;
  // report only when every label is known.
  bool labels_known = !test.labels.empty();
  for (const auto& lab : test.labels)
    if (!index.contains(lab)) labels_known = false;
  if (!labels_known) return;

  rep.confusion.assign(k, std::vector<std::size_t>(k, 0));
  std::size_t correct = 0, classified = 0;
  for (std::size_t p = 0; p < test.size(); ++p) {
    if (!rep.assigned[p]) continue;
    ++classified;
    const std::size_t ref = index.at(test.labels[p]);
    rep.confusion[ref][*rep.assigned[p]] += 1;
    if (ref == *rep.assigned[p]) ++correct;
  }
  if (classified > 0)
    rep.accuracy = static_cast<double>(correct) / static_cast<double>(classified);
}

std::size_t resolve_threads(std::size_t requested, std::size_t tasks) {
  std::size_t n = requested;
  if (n == 0) {
    if (const char* env = std::getenv("QNC_THREADS")) n = std::strtoull(env, nullptr, 10);
  }
  if (n == 0) n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  return std::min(n, std::max<std::size_t>(tasks, 1));
}

}  // namespace

CentroidModel fit(const Dataset& train) {
  if (train.size() == 0) throw std::invalid_argument("fit: empty training set");
  if (train.labels.size() != train.size())
    throw std::invalid_argument("fit: one label per point required");

  const std::set<std::string> unique(train.labels.begin(), train.labels.end());
  CentroidModel model;
  model.class_labels.assign(unique.begin(), unique.end());

  const std::size_t dim = train.dimension();
  for (const std::string& label : model.class_labels) {
    std::vector<double> mean(dim, 0.0);
    std::size_t count = 0;
    for (std::size_t i = 0; i < train.size(); ++i) {
      if (train.labels[i] != label) continue;
      if (train.points[i].size() != dim)
        throw std::invalid_argument("fit: points must share one dimension");
      for (std::size_t j = 0; j < dim; ++j) mean[j] += train.points[i][j];
      ++count;
    }
    if (count == 0) throw std::invalid_argument("fit: empty class " + label);
    for (double& v : mean) v /= static_cast<double>(count);
    model.centroids.push_back(padded_vector(mean));
    if (model.centroids.back().norm > 0.0)
      model.trees.emplace_back(compile_angles(model.centroids.back()));
    else
      model.trees.emplace_back(std::nullopt);
  }
  return model;
}

PredictionReport predict_classical(const CentroidModel& model, const Dataset& test) {
  PredictionReport rep;
  rep.class_labels = model.class_labels;
  rep.assigned.resize(test.size());
  rep.distances.resize(test.size());

  for (std::size_t p = 0; p < test.size(); ++p) {
    const DataVector x = padded_vector(test.points[p]);
    if (x.dimension() != model.dimension())
      throw std::invalid_argument("predict_classical: dimension mismatch with the model");
    std::vector<DistanceEstimate> ests(model.num_classes());
    for (std::size_t c = 0; c < model.num_classes(); ++c) {
      const DataVector& y = model.centroids[c];
      double dot = 0.0;
      for (std::size_t j = 0; j < x.dimension(); ++j) dot += x.entries[j] * y.entries[j];
      DistanceEstimate& e = ests[c];
      e.c_hat = (x.norm > 0 && y.norm > 0) ? dot / (x.norm * y.norm) : 0.0;
      e.p_hat = e.c_hat * e.c_hat;
      e.l_hat = distance_from_overlap(x.norm, y.norm, e.c_hat);
      e.shots_used = 0;
      e.mitigated = false;
    }
    rep.assigned[p] = argmin_distance(ests);
    rep.distances[p] = std::move(ests);
  }
  fill_metrics(rep, test);
  return rep;
}

PredictionReport predict_quantum(const CentroidModel& model, const Dataset& test,
                                 const QuantumPredictOptions& opt) {
  PredictionReport rep;
  rep.class_labels = model.class_labels;
  rep.assigned.resize(test.size());
  rep.distances.resize(test.size());

  const RngStream root(opt.seed);
  const std::size_t k = model.num_classes();

  const auto classify_point = [&](std::size_t p) {
    const DataVector x = padded_vector(test.points[p]);
    if (x.dimension() != model.dimension())
      throw std::invalid_argument("predict_quantum: dimension mismatch with the model");
    const AngleTree tx = compile_angles(x);  // one compilation, reused across centroids
    std::vector<DistanceEstimate> ests(k);
    bool starved = false;
    for (std::size_t c = 0; c < k; ++c) {
      if (!model.trees[c])
        throw std::invalid_argument(
            "predict_quantum: centroid '" + model.class_labels[c] +
            "' is the zero vector and has no loader circuit");
      if (opt.exact) {
        const double p_ideal = ideal_overlap_probability(tx, *model.trees[c]);
        ests[c].p_hat = p_ideal;
        ests[c].c_hat = std::sqrt(std::max(p_ideal, 0.0));
        ests[c].l_hat = distance_from_overlap(x.norm, model.centroids[c].norm, ests[c].c_hat);
        ests[c].shots_used = 0;
        ests[c].mitigated = false;
        continue;
      }
      EstimateOptions eopt;
      eopt.shots = opt.shots;
      eopt.noise = opt.noise;
      eopt.mitigated = opt.mitigated;
      RngStream stream = root.child(p, c);
      try {
        ests[c] = estimate_distance_from_trees(tx, x.norm, *model.trees[c],
                                               model.centroids[c].norm, eopt, stream);
      } catch (const MitigationStarvation&) {
        starved = true;
        break;
      }
    }
    rep.distances[p] = std::move(ests);
    if (!starved) rep.assigned[p] = argmin_distance(rep.distances[p]);
  };

  const std::size_t width = resolve_threads(opt.threads, test.size());
  if (width <= 1) {
    for (std::size_t p = 0; p < test.size(); ++p) classify_point(p);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(width);
    for (std::size_t w = 0; w < width; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t p = w; p < test.size(); p += width) classify_point(p);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& err : errors)
      if (err) std::rethrow_exception(err);
  }

  for (const auto& a : rep.assigned)
    if (!a) ++rep.unclassified;

  // Agreement with the exact classical rule on the same model.
  const PredictionReport classical = predict_classical(model, test);
  std::size_t agree = 0, classified = 0;
  for (std::size_t p = 0; p < test.size(); ++p) {
    if (!rep.assigned[p]) continue;
    ++classified;
    if (rep.assigned[p] == classical.assigned[p]) ++agree;
  }
  if (classified > 0)
    rep.agreement_with_classical = static_cast<double>(agree) / static_cast<double>(classified);

  fill_metrics(rep, test);
  return rep;
}

}  // namespace qnc
