// qnc: quantum nearest-centroid pipeline CLI.
// Subcommands: loader, distance, classify, synth-gen, pca, ingest, noise-fit,
// report. All outputs embed the run configuration and seed; identical
// invocations produce byte-identical files. Exit codes are documented in
// docs/FORMATS.md.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qnc/angles.hpp"
#include "qnc/circuit.hpp"
#include "qnc/classifier.hpp"
#include "qnc/dataset.hpp"
#include "qnc/distance.hpp"
#include "qnc/noise_analysis.hpp"
#include "qnc/serialize.hpp"
#include "qnc/simulator.hpp"

namespace {

constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFileNotFound = 3;
constexpr int kExitBadData = 4;
constexpr int kExitInfeasible = 5;

using nlohmann::json;

struct NoiseArg {
  double gamma = 0.0;
  double fidelity = 1.0;
};

NoiseArg parse_noise(const std::string& s) {
  NoiseArg n;
  if (s.empty()) return n;
  const auto comma = s.find(',');
  if (comma == std::string::npos)
    throw CLI::ValidationError("--noise", "expected gamma,fidelity");
  n.gamma = std::stod(s.substr(0, comma));
  n.fidelity = std::stod(s.substr(comma + 1));
  return n;
}

std::vector<double> parse_values(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
  return out;
}

std::vector<double> read_vector_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qnc::FileError("cannot open " + path);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    std::stringstream ss(tok);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      if (!cell.empty()) out.push_back(std::stod(cell));
    }
  }
  if (out.empty()) throw qnc::DataFormatError("no numbers in " + path);
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw qnc::FileError("cannot open " + path + " for writing");
  out << text;
}

void emit_json(const std::string& path, const json& j) {
  write_text(path, j.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum nearest-centroid simulation pipeline"};
  app.require_subcommand(1);

  // ---- loader compile ----
  auto* loader = app.add_subcommand("loader", "Compile vectors into loader circuits");
  loader->require_subcommand(1);
  auto* compile = loader->add_subcommand("compile", "Compile one vector");
  std::string vec_values, vec_file, emit_angles, emit_circuit;
  bool optimized = false;
  compile->add_option("--values", vec_values, "Vector as comma-separated numbers");
  compile->add_option("--in", vec_file, "File with whitespace/comma separated numbers");
  compile->add_option("--emit-angles", emit_angles, "Write the angle tree JSON here ('-' = stdout)");
  compile->add_option("--emit-circuit", emit_circuit, "Write the circuit JSON here ('-' = stdout)");
  compile->add_flag("--optimized", optimized, "Emit the 2*sqrt(d)-qubit loader");

  // ---- distance ----
  auto* dist = app.add_subcommand("distance", "Estimate the distance between two vectors");
  std::string xfile, yfile, noise_str, emit_shots;
  std::uint64_t shots = 1000, seed = 0;
  bool mitigated = false, exact = false;
  dist->add_option("--x", xfile, "First vector file")->required();
  dist->add_option("--y", yfile, "Second vector file")->required();
  dist->add_option("--shots", shots, "Shots per estimate");
  dist->add_option("--noise", noise_str, "gamma,fidelity");
  dist->add_option("--seed", seed, "Master seed");
  bool systematic = false;
  dist->add_flag("--mitigated", mitigated, "Post-select unary outcomes");
  dist->add_flag("--exact", exact, "Use the ideal overlap probability (no sampling)");
  dist->add_flag("--systematic", systematic,
                 "Reuse one coherent-noise draw per gate across all shots");
  dist->add_option("--emit-shots", emit_shots, "Also write the raw shot record JSON here");

  // ---- classify ----
  auto* cls = app.add_subcommand("classify", "Nearest-centroid classification");
  std::string train_path, test_path, label_column = "label", out_path, cls_noise;
  std::uint64_t cls_shots = 1000, cls_seed = 0;
  bool cls_mitigated = false, cls_exact = false, classical_only = false, cls_shift = false;
  bool cls_systematic = false;
  std::size_t threads = 0;
  cls->add_option("--train", train_path, "Training dataset CSV")->required();
  cls->add_option("--test", test_path, "Test dataset CSV (defaults to the training file)");
  cls->add_option("--label-column", label_column, "Label column name");
  cls->add_option("--shots", cls_shots, "Shots per distance estimate");
  cls->add_option("--noise", cls_noise, "gamma,fidelity");
  cls->add_option("--seed", cls_seed, "Master seed");
  cls->add_option("--threads", threads, "Worker threads (0 = $QNC_THREADS or hardware)");
  cls->add_flag("--mitigated", cls_mitigated, "Post-select unary outcomes");
  cls->add_flag("--exact", cls_exact, "Use ideal overlap probabilities");
  cls->add_flag("--classical-only", classical_only, "Skip the quantum pass");
  cls->add_flag("--shift", cls_shift, "Apply the nonnegativity shift before classifying");
  cls->add_flag("--systematic", cls_systematic,
                "Reuse one coherent-noise draw per gate across the shots of each estimate");
  cls->add_option("--out", out_path, "Report JSON path ('-' = stdout)");

  // ---- synth-gen ----
  auto* synth = app.add_subcommand("synth-gen", "Generate the synthetic cluster dataset");
  qnc::SyntheticSpec spec;
  std::string synth_out;
  synth->add_option("--k", spec.k, "Cluster count");
  synth->add_option("--d", spec.d, "Dimension");
  synth->add_option("--n-per", spec.n_per, "Points per centroid");
  synth->add_option("--min-sep", spec.min_sep, "Minimum centroid separation");
  synth->add_option("--variance", spec.variance, "Per-coordinate Gaussian variance");
  synth->add_option("--radius", spec.radius, "Ball radius");
  synth->add_option("--seed", spec.seed, "Seed");
  synth->add_flag("--stddev", spec.variance_is_stddev, "Treat --variance as a standard deviation");
  auto* no_ball = synth->add_flag("--no-ball-constraint", "Do not redraw points outside the ball");
  synth->add_option("--out", synth_out, "Dataset CSV path ('-' = stdout)");

  // ---- pca ----
  auto* pca = app.add_subcommand("pca", "Project a dataset onto its top principal axes");
  std::string pca_in, pca_out, pca_label = "label";
  std::size_t pca_q = 8;
  pca->add_option("--in", pca_in, "Input dataset CSV")->required();
  pca->add_option("--q", pca_q, "Number of components");
  pca->add_option("--label-column", pca_label, "Label column name");
  pca->add_option("--out", pca_out, "Output dataset CSV ('-' = stdout)");

  // ---- ingest ----
  auto* ingest = app.add_subcommand("ingest", "Normalize external data into the dataset CSV form");
  std::string ing_csv, ing_images, ing_labels, ing_out, ing_label = "label";
  bool ing_shift = false, ing_pad = false;
  ingest->add_option("--csv", ing_csv, "CSV input");
  ingest->add_option("--idx-images", ing_images, "IDX image file");
  ingest->add_option("--idx-labels", ing_labels, "IDX label file");
  ingest->add_option("--label-column", ing_label, "Label column name (CSV input)");
  ingest->add_flag("--shift", ing_shift, "Apply the nonnegativity shift");
  ingest->add_flag("--pad", ing_pad, "Zero-pad features to the next power of two");
  ingest->add_option("--out", ing_out, "Output dataset CSV ('-' = stdout)");

  // ---- noise-fit ----
  auto* nfit = app.add_subcommand("noise-fit", "Fit gate fidelity from overlap pairs");
  std::string pairs_path, nfit_out;
  std::size_t fit_m = 30;
  nfit->add_option("--pairs", pairs_path, "CSV with c_sim,c_exp columns")->required();
  nfit->add_option("--m", fit_m, "Native two-qubit gate count")->required();
  nfit->add_option("--out", nfit_out, "Output JSON ('-' = stdout)");

  // ---- report ----
  auto* rep = app.add_subcommand("report", "Emit measured-vs-ideal overlap scatter data");
  std::string rep_train, rep_test, rep_noise, rep_out;
  std::uint64_t rep_shots = 1000, rep_seed = 0;
  bool rep_shift = false;
  rep->add_option("--train", rep_train, "Training dataset CSV")->required();
  rep->add_option("--test", rep_test, "Test dataset CSV (defaults to the training file)");
  rep->add_option("--shots", rep_shots, "Shots per pair");
  rep->add_option("--noise", rep_noise, "gamma,fidelity");
  rep->add_option("--seed", rep_seed, "Master seed");
  rep->add_flag("--shift", rep_shift, "Apply the nonnegativity shift first");
  rep->add_option("--out", rep_out, "Scatter CSV path ('-' = stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (compile->parsed()) {
      std::vector<double> values;
      if (!vec_values.empty()) values = parse_values(vec_values);
      else if (!vec_file.empty()) values = read_vector_file(vec_file);
      else throw CLI::ValidationError("loader compile", "need --values or --in");
      const qnc::DataVector x = qnc::DataVector::padded(values);
      if (emit_angles.empty() && emit_circuit.empty()) emit_angles = "-";
      if (!emit_angles.empty()) {
        emit_json(emit_angles, qnc::to_json(qnc::compile_angles(x)));
      }
      if (!emit_circuit.empty()) {
        const qnc::Circuit c = optimized
            ? qnc::build_optimized_loader(qnc::compile_matrix_angles(x))
            : qnc::build_parallel_loader(qnc::compile_angles(x));
        emit_json(emit_circuit, qnc::to_json(c));
      }
    } else if (dist->parsed()) {
      const NoiseArg na = parse_noise(noise_str);
      const qnc::DataVector x = qnc::DataVector::padded(read_vector_file(xfile));
      const qnc::DataVector y = qnc::DataVector::padded(read_vector_file(yfile));
      json config{{"x", xfile},  {"y", yfile},   {"shots", shots},
                  {"gamma", na.gamma}, {"fidelity", na.fidelity}, {"seed", seed},
                  {"mitigated", mitigated}, {"exact", exact}};
      qnc::DistanceEstimate est;
      if (exact) {
        const double p = qnc::ideal_overlap_probability(qnc::compile_angles(x),
                                                        qnc::compile_angles(y));
        est.p_hat = p;
        est.c_hat = std::sqrt(std::max(p, 0.0));
        est.l_hat = qnc::distance_from_overlap(x.norm, y.norm, est.c_hat);
        est.mitigated = false;
        est.shots_used = 0;
      } else {
        qnc::EstimateOptions opt;
        opt.shots = shots;
        opt.noise = qnc::NoiseSpec{na.gamma, na.fidelity, seed, systematic};
        opt.mitigated = mitigated;
        qnc::RngStream rng(seed);
        if (!emit_shots.empty()) {
          const qnc::Circuit c =
              qnc::build_distance_circuit(qnc::compile_angles(x), qnc::compile_angles(y));
          qnc::RngStream shot_rng = rng;  // same stream the estimate consumes
          const qnc::ShotRecord rec = qnc::sample_shots(c, opt.noise, opt.shots,
                                                        qnc::ReadoutMode::FullReadout, shot_rng);
          emit_json(emit_shots, qnc::to_json(rec));
        }
        est = qnc::estimate_distance(x, y, opt, rng);
      }
      emit_json("-", json{{"config", config}, {"estimate", qnc::to_json(est)}});
    } else if (cls->parsed()) {
      const NoiseArg na = parse_noise(cls_noise);
      qnc::Dataset train = qnc::load_csv(train_path, label_column);
      qnc::Dataset test = test_path.empty() ? train : qnc::load_csv(test_path, label_column);
      if (cls_shift) {
        train = qnc::nonnegativity_shift(train);
        test = qnc::nonnegativity_shift(test);
      }
      train = qnc::pad_to_pow2(train);
      test = qnc::pad_to_pow2(test);
      const qnc::CentroidModel model = qnc::fit(train);
      json out{{"config",
                {{"train", train_path},
                 {"test", test_path.empty() ? train_path : test_path},
                 {"shots", cls_shots},
                 {"gamma", na.gamma},
                 {"fidelity", na.fidelity},
                 {"seed", cls_seed},
                 {"mitigated", cls_mitigated},
                 {"exact", cls_exact},
                 {"shift", cls_shift}}}};
      out["classical"] = qnc::to_json(qnc::predict_classical(model, test));
      if (!classical_only) {
        qnc::QuantumPredictOptions qopt;
        qopt.shots = cls_shots;
        qopt.noise = qnc::NoiseSpec{na.gamma, na.fidelity, cls_seed, cls_systematic};
        qopt.mitigated = cls_mitigated;
        qopt.exact = cls_exact;
        qopt.seed = cls_seed;
        qopt.threads = threads;
        out["quantum"] = qnc::to_json(qnc::predict_quantum(model, test, qopt));
      }
      emit_json(out_path.empty() ? "-" : out_path, out);
    } else if (synth->parsed()) {
      spec.ball_constraint_points = no_ball->count() == 0;
      const qnc::Dataset ds = qnc::generate_synthetic(spec);
      if (synth_out.empty() || synth_out == "-") synth_out = "/dev/stdout";
      qnc::save_csv(ds, synth_out);
    } else if (pca->parsed()) {
      const qnc::Dataset ds = qnc::load_csv(pca_in, pca_label);
      const qnc::PcaModel model = qnc::fit_pca(ds.points, pca_q);
      const qnc::Dataset projected = qnc::apply_pca(model, ds);
      if (pca_out.empty() || pca_out == "-") pca_out = "/dev/stdout";
      qnc::save_csv(projected, pca_out);
    } else if (ingest->parsed()) {
      qnc::Dataset ds;
      if (!ing_csv.empty()) {
        ds = qnc::load_csv(ing_csv, ing_label);
      } else if (!ing_images.empty() && !ing_labels.empty()) {
        ds = qnc::load_idx(ing_images, ing_labels);
      } else {
        throw CLI::ValidationError("ingest", "need --csv or both --idx-images and --idx-labels");
      }
      if (ing_shift) ds = qnc::nonnegativity_shift(ds);
      if (ing_pad) ds = qnc::pad_to_pow2(ds);
      if (ing_out.empty() || ing_out == "-") ing_out = "/dev/stdout";
      qnc::save_csv(ds, ing_out);
    } else if (nfit->parsed()) {
      std::ifstream in(pairs_path);
      if (!in) throw qnc::FileError("cannot open " + pairs_path);
      std::vector<double> xs, ys;
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("c_sim", 0) == 0) continue;
        std::stringstream ss(line);
        std::string a, b;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ','))
          throw qnc::DataFormatError("noise-fit: expected c_sim,c_exp per line");
        xs.push_back(std::stod(a));
        ys.push_back(std::stod(b));
      }
      const qnc::LineFit fit = qnc::fit_line(xs, ys);
      emit_json(nfit_out.empty() ? "-" : nfit_out,
                json{{"config", {{"pairs", pairs_path}, {"m", fit_m}}},
                     {"slope", fit.slope},
                     {"intercept", fit.intercept},
                     {"fidelity", std::pow(fit.slope, 1.0 / static_cast<double>(fit_m))}});
    } else if (rep->parsed()) {
      const NoiseArg na = parse_noise(rep_noise);
      qnc::Dataset train = qnc::load_csv(rep_train, "label");
      qnc::Dataset test = rep_test.empty() ? train : qnc::load_csv(rep_test, "label");
      if (rep_shift) {
        train = qnc::nonnegativity_shift(train);
        test = qnc::nonnegativity_shift(test);
      }
      train = qnc::pad_to_pow2(train);
      test = qnc::pad_to_pow2(test);
      const qnc::CentroidModel model = qnc::fit(train);
      const qnc::RngStream root(rep_seed);
      std::ostringstream ss;
      ss << "# config: " << json{{"train", rep_train}, {"shots", rep_shots},
                                 {"gamma", na.gamma},  {"fidelity", na.fidelity},
                                 {"seed", rep_seed}}.dump()
         << "\n";
      ss << "c_sim,c_exp_raw,c_exp_mitigated,n,m\n";
      ss.precision(17);
      for (std::size_t p = 0; p < test.size(); ++p) {
        const qnc::DataVector x = qnc::DataVector::padded(test.points[p]);
        const qnc::AngleTree tx = qnc::compile_angles(x);
        for (std::size_t c = 0; c < model.num_classes(); ++c) {
          if (!model.trees[c]) continue;  // zero centroid: no circuit to report on
          const qnc::Circuit circuit = qnc::build_distance_circuit(tx, *model.trees[c]);
          const double c_sim = qnc::ideal_overlap_probability(tx, *model.trees[c]);
          qnc::RngStream rng = root.child(p, c);
          const qnc::ShotRecord shot_rec =
              qnc::sample_shots(circuit, qnc::NoiseSpec{na.gamma, na.fidelity, rep_seed, false},
                                rep_shots, qnc::ReadoutMode::FullReadout, rng);
          const qnc::OverlapEstimate ov = qnc::estimate_overlap(shot_rec);
          ss << c_sim << "," << ov.p_raw << ",";
          if (ov.p_mitigated) ss << *ov.p_mitigated;
          ss << "," << circuit.num_qubits() << "," << circuit.stats().native_tqg_count << "\n";
        }
      }
      write_text(rep_out.empty() ? "-" : rep_out, ss.str());
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const qnc::FileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFileNotFound;
  } catch (const qnc::DataFormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadData;
  } catch (const qnc::InfeasibleSpec& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
