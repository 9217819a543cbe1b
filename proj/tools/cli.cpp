// Copyright 2026 The pairlike Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <CLI11.hpp>

#include "pairlike/abstention.hpp"
#include "pairlike/coupling.hpp"
#include "pairlike/datagen.hpp"
#include "pairlike/ensemble.hpp"
#include "pairlike/eval.hpp"
#include "pairlike/io.hpp"
#include "pairlike/rng.hpp"

namespace pairlike::cli {
namespace {

// Flags shared by couple, bootstrap and distance.
struct CouplingFlags {
  std::string method = "wlw";
  std::string stabilize;  // empty: the method's default
  double tau = 1e-3;
  double rho = 1e-3;

  void attach(CLI::App* cmd) {
    cmd->add_option("--method", method, "Coupling method")
        ->check(CLI::IsMember({"wlw", "bc"}))
        ->capture_default_str();
    cmd->add_option("--stabilize", stabilize,
                    "none|clip|drop (default: clip for bc, none for wlw)")
        ->check(CLI::IsMember({"none", "clip", "drop"}));
    cmd->add_option("--tau", tau, "Clip threshold")->capture_default_str();
    cmd->add_option("--rho", rho, "Class-drop threshold")->capture_default_str();
  }

  CouplingConfig config() const {
    CouplingConfig c = CouplingConfig::defaults(parse_method(method));
    if (!stabilize.empty()) c.stabilization = parse_stabilization(stabilize);
    c.tau = tau;
    c.rho = rho;
    c.validate();
    return c;
  }
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'", 0);
  return in;
}

// Writes to `path` when given, otherwise to the fallback stream.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw FormatError("cannot write '" + path + "'", 0);
      stream_ = file_.get();
    }
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

int single_class_count(const std::vector<io::PairwiseRow>& rows) {
  if (rows.empty()) return 0;
  const int c = rows.front().matrix.classes();
  for (const auto& r : rows) {
    if (r.matrix.classes() != c) {
      throw StructuralError("samples '" + rows.front().sample_id + "' and '" + r.sample_id +
                            "' have different class counts");
    }
  }
  return c;
}

// ---------------------------------------------------------------------------

int cmd_restrict(const std::string& input, const std::string& output, std::ostream& out) {
  std::ifstream in = open_input(input);
  const auto rows = io::read_posteriors(in);
  std::vector<io::PairwiseRow> pairs;
  pairs.reserve(rows.size());
  for (const auto& row : rows) {
    if (!row.posterior) {
      throw FormatError("sample '" + row.sample_id + "' has no posterior (all nan)", 0);
    }
    const Posterior& p = *row.posterior;
    std::vector<double> upper;
    upper.reserve(pair_count(p.classes()));
    for (int i = 0; i < p.classes(); ++i) {
      for (int j = i + 1; j < p.classes(); ++j) {
        try {
          upper.push_back(iia_restrict(p, i, j).prob_a);
        } catch (const SingularityError& e) {
          throw FormatError("sample '" + row.sample_id + "': " + e.what(), 0);
        }
      }
    }
    pairs.push_back({row.sample_id, PairwiseLikelihoodMatrix::from_upper(p.classes(), upper)});
  }
  Output sink(output, out);
  io::write_pairwise(sink.stream(), pairs);
  return kExitOk;
}

int cmd_couple(const std::string& input, const CouplingFlags& flags, bool strict,
               const std::string& output, std::ostream& out, std::ostream& err) {
  const CouplingConfig config = flags.config();
  std::ifstream in = open_input(input);
  const auto rows = io::read_pairwise(in);
  const int c = single_class_count(rows);
  std::vector<io::PosteriorRow> result;
  result.reserve(rows.size());
  std::size_t failed = 0;
  for (const auto& row : rows) {
    try {
      result.push_back({row.sample_id, couple(row.matrix, config)});
    } catch (const Error& e) {
      ++failed;
      err << "couple: sample '" << row.sample_id << "' failed: " << e.what() << '\n';
      result.push_back({row.sample_id, std::nullopt});
    }
  }
  Output sink(output, out);
  io::write_posteriors(sink.stream(), result, c);
  return failed > 0 && strict ? kExitNumerical : kExitOk;
}

struct CorrectRow {
  std::string name;
  double pairwise = std::numeric_limits<double>::quiet_NaN();
  double wlw = 0.0;
  double bc = 0.0;
};

int cmd_correct(const std::string& input, const std::vector<std::string>& patch_paths,
                const std::string& labels_path, double tau, const std::string& output,
                const std::string& predictions_path, std::ostream& out) {
  std::ifstream in = open_input(input);
  const auto rows = io::read_posteriors(in);
  if (rows.empty()) throw FormatError("no posteriors to correct", 0);
  for (const auto& r : rows) {
    if (!r.posterior) throw FormatError("sample '" + r.sample_id + "' has no posterior", 0);
  }
  const int c = rows.front().posterior->classes();
  std::ifstream lin = open_input(labels_path);
  const LabeledBatch labels = io::read_labels(lin, c);
  for (const auto& r : rows) {
    if (!labels.label_of(r.sample_id)) {
      throw PreconditionError("no label for sample '" + r.sample_id + "'");
    }
  }

  std::vector<io::PatchTable> tables;
  std::optional<std::pair<int, int>> sweep_pair;
  bool single_pair = true;
  for (const auto& path : patch_paths) {
    std::ifstream pin = open_input(path);
    tables.push_back(io::read_patches(pin));
    const auto note = [&](const CorrectionPatch& patch) {
      patch.validate(c);
      for (const auto& e : patch.entries()) {
        if (!sweep_pair) sweep_pair = {e.i, e.j};
        else if (*sweep_pair != std::pair{e.i, e.j}) single_pair = false;
      }
    };
    if (tables.back().shared) note(*tables.back().shared);
    for (const auto& [id, patch] : tables.back().per_sample) note(patch);
  }
  if (!single_pair) sweep_pair.reset();

  CouplingConfig wlw = CouplingConfig::defaults(Method::kWuLinWeng);
  CouplingConfig bc = CouplingConfig::defaults(Method::kBayesCovariant);
  bc.tau = tau;
  bc.validate();

  std::unique_ptr<Output> preds;
  if (!predictions_path.empty()) {
    preds = std::make_unique<Output>(predictions_path, out);
    preds->stream() << "# " << io::kFormatVersion << "\npatch,sample_id,wlw,bc\n";
  }

  const auto evaluate = [&](const std::string& name, const io::PatchTable* table) {
    std::vector<ClassPrediction> wlw_pred, bc_pred;
    std::vector<PairwiseObservation> pair_obs;
    std::vector<LabeledSample> pair_labels;
    for (const auto& r : rows) {
      const CorrectionPatch patch = table ? table->for_sample(r.sample_id) : CorrectionPatch{};
      const PairwiseLikelihoodMatrix m = partial_correct(*r.posterior, patch);
      wlw_pred.push_back({r.sample_id, argmax_predict(couple(m, wlw))});
      bc_pred.push_back({r.sample_id, argmax_predict(couple(m, bc))});
      if (preds) {
        preds->stream() << name << ',' << r.sample_id << ',' << wlw_pred.back().predicted
                        << ',' << bc_pred.back().predicted << '\n';
      }
      const int label = *labels.label_of(r.sample_id);
      if (sweep_pair && (label == sweep_pair->first || label == sweep_pair->second)) {
        pair_obs.push_back(
            {r.sample_id, BinaryPrediction(sweep_pair->first, sweep_pair->second,
                                           m(sweep_pair->first, sweep_pair->second))});
        pair_labels.push_back({r.sample_id, label});
      }
    }
    CorrectRow row{name};
    row.wlw = accuracy(wlw_pred, labels);
    row.bc = accuracy(bc_pred, labels);
    if (!pair_obs.empty()) {
      row.pairwise = pairwise_accuracy(pair_obs, LabeledBatch(c, std::move(pair_labels)));
    }
    return row;
  };

  std::vector<CorrectRow> report;
  report.push_back(evaluate("baseline", nullptr));
  for (std::size_t k = 0; k < tables.size(); ++k) {
    report.push_back(evaluate(patch_paths[k], &tables[k]));
  }

  Output sink(output, out);
  std::ostream& os = sink.stream();
  os << "# " << io::kFormatVersion << '\n';
  os << "patch,i,j,pairwise_accuracy,wlw_accuracy,bc_accuracy\n";
  for (const auto& row : report) {
    os << row.name << ',';
    if (sweep_pair) os << sweep_pair->first << ',' << sweep_pair->second;
    else os << ',';
    os << ',' << (std::isnan(row.pairwise) ? "" : io::format_double(row.pairwise)) << ','
       << io::format_double(row.wlw) << ',' << io::format_double(row.bc) << '\n';
  }
  // Least-squares lines of multiclass against pairwise accuracy over the
  // corrections, when they vary.
  if (sweep_pair && report.size() >= 3) {
    std::vector<double> x, yw, yb;
    for (std::size_t k = 1; k < report.size(); ++k) {
      x.push_back(report[k].pairwise);
      yw.push_back(report[k].wlw);
      yb.push_back(report[k].bc);
    }
    try {
      const LineFit fw = fit_line(x, yw);
      const LineFit fb = fit_line(x, yb);
      os << "# fit,wlw,slope=" << io::format_double(fw.slope)
         << ",intercept=" << io::format_double(fw.intercept)
         << ",r2=" << io::format_double(fw.r_squared) << '\n';
      os << "# fit,bc,slope=" << io::format_double(fb.slope)
         << ",intercept=" << io::format_double(fb.intercept)
         << ",r2=" << io::format_double(fb.r_squared) << '\n';
    } catch (const PreconditionError&) {
    }
  }
  return kExitOk;
}

int cmd_bootstrap(const std::vector<std::string>& inputs, std::size_t n, std::uint64_t seed,
                  const CouplingFlags& flags, bool strict, const std::string& output,
                  const std::string& draws_path, std::ostream& out, std::ostream& err) {
  if (inputs.size() < 2) throw PreconditionError("bootstrap needs at least two sources");
  if (n == 0) throw PreconditionError("--n must be positive");
  const CouplingConfig config = flags.config();
  std::vector<std::vector<io::PairwiseRow>> sources;
  for (const auto& path : inputs) {
    std::ifstream in = open_input(path);
    sources.push_back(io::read_pairwise(in));
  }
  const auto& first = sources.front();
  for (std::size_t s = 1; s < sources.size(); ++s) {
    if (sources[s].size() != first.size()) {
      throw PreconditionError("source '" + inputs[s] + "' has a different number of samples");
    }
    for (std::size_t k = 0; k < first.size(); ++k) {
      if (sources[s][k].sample_id != first[k].sample_id) {
        throw PreconditionError("source '" + inputs[s] + "' row " + std::to_string(k) +
                                " is sample '" + sources[s][k].sample_id + "', expected '" +
                                first[k].sample_id + "'");
      }
    }
  }
  const int c = single_class_count(first);

  Output sink(output, out);
  io::write_summary_header(sink.stream());
  std::unique_ptr<Output> draws;
  if (!draws_path.empty()) {
    draws = std::make_unique<Output>(draws_path, out);
    std::ostream& ds = draws->stream();
    ds << "# " << io::kFormatVersion << "\nsample_id,draw";
    for (int k = 0; k < c; ++k) ds << ",p_" << k;
    for (int i = 0; i < c; ++i) {
      for (int j = i + 1; j < c; ++j) ds << ",src_" << i << '_' << j;
    }
    ds << '\n';
  }

  bool any_failed = false;
  for (std::size_t k = 0; k < first.size(); ++k) {
    std::vector<PairwiseLikelihoodMatrix> mats;
    for (const auto& src : sources) mats.push_back(src[k].matrix);
    const auto recombined = bootstrap_recombine(mats, n, substream_seed(seed, k));
    std::vector<Posterior> coupled;
    std::size_t excluded = 0;
    for (std::size_t d = 0; d < recombined.size(); ++d) {
      std::optional<Posterior> p;
      try {
        p = couple(recombined[d].matrix, config);
      } catch (const Error& e) {
        ++excluded;
        err << "bootstrap: sample '" << first[k].sample_id << "' draw " << d
            << " failed: " << e.what() << '\n';
      }
      if (draws) {
        std::ostream& ds = draws->stream();
        ds << first[k].sample_id << ',' << d;
        for (int q = 0; q < c; ++q) ds << ',' << (p ? io::format_double((*p)[q]) : "nan");
        for (int src : recombined[d].source_per_pair) ds << ',' << src;
        ds << '\n';
      }
      if (p) coupled.push_back(std::move(*p));
    }
    if (excluded > 0) any_failed = true;
    if (coupled.empty()) {
      sink.stream() << first[k].sample_id << ",excluded," << excluded << '\n';
      continue;
    }
    EnsembleSummary summary = summarize_posteriors(coupled, seed);
    summary.excluded = excluded;
    io::write_summary(sink.stream(), first[k].sample_id, summary);
  }
  return any_failed && strict ? kExitNumerical : kExitOk;
}

int cmd_distance(const std::string& input, const CouplingFlags& flags, bool strict,
                 const std::string& output, std::ostream& out, std::ostream& err) {
  const CouplingConfig config = flags.config();
  std::ifstream in = open_input(input);
  const auto rows = io::read_pairwise(in);
  std::vector<SurenessScore> scores;
  bool failed = false;
  for (const auto& row : rows) {
    try {
      scores.push_back({row.sample_id, config.method, sureness_distance(row.matrix, config)});
    } catch (const Error& e) {
      failed = true;
      err << "distance: sample '" << row.sample_id << "' failed: " << e.what() << '\n';
    }
  }
  Output sink(output, out);
  io::write_distances(sink.stream(), scores);
  return failed && strict ? kExitNumerical : kExitOk;
}

int cmd_calibrate(const std::string& input, double quantile, const std::string& method,
                  const std::string& output, std::ostream& out) {
  std::ifstream in = open_input(input);
  const auto scores = io::read_distances(in);
  std::vector<Method> methods;
  if (!method.empty()) {
    methods.push_back(parse_method(method));
  } else {
    for (Method m : {Method::kWuLinWeng, Method::kBayesCovariant}) {
      for (const auto& s : scores) {
        if (s.method == m) {
          methods.push_back(m);
          break;
        }
      }
    }
  }
  if (methods.empty()) throw PreconditionError("no distances to calibrate");
  Output sink(output, out);
  std::ostream& os = sink.stream();
  os << "# " << io::kFormatVersion << "\nmethod,quantile,count,threshold\n";
  for (Method m : methods) {
    std::vector<double> d;
    for (const auto& s : scores) {
      if (s.method == m) d.push_back(s.distance);
    }
    os << to_string(m) << ',' << io::format_double(quantile) << ',' << d.size() << ','
       << io::format_double(calibrate_threshold(d, quantile)) << '\n';
  }
  return kExitOk;
}

int cmd_evaluate(const std::string& input, const std::string& labels_path,
                 const std::string& confusion_path, const std::string& output,
                 std::ostream& out) {
  std::ifstream in = open_input(input);
  const auto rows = io::read_posteriors(in);
  if (rows.empty()) throw FormatError("no posteriors to evaluate", 0);
  std::vector<ClassPrediction> predictions;
  for (const auto& r : rows) {
    if (!r.posterior) throw FormatError("sample '" + r.sample_id + "' has no posterior", 0);
    predictions.push_back({r.sample_id, argmax_predict(*r.posterior)});
  }
  std::ifstream lin = open_input(labels_path);
  const LabeledBatch labels = io::read_labels(lin, rows.front().posterior->classes());
  const ConfusionMatrix confusion = confusion_matrix(predictions, labels);
  if (!confusion_path.empty()) {
    Output cm(confusion_path, out);
    io::write_confusion(cm.stream(), confusion);
  }
  Output sink(output, out);
  std::ostream& os = sink.stream();
  os << "# " << io::kFormatVersion << "\nmetric,value\n";
  os << "samples," << confusion.total() << '\n';
  os << "accuracy," << io::format_double(confusion.accuracy()) << '\n';
  if (const auto worst = worst_confused_pair(confusion)) {
    os << "worst_pair," << worst->i << '-' << worst->j << '\n';
    os << "worst_pair_errors," << worst->errors << '\n';
  } else {
    os << "worst_pair,none\n";
  }
  if (confusion_path.empty()) {
    io::write_confusion(os, confusion);
  }
  return kExitOk;
}

struct SynthFlags {
  int classes = 3;
  int dim = 0;  // 0: same as classes
  int n_per_class = 100;
  double scale = 1.0;
  double separation = 3.0;
  std::uint64_t seed = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--classes", classes, "Number of classes")->capture_default_str();
    cmd->add_option("--dim", dim, "Feature dimension (default: classes)");
    cmd->add_option("--n-per-class", n_per_class, "Samples per class")->capture_default_str();
    cmd->add_option("--scale", scale, "Per-class standard deviation")->capture_default_str();
    cmd->add_option("--separation", separation, "Distance of class means from the origin")
        ->capture_default_str();
    cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  }

  BlobSpec spec() const {
    return BlobSpec::simplex(classes, dim > 0 ? dim : classes, separation, scale, n_per_class,
                             seed);
  }
};

int cmd_synth(const SynthFlags& flags, double noise, const std::string& prefix) {
  const BlobSpec spec = flags.spec();
  const BlobData data = generate_blobs(spec);
  std::vector<io::PosteriorRow> posteriors;
  std::vector<io::PairwiseRow> pairs;
  for (Eigen::Index r = 0; r < data.features.rows(); ++r) {
    const std::string& id = data.labels.samples()[static_cast<std::size_t>(r)].sample_id;
    const Eigen::VectorXd x = data.features.row(r).transpose();
    const Posterior p = bayes_posterior_blobs(spec, x);
    posteriors.push_back({id, p});
    pairs.push_back({id, perturb_log_posterior(bayes_log_posterior_blobs(spec, x), noise,
                                               substream_seed(spec.seed ^ 0x5eedULL,
                                                              static_cast<std::uint64_t>(r)))});
  }
  const auto write = [&](const std::string& suffix, auto&& fn) {
    Output sink(prefix + suffix, std::cout);
    fn(sink.stream());
  };
  write("features.csv", [&](std::ostream& os) { io::write_features(os, data.features, data.labels); });
  write("labels.csv", [&](std::ostream& os) { io::write_labels(os, data.labels); });
  write("posteriors.csv", [&](std::ostream& os) { io::write_posteriors(os, posteriors, spec.classes); });
  write("pairwise.csv", [&](std::ostream& os) { io::write_pairwise(os, pairs); });
  return kExitOk;
}

int cmd_recovery(const SynthFlags& flags, const std::vector<double>& noise,
                 const std::string& output, std::ostream& out) {
  const BlobSpec spec = flags.spec();
  const auto rows = coupling_recovery_experiment(spec, noise, spec.seed);
  Output sink(output, out);
  std::ostream& os = sink.stream();
  os << "# " << io::kFormatVersion << '\n';
  os << "noise_scale,samples,bayes_accuracy,wlw_accuracy,bc_accuracy,best_column_accuracy";
  for (int k = 0; k < spec.classes; ++k) os << ",column_" << k << "_accuracy";
  os << '\n';
  for (const auto& r : rows) {
    os << io::format_double(r.noise_scale) << ',' << r.samples << ','
       << io::format_double(r.bayes_accuracy) << ',' << io::format_double(r.wlw_accuracy)
       << ',' << io::format_double(r.bc_accuracy) << ','
       << io::format_double(r.best_column_accuracy);
    for (double a : r.column_accuracy) os << ',' << io::format_double(a);
    os << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pairwise likelihood coupling toolkit"};
  app.name(args.empty() ? "pairlike" : args.front());
  app.set_version_flag("--version", "pairlike " + std::string(io::kFormatVersion));
  app.require_subcommand(1);

  std::string input, output;
  bool strict = false;
  CouplingFlags coupling;

  auto* restrict_cmd = app.add_subcommand("restrict", "Posterior CSV -> pairwise CSV");
  restrict_cmd->add_option("input", input, "Posterior CSV")->required();
  restrict_cmd->add_option("-o,--out", output, "Output file (default stdout)");

  auto* couple_cmd = app.add_subcommand("couple", "Pairwise CSV -> posterior CSV");
  couple_cmd->add_option("input", input, "Pairwise CSV")->required();
  couple_cmd->add_option("-o,--out", output, "Output file (default stdout)");
  couple_cmd->add_flag("--strict", strict, "Exit 2 if any sample fails to couple");
  coupling.attach(couple_cmd);

  std::vector<std::string> patches;
  std::string labels_path, predictions_path;
  double correct_tau = 1e-3;
  auto* correct_cmd = app.add_subcommand("correct", "Partial correction accuracy report");
  correct_cmd->add_option("input", input, "Base posterior CSV")->required();
  correct_cmd->add_option("--patch", patches, "Patch CSV (repeatable, one row per file)")
      ->required();
  correct_cmd->add_option("--labels", labels_path, "Labels CSV")->required();
  correct_cmd->add_option("--tau", correct_tau, "Clip threshold for bc")->capture_default_str();
  correct_cmd->add_option("--predictions", predictions_path, "Per-sample predictions CSV");
  correct_cmd->add_option("-o,--out", output, "Report file (default stdout)");

  std::vector<std::string> sources;
  std::size_t n = 100;
  std::uint64_t seed = 0;
  std::string draws_path;
  auto* bootstrap_cmd = app.add_subcommand("bootstrap", "Recombine pairwise sources");
  bootstrap_cmd->add_option("sources", sources, "Two or more pairwise CSVs")->required();
  bootstrap_cmd->add_option("--n", n, "Recombinations per sample")->capture_default_str();
  bootstrap_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  bootstrap_cmd->add_option("--draws", draws_path, "Per-draw posteriors and source choices");
  bootstrap_cmd->add_option("-o,--out", output, "Summary file (default stdout)");
  bootstrap_cmd->add_flag("--strict", strict, "Exit 2 if any draw fails to couple");
  coupling.attach(bootstrap_cmd);

  auto* distance_cmd = app.add_subcommand("distance", "Distance from the Bradley-Terry manifold");
  distance_cmd->add_option("input", input, "Pairwise CSV")->required();
  distance_cmd->add_option("-o,--out", output, "Output file (default stdout)");
  distance_cmd->add_flag("--strict", strict, "Exit 2 if any sample fails");
  coupling.attach(distance_cmd);

  double quantile = 0.95;
  std::string calibrate_method;
  auto* calibrate_cmd = app.add_subcommand("calibrate", "Abstention threshold from distances");
  calibrate_cmd->add_option("input", input, "Distance CSV")->required();
  calibrate_cmd->add_option("--quantile", quantile, "Nearest-rank quantile in (0, 1)")
      ->capture_default_str();
  calibrate_cmd->add_option("--method", calibrate_method, "Only this method")
      ->check(CLI::IsMember({"wlw", "bc"}));
  calibrate_cmd->add_option("-o,--out", output, "Output file (default stdout)");

  std::string confusion_path;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Accuracy and confusion matrix");
  evaluate_cmd->add_option("input", input, "Posterior CSV")->required();
  evaluate_cmd->add_option("--labels", labels_path, "Labels CSV")->required();
  evaluate_cmd->add_option("--confusion", confusion_path, "Confusion matrix CSV");
  evaluate_cmd->add_option("-o,--out", output, "Report file (default stdout)");

  SynthFlags synth;
  double noise = 0.0;
  std::string prefix;
  auto* synth_cmd = app.add_subcommand("synth", "Synthetic Gaussian blob dataset");
  synth.attach(synth_cmd);
  synth_cmd->add_option("--noise", noise, "Log-odds noise on the pairwise file")
      ->capture_default_str();
  synth_cmd->add_option("--out-prefix", prefix,
                        "Writes <prefix>{features,labels,posteriors,pairwise}.csv")
      ->required();

  std::vector<double> noise_levels{0.0, 0.5, 1.0, 2.0};
  auto* recovery_cmd = app.add_subcommand("recovery", "Coupling-recovery experiment");
  synth.attach(recovery_cmd);
  recovery_cmd->add_option("--noise", noise_levels, "Noise scales")->delimiter(',');
  recovery_cmd->add_option("-o,--out", output, "Output file (default stdout)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInput;
  }

  try {
    if (*restrict_cmd) return cmd_restrict(input, output, out);
    if (*couple_cmd) return cmd_couple(input, coupling, strict, output, out, err);
    if (*correct_cmd) {
      return cmd_correct(input, patches, labels_path, correct_tau, output, predictions_path,
                         out);
    }
    if (*bootstrap_cmd) {
      return cmd_bootstrap(sources, n, seed, coupling, strict, output, draws_path, out, err);
    }
    if (*distance_cmd) return cmd_distance(input, coupling, strict, output, out, err);
    if (*calibrate_cmd) return cmd_calibrate(input, quantile, calibrate_method, output, out);
    if (*evaluate_cmd) return cmd_evaluate(input, labels_path, confusion_path, output, out);
    if (*synth_cmd) return cmd_synth(synth, noise, prefix);
    if (*recovery_cmd) return cmd_recovery(synth, noise_levels, output, out);
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const SingularityError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const NumericalFailure& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const EmptyResultError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace pairlike::cli
