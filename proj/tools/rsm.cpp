// Command-line surface for the rsm_core library: vocabulary building,
// training, evaluation, feature export, timing benchmarks, and the
// noise-level sweep.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rsm/bench.hpp"
#include "rsm/corpus.hpp"
#include "rsm/eval.hpp"
#include "rsm/io.hpp"
#include "rsm/synthetic.hpp"
#include "rsm/trainer_cd.hpp"
#include "rsm/trainer_nce.hpp"

namespace {

using nlohmann::json;

std::uint64_t effective_seed(std::uint64_t flag_seed) {
  if (const char* env = std::getenv("RSM_SEED")) {
    char* end = nullptr;
    const std::uint64_t v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') {
      throw std::runtime_error("RSM_SEED is not an unsigned integer");
    }
    return v;
  }
  return flag_seed;
}

struct InputSpec {
  std::string corpus_path;
  std::string labels_path;
  std::string vocab_path;
  bool bow = false;
};

struct LoadedInput {
  rsm::Corpus corpus;
  std::optional<rsm::Vocabulary> vocab;
};

LoadedInput load_input(const InputSpec& spec) {
  LoadedInput out;
  if (!spec.vocab_path.empty()) out.vocab = rsm::load_vocabulary(spec.vocab_path);
  if (spec.bow) {
    out.corpus = rsm::load_bow(spec.corpus_path);
    if (!spec.labels_path.empty()) {
      auto labels = rsm::read_labels(spec.labels_path);
      if (labels.size() != out.corpus.num_docs()) {
        throw std::runtime_error("labels file does not align with the BoW documents");
      }
      out.corpus.labels = std::move(labels);
    }
  } else {
    if (!out.vocab) {
      throw std::runtime_error("text corpora need --vocab (run build-vocab first)");
    }
    const auto lines = rsm::read_lines(spec.corpus_path);
    std::vector<int> labels;
    if (!spec.labels_path.empty()) labels = rsm::read_labels(spec.labels_path);
    out.corpus = rsm::vectorize(lines, *out.vocab, labels);
  }
  return out;
}

/// Brings a corpus into the representation a model was trained on.
void apply_transforms(rsm::Corpus& corpus, const rsm::TransformFlags& flags,
                      const std::optional<rsm::Vocabulary>& vocab) {
  if (flags.log_count) rsm::apply_log_count(corpus);
  if (flags.idf) {
    if (!vocab) {
      throw std::runtime_error("idf transform needs --vocab with document frequencies");
    }
    rsm::apply_idf(corpus, *vocab);
  }
}

void emit(const json& record, std::ostream* mirror) {
  const std::string line = record.dump();
  std::cout << line << "\n";
  if (mirror) *mirror << line << "\n";
}

int classes_from_labels(const std::vector<int>& a, const std::vector<int>& b) {
  int top = -1;
  for (int v : a) top = std::max(top, v);
  for (int v : b) top = std::max(top, v);
  if (top < 1) throw std::runtime_error("need at least two distinct classes");
  return top + 1;
}

// ---------------------------------------------------------------------------

int cmd_build_vocab(const std::string& input, const std::string& output, int max_size) {
  const auto lines = rsm::read_lines(input);
  const rsm::Vocabulary vocab = rsm::build_vocabulary(lines, max_size);
  if (vocab.size() == 0) throw std::runtime_error("corpus produced an empty vocabulary");
  rsm::save_vocabulary(vocab, output);
  emit(json{{"command", "build-vocab"},
            {"vocab_size", vocab.size()},
            {"documents", vocab.num_docs},
            {"output", output}},
       nullptr);
  return 0;
}

struct TrainArgs {
  InputSpec input;
  std::string model_path;
  std::string stats_path;
  std::string trainer = "nce";
  int hidden = 128;
  int epochs = 10;
  int batch = 128;
  double lr = 0.1;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool log_count = false;
  bool idf = false;
  int gibbs = 1;
  int noise_k = 5;
  double alpha = 0.5;
  bool cache_noise = false;
};

int cmd_train(const TrainArgs& args) {
  const std::uint64_t seed = effective_seed(args.seed);
  const bool is_nce = args.trainer == "nce";
  if (!is_nce && args.trainer != "cd" && args.trainer != "pcd") {
    throw std::runtime_error("unknown trainer '" + args.trainer + "'");
  }
  if (args.idf && !is_nce) {
    throw std::runtime_error("--idf is not supported by contrastive divergence");
  }

  LoadedInput in = load_input(args.input);
  if (args.idf && !in.vocab) {
    throw std::runtime_error("--idf needs --vocab with document frequencies");
  }
  if (args.log_count) rsm::apply_log_count(in.corpus);

  std::string stats_path = args.stats_path;
  if (stats_path.empty()) stats_path = args.model_path + ".stats.jsonl";
  std::ofstream stats(stats_path);
  if (!stats) throw std::runtime_error("cannot open '" + stats_path + "' for writing");

  json config{{"command", "train"},
              {"trainer", args.trainer},
              {"input", args.input.corpus_path},
              {"model", args.model_path},
              {"hidden", args.hidden},
              {"epochs", args.epochs},
              {"batch", args.batch},
              {"lr", args.lr},
              {"seed", seed},
              {"log_count", args.log_count},
              {"idf", args.idf}};
  if (is_nce) {
    config["noise_k"] = args.noise_k;
    config["alpha"] = args.alpha;
    config["cache_noise"] = args.cache_noise;
  } else {
    config["gibbs"] = args.gibbs;
  }
  emit(json{{"run_config", config}}, &stats);

  rsm::TrainResult result;
  if (is_nce) {
    rsm::NceConfig config_nce;
    config_nce.k = args.noise_k;
    config_nce.alpha = args.alpha;
    config_nce.learning_rate = args.lr;
    config_nce.batch_size = args.batch;
    config_nce.epochs = args.epochs;
    config_nce.hidden = args.hidden;
    config_nce.seed = seed;
    config_nce.weighting = args.idf ? rsm::Weighting::idf : rsm::Weighting::count;
    config_nce.cache_noise = args.cache_noise;
    config_nce.threads = args.threads;
    std::optional<Eigen::VectorXd> weights;
    if (args.idf) weights = rsm::idf_weights(*in.vocab);
    result = rsm::train_nce(in.corpus, config_nce, weights ? &*weights : nullptr);
  } else {
    rsm::CdConfig config_cd;
    config_cd.gibbs_steps = args.gibbs;
    config_cd.persistent = args.trainer == "pcd";
    config_cd.learning_rate = args.lr;
    config_cd.batch_size = args.batch;
    config_cd.epochs = args.epochs;
    config_cd.hidden = args.hidden;
    config_cd.seed = seed;
    config_cd.threads = args.threads;
    result = rsm::train_cd(in.corpus, config_cd);
  }

  for (const auto& es : result.epochs) {
    json record{{"trainer", args.trainer},
                {"epoch", es.epoch},
                {"objective", es.objective},
                {"wall_seconds", es.wall_seconds}};
    if (es.proxy_accuracy >= 0.0) record["proxy_accuracy"] = es.proxy_accuracy;
    emit(record, &stats);
  }

  rsm::ModelFile model;
  model.params = std::move(result.params);
  model.transforms.log_count = args.log_count;
  model.transforms.idf = args.idf;
  model.vocab_reference = args.input.vocab_path;
  rsm::save_model(model, args.model_path);
  emit(json{{"command", "train"}, {"model", args.model_path}, {"status", "saved"}},
       &stats);
  return 0;
}

struct EvalArgs {
  std::string model_path;
  std::string vocab_path;
  InputSpec index;
  InputSpec queries;
  std::string retrieval_csv;
  bool classify = false;
  std::string report_path;
  double l2 = 1e-4;
  int classifier_epochs = 200;
  double classifier_lr = 0.5;
  std::uint64_t seed = 0;
};

int cmd_eval(EvalArgs args) {
  const std::uint64_t seed = effective_seed(args.seed);
  const rsm::ModelFile model = rsm::load_model(args.model_path);
  args.index.vocab_path = args.vocab_path;
  args.queries.vocab_path = args.vocab_path;

  LoadedInput index = load_input(args.index);
  LoadedInput queries = load_input(args.queries);
  apply_transforms(index.corpus, model.transforms, index.vocab);
  apply_transforms(queries.corpus, model.transforms, queries.vocab);

  const rsm::FeatureMatrix index_f =
      rsm::extract_features(model.params, index.corpus, model.transforms);
  const rsm::FeatureMatrix query_f =
      rsm::extract_features(model.params, queries.corpus, model.transforms);

  emit(json{{"run_config",
             json{{"command", "eval"},
                  {"model", args.model_path},
                  {"index", args.index.corpus_path},
                  {"queries", args.queries.corpus_path},
                  {"classify", args.classify},
                  {"seed", seed}}}},
       nullptr);

  if (!args.retrieval_csv.empty()) {
    const rsm::RetrievalReport report = rsm::retrieve(query_f, index_f);
    rsm::save_retrieval_csv(report, args.retrieval_csv);
    emit(json{{"map", report.map},
              {"queries", report.num_queries},
              {"retrieval_csv", args.retrieval_csv}},
         nullptr);
  }
  if (args.classify) {
    if (index_f.labels.empty() || query_f.labels.empty()) {
      throw std::runtime_error("--classify needs labels for both index and queries");
    }
    const int classes = classes_from_labels(index_f.labels, query_f.labels);
    const rsm::Classifier cls = rsm::train_classifier(
        index_f, classes, args.l2, args.classifier_epochs, args.classifier_lr, seed);
    const double accuracy = rsm::classify_accuracy(cls, query_f);
    if (!args.report_path.empty()) {
      rsm::save_classification_report(accuracy, query_f.size(), classes,
                                      args.report_path);
    }
    emit(json{{"accuracy", accuracy},
              {"n_test", query_f.size()},
              {"classes", classes}},
         nullptr);
  }
  return 0;
}

int cmd_infer(const std::string& model_path, InputSpec input, const std::string& output) {
  const rsm::ModelFile model = rsm::load_model(model_path);
  LoadedInput in = load_input(input);
  apply_transforms(in.corpus, model.transforms, in.vocab);
  const rsm::FeatureMatrix features =
      rsm::extract_features(model.params, in.corpus, model.transforms);
  rsm::save_features_csv(features, output);
  emit(json{{"command", "infer"},
            {"documents", features.size()},
            {"output", output}},
       nullptr);
  return 0;
}

struct BenchmarkArgs {
  std::vector<int> vocab_sizes = {100, 1000, 5000, 20000};
  std::vector<int> gibbs = {1, 5};
  std::vector<int> noise_k = {5, 25};
  double alpha = 0.5;
  int batch = 128;
  int hidden = 128;
  int docs = 512;
  int len_min = 40;
  int len_max = 80;
  int warmup = 3;
  int timed = 20;
  unsigned threads = 0;
  std::uint64_t seed = 0;
  std::string output = "timing.csv";
};

int cmd_benchmark(const BenchmarkArgs& args) {
  const std::uint64_t seed = effective_seed(args.seed);
  if (args.timed < 1) throw std::runtime_error("--timed must be >= 1");
  emit(json{{"run_config",
             json{{"command", "benchmark"},
                  {"vocab_sizes", args.vocab_sizes},
                  {"gibbs", args.gibbs},
                  {"noise_k", args.noise_k},
                  {"batch", args.batch},
                  {"hidden", args.hidden},
                  {"warmup", args.warmup},
                  {"timed", args.timed},
                  {"seed", seed}}}},
       nullptr);

  std::vector<rsm::TimingRecord> records;
  for (const int vocab : args.vocab_sizes) {
    const rsm::Corpus corpus = rsm::make_unigram_corpus(
        vocab, args.docs, args.len_min, args.len_max, rsm::derive_seed(seed, vocab));
    for (const int gibbs : args.gibbs) {
      rsm::CdConfig config;
      config.gibbs_steps = gibbs;
      config.batch_size = args.batch;
      config.hidden = args.hidden;
      config.seed = seed;
      config.threads = args.threads;
      records.push_back(
          rsm::time_cd_minibatches(corpus, config, args.warmup, args.timed));
      const auto& r = records.back();
      emit(json{{"trainer", r.trainer},
                {"vocab_size", r.vocab_size},
                {"param", r.param},
                {"mean_seconds", r.mean_seconds},
                {"std_seconds", r.std_seconds}},
           nullptr);
    }
    for (const int k : args.noise_k) {
      rsm::NceConfig config;
      config.k = k;
      config.alpha = args.alpha;
      config.batch_size = args.batch;
      config.hidden = args.hidden;
      config.seed = seed;
      config.threads = args.threads;
      records.push_back(
          rsm::time_nce_minibatches(corpus, config, args.warmup, args.timed));
      const auto& r = records.back();
      emit(json{{"trainer", r.trainer},
                {"vocab_size", r.vocab_size},
                {"param", r.param},
                {"mean_seconds", r.mean_seconds},
                {"std_seconds", r.std_seconds}},
           nullptr);
    }
  }
  rsm::save_timing_csv(records, args.output);
  return 0;
}

struct SweepArgs {
  InputSpec input;
  std::vector<double> alphas = {0.0, 0.3, 0.5, 0.9};
  int noise_k = 5;
  int hidden = 16;
  int epochs = 10;
  int batch = 128;
  double lr = 0.1;
  bool log_count = false;
  unsigned threads = 0;
  std::uint64_t seed = 0;
  double l2 = 1e-4;
  int classifier_epochs = 200;
  double classifier_lr = 0.5;
  std::string output = "sweep.csv";
};

int cmd_sweep_alpha(const SweepArgs& args) {
  const std::uint64_t seed = effective_seed(args.seed);
  for (const double a : args.alphas) {
    if (!(a >= 0.0 && a < 1.0)) {
      throw std::runtime_error("sweep grid values must lie in [0, 1)");
    }
  }
  LoadedInput in = load_input(args.input);
  if (in.corpus.labels.empty()) {
    throw std::runtime_error("sweep-alpha needs labels to evaluate retrieval");
  }
  if (args.log_count) rsm::apply_log_count(in.corpus);

  // Even documents form the training/index half, odd documents the queries.
  rsm::Corpus train_half;
  rsm::Corpus query_half;
  train_half.vocab_size = query_half.vocab_size = in.corpus.vocab_size;
  train_half.transforms = query_half.transforms = in.corpus.transforms;
  for (std::size_t i = 0; i < in.corpus.num_docs(); ++i) {
    rsm::Corpus& side = (i % 2 == 0) ? train_half : query_half;
    side.docs.push_back(in.corpus.docs[i]);
    side.labels.push_back(in.corpus.labels[i]);
    side.source_lines.push_back(in.corpus.source_lines[i]);
  }

  emit(json{{"run_config",
             json{{"command", "sweep-alpha"},
                  {"input", args.input.corpus_path},
                  {"alphas", args.alphas},
                  {"noise_k", args.noise_k},
                  {"hidden", args.hidden},
                  {"epochs", args.epochs},
                  {"seed", seed}}}},
       nullptr);

  std::ofstream out(args.output);
  if (!out) throw std::runtime_error("cannot open '" + args.output + "' for writing");
  out << "alpha,map,accuracy\n";
  for (const double alpha : args.alphas) {
    rsm::NceConfig config;
    config.k = args.noise_k;
    config.alpha = alpha;
    config.learning_rate = args.lr;
    config.batch_size = args.batch;
    config.epochs = args.epochs;
    config.hidden = args.hidden;
    config.seed = seed;
    config.threads = args.threads;
    const rsm::TrainResult result = rsm::train_nce(train_half, config);

    const rsm::FeatureMatrix index_f =
        rsm::extract_features(result.params, train_half, train_half.transforms);
    const rsm::FeatureMatrix query_f =
        rsm::extract_features(result.params, query_half, query_half.transforms);
    const rsm::RetrievalReport report = rsm::retrieve(query_f, index_f);
    const int classes = classes_from_labels(index_f.labels, query_f.labels);
    const rsm::Classifier cls = rsm::train_classifier(
        index_f, classes, args.l2, args.classifier_epochs, args.classifier_lr, seed);
    const double accuracy = rsm::classify_accuracy(cls, query_f);

    char row[96];
    std::snprintf(row, sizeof(row), "%g,%.6f,%.6f\n", alpha, report.map, accuracy);
    out << row;
    emit(json{{"alpha", alpha}, {"map", report.map}, {"accuracy", accuracy}}, nullptr);
  }
  return 0;
}

void add_input_flags(CLI::App* cmd, InputSpec& spec, bool labels) {
  cmd->add_option("--input", spec.corpus_path, "corpus file, one document per line")
      ->required();
  cmd->add_flag("--bow", spec.bow, "input is a sparse doc/term/value file");
  if (labels) {
    cmd->add_option("--labels", spec.labels_path, "class id per corpus line");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"replicated-softmax topic model trainer and evaluator"};
  app.require_subcommand(1);

  // build-vocab
  std::string bv_input;
  std::string bv_output;
  int bv_max = 0;
  auto* build_vocab = app.add_subcommand("build-vocab", "rank terms and write a vocabulary");
  build_vocab->add_option("--input", bv_input, "corpus file")->required();
  build_vocab->add_option("--output", bv_output, "vocabulary file")->required();
  build_vocab->add_option("--max-size", bv_max, "keep the top N terms (0 = all)");

  // train
  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "train a model");
  add_input_flags(train_cmd, train.input, false);
  train_cmd->add_option("--vocab", train.input.vocab_path, "vocabulary file");
  train_cmd->add_option("--model", train.model_path, "output model file")->required();
  train_cmd->add_option("--stats", train.stats_path, "stats mirror file (default <model>.stats.jsonl)");
  train_cmd->add_option("--trainer", train.trainer, "cd, pcd, or nce")
      ->check(CLI::IsMember({"cd", "pcd", "nce"}));
  train_cmd->add_option("--hidden", train.hidden, "hidden units");
  train_cmd->add_option("--epochs", train.epochs, "training epochs");
  train_cmd->add_option("--batch", train.batch, "minibatch size");
  train_cmd->add_option("--lr", train.lr, "learning rate");
  train_cmd->add_option("--seed", train.seed, "rng seed (RSM_SEED overrides)");
  train_cmd->add_option("--threads", train.threads, "worker cap (0 = machine cores)");
  train_cmd->add_flag("--log-count", train.log_count, "ceil(log(1+c)) count transform");
  train_cmd->add_flag("--idf", train.idf, "idf-weighted inputs (nce only)");
  train_cmd->add_option("--gibbs", train.gibbs, "Gibbs sweeps per update (cd/pcd)");
  train_cmd->add_option("--noise-k", train.noise_k, "noise docs per data doc (nce)");
  train_cmd->add_option("--alpha", train.alpha, "retained fraction in [0,1) (nce)");
  train_cmd->add_flag("--cache-noise", train.cache_noise, "freeze epoch-1 noise bundles");

  // eval
  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "retrieval and classification reports");
  eval_cmd->add_option("--model", eval.model_path, "model file")->required();
  eval_cmd->add_option("--vocab", eval.vocab_path, "vocabulary file");
  eval_cmd->add_option("--index", eval.index.corpus_path, "index/training corpus")->required();
  eval_cmd->add_option("--index-labels", eval.index.labels_path, "labels for the index");
  eval_cmd->add_option("--queries", eval.queries.corpus_path, "query/test corpus")->required();
  eval_cmd->add_option("--query-labels", eval.queries.labels_path, "labels for the queries");
  eval_cmd->add_flag("--bow", eval.index.bow, "corpora are sparse doc/term/value files");
  eval_cmd->add_option("--retrieval-csv", eval.retrieval_csv, "write the P-R curve here");
  eval_cmd->add_flag("--classify", eval.classify, "train and score the classifier");
  eval_cmd->add_option("--report", eval.report_path, "classification report file");
  eval_cmd->add_option("--l2", eval.l2, "classifier L2 strength");
  eval_cmd->add_option("--classifier-epochs", eval.classifier_epochs, "classifier SGD epochs");
  eval_cmd->add_option("--classifier-lr", eval.classifier_lr, "classifier learning rate");
  eval_cmd->add_option("--seed", eval.seed, "rng seed (RSM_SEED overrides)");

  // infer
  std::string infer_model;
  std::string infer_output;
  InputSpec infer_input;
  auto* infer_cmd = app.add_subcommand("infer", "export hidden-posterior features");
  infer_cmd->add_option("--model", infer_model, "model file")->required();
  infer_cmd->add_option("--vocab", infer_input.vocab_path, "vocabulary file");
  add_input_flags(infer_cmd, infer_input, false);
  infer_cmd->add_option("--output", infer_output, "features CSV")->required();

  // benchmark
  BenchmarkArgs bench;
  auto* bench_cmd = app.add_subcommand("benchmark", "time CD and NCE minibatches");
  bench_cmd->add_option("--vocab-sizes", bench.vocab_sizes, "vocabulary sizes")
      ->delimiter(',');
  bench_cmd->add_option("--gibbs", bench.gibbs, "CD Gibbs step counts")->delimiter(',');
  bench_cmd->add_option("--noise-k", bench.noise_k, "NCE noise ratios")->delimiter(',');
  bench_cmd->add_option("--alpha", bench.alpha, "NCE retained fraction");
  bench_cmd->add_option("--batch", bench.batch, "minibatch size");
  bench_cmd->add_option("--hidden", bench.hidden, "hidden units");
  bench_cmd->add_option("--docs", bench.docs, "synthetic corpus size");
  bench_cmd->add_option("--len-min", bench.len_min, "min document length");
  bench_cmd->add_option("--len-max", bench.len_max, "max document length");
  bench_cmd->add_option("--warmup", bench.warmup, "warmup batches");
  bench_cmd->add_option("--timed", bench.timed, "timed batches");
  bench_cmd->add_option("--threads", bench.threads, "worker cap (0 = machine cores)");
  bench_cmd->add_option("--seed", bench.seed, "rng seed (RSM_SEED overrides)");
  bench_cmd->add_option("--output", bench.output, "timing CSV");

  // sweep-alpha
  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep-alpha", "train and evaluate across noise levels");
  add_input_flags(sweep_cmd, sweep.input, true);
  sweep_cmd->add_option("--vocab", sweep.input.vocab_path, "vocabulary file");
  sweep_cmd->add_option("--alphas", sweep.alphas, "noise levels in [0,1)")->delimiter(',');
  sweep_cmd->add_option("--noise-k", sweep.noise_k, "noise docs per data doc");
  sweep_cmd->add_option("--hidden", sweep.hidden, "hidden units");
  sweep_cmd->add_option("--epochs", sweep.epochs, "training epochs per alpha");
  sweep_cmd->add_option("--batch", sweep.batch, "minibatch size");
  sweep_cmd->add_option("--lr", sweep.lr, "learning rate");
  sweep_cmd->add_flag("--log-count", sweep.log_count, "ceil(log(1+c)) count transform");
  sweep_cmd->add_option("--threads", sweep.threads, "worker cap (0 = machine cores)");
  sweep_cmd->add_option("--seed", sweep.seed, "rng seed (RSM_SEED overrides)");
  sweep_cmd->add_option("--l2", sweep.l2, "classifier L2 strength");
  sweep_cmd->add_option("--classifier-epochs", sweep.classifier_epochs, "classifier SGD epochs");
  sweep_cmd->add_option("--classifier-lr", sweep.classifier_lr, "classifier learning rate");
  sweep_cmd->add_option("--output", sweep.output, "per-alpha CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (build_vocab->parsed()) return cmd_build_vocab(bv_input, bv_output, bv_max);
    if (train_cmd->parsed()) {
      if (train_cmd->count("--noise-k") && train.trainer != "nce") {
        throw std::runtime_error("--noise-k requires --trainer nce");
      }
      if (train_cmd->count("--alpha") && train.trainer != "nce") {
        throw std::runtime_error("--alpha requires --trainer nce");
      }
      if (train_cmd->count("--cache-noise") && train.trainer != "nce") {
        throw std::runtime_error("--cache-noise requires --trainer nce");
      }
      if (train_cmd->count("--gibbs") && train.trainer == "nce") {
        throw std::runtime_error("--gibbs requires --trainer cd or pcd");
      }
      return cmd_train(train);
    }
    if (eval_cmd->parsed()) {
      eval.queries.bow = eval.index.bow;
      return cmd_eval(eval);
    }
    if (infer_cmd->parsed()) return cmd_infer(infer_model, infer_input, infer_output);
    if (bench_cmd->parsed()) return cmd_benchmark(bench);
    if (sweep_cmd->parsed()) return cmd_sweep_alpha(sweep);
    throw std::runtime_error("no command selected");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
