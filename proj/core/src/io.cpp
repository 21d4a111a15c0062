#include "rsm/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace rsm {

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

std::string format_value(double v) {
  char buf[40];
  const auto rounded = static_cast<long long>(std::llround(v));
  if (v == static_cast<double>(rounded)) {
    std::snprintf(buf, sizeof(buf), "%lld", rounded);
  } else {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
  }
  return buf;
}

nlohmann::json vector_json(const Eigen::VectorXd& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Eigen::VectorXd vector_from_json(const nlohmann::json& arr, Eigen::Index expected,
                                 const char* what) {
  if (!arr.is_array() || static_cast<Eigen::Index>(arr.size()) != expected) {
    throw std::runtime_error(std::string("model field '") + what +
                             "' has the wrong length");
  }
  Eigen::VectorXd v(expected);
  for (Eigen::Index i = 0; i < expected; ++i) {
    v[i] = arr[static_cast<std::size_t>(i)].get<double>();
    if (!std::isfinite(v[i])) {
      throw std::runtime_error(std::string("model field '") + what +
                               "' contains a non-finite value");
    }
  }
  return v;
}

}  // namespace

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in = open_in(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::vector<int> read_labels(const std::string& path) {
  std::ifstream in = open_in(path);
  std::vector<int> labels;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    try {
      std::size_t used = 0;
      const int v = std::stoi(line, &used);
      while (used < line.size() &&
             std::isspace(static_cast<unsigned char>(line[used]))) {
        ++used;
      }
      if (used != line.size()) throw std::invalid_argument("trailing junk");
      labels.push_back(v);
    } catch (const std::exception&) {
      throw std::runtime_error("labels file '" + path + "' line " +
                               std::to_string(lineno) + " is not an integer");
    }
  }
  return labels;
}

void save_vocabulary(const Vocabulary& vocab, const std::string& path) {
  std::ofstream out = open_out(path);
  for (const auto& tok : vocab.tokens) out << tok << "\n";
  std::ofstream df = open_out(path + ".df");
  df << "#T=" << vocab.num_docs << "\n";
  for (const long long f : vocab.doc_freq) df << f << "\n";
}

Vocabulary load_vocabulary(const std::string& path) {
  Vocabulary vocab;
  {
    std::ifstream in = open_in(path);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      if (vocab.index.count(line)) {
        throw std::runtime_error("vocabulary '" + path + "' repeats token '" + line + "'");
      }
      vocab.index.emplace(line, static_cast<int>(vocab.tokens.size()));
      vocab.tokens.push_back(line);
    }
  }
  std::ifstream df(path + ".df");
  if (df) {
    std::string line;
    if (!std::getline(df, line) || line.rfind("#T=", 0) != 0) {
      throw std::runtime_error("doc-frequency file for '" + path +
                               "' lacks the #T= header");
    }
    vocab.num_docs = std::stoll(line.substr(3));
    while (std::getline(df, line)) {
      if (line.empty()) continue;
      vocab.doc_freq.push_back(std::stoll(line));
    }
    if (vocab.doc_freq.size() != vocab.tokens.size()) {
      throw std::runtime_error("doc-frequency file for '" + path +
                               "' does not align with the token list");
    }
  }
  return vocab;
}

void save_bow(const Corpus& corpus, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "#K=" << corpus.vocab_size << " T=" << corpus.num_docs() << "\n";
  for (std::size_t d = 0; d < corpus.num_docs(); ++d) {
    for (const auto& e : corpus.docs[d].entries) {
      out << d << "\t" << e.term << "\t" << format_value(e.value) << "\n";
    }
  }
}

Corpus load_bow(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("'" + path + "' is empty");
  int vocab_size = 0;
  long long num_docs = 0;
  if (std::sscanf(line.c_str(), "#K=%d T=%lld", &vocab_size, &num_docs) != 2 ||
      vocab_size <= 0 || num_docs < 0) {
    throw std::runtime_error("'" + path + "' lacks a valid #K=<K> T=<docs> header");
  }
  Corpus corpus;
  corpus.vocab_size = vocab_size;
  corpus.docs.resize(static_cast<std::size_t>(num_docs));
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    long long doc = 0;
    int term = 0;
    double value = 0.0;
    if (std::sscanf(line.c_str(), "%lld\t%d\t%lf", &doc, &term, &value) != 3 ||
        doc < 0 || doc >= num_docs || term < 0 || term >= vocab_size ||
        !(value > 0.0)) {
      throw std::runtime_error("'" + path + "' line " + std::to_string(lineno) +
                               " is not a valid doc/term/value row");
    }
    corpus.docs[static_cast<std::size_t>(doc)].entries.push_back({term, value});
  }
  for (auto& doc : corpus.docs) {
    std::sort(doc.entries.begin(), doc.entries.end(),
              [](const BowEntry& a, const BowEntry& b) { return a.term < b.term; });
  }
  corpus.source_lines.resize(corpus.docs.size());
  for (std::size_t i = 0; i < corpus.docs.size(); ++i) corpus.source_lines[i] = i;
  return corpus;
}

void save_model(const ModelFile& model, const std::string& path) {
  const auto& p = model.params;
  if (p.W.rows() != p.a.size() || p.W.cols() != p.b.size()) {
    throw std::runtime_error("model dimensions are inconsistent");
  }
  if (!p.W.allFinite() || !p.b.allFinite() || !p.a.allFinite()) {
    throw std::runtime_error("model parameters are not finite");
  }
  if (!model.vocab_tokens.empty() &&
      static_cast<Eigen::Index>(model.vocab_tokens.size()) != p.b.size()) {
    throw std::runtime_error("embedded vocabulary does not match K");
  }
  nlohmann::json j;
  j["format_version"] = 1;
  j["K"] = p.vocab();
  j["H"] = p.hidden();
  j["transform_flags"] = {{"log_count", model.transforms.log_count},
                          {"idf", model.transforms.idf}};
  if (!model.vocab_tokens.empty()) {
    j["vocab"] = {{"embedded", model.vocab_tokens}};
  } else if (!model.vocab_reference.empty()) {
    j["vocab"] = {{"reference", model.vocab_reference}};
  } else {
    j["vocab"] = nullptr;
  }
  nlohmann::json w = nlohmann::json::array();
  for (int jj = 0; jj < p.hidden(); ++jj) {
    for (int k = 0; k < p.vocab(); ++k) w.push_back(p.W(jj, k));
  }
  j["W"] = std::move(w);
  j["b"] = vector_json(p.b);
  j["a"] = vector_json(p.a);

  std::ofstream out = open_out(path);
  out << j.dump(1) << "\n";
}

ModelFile load_model(const std::string& path) {
  std::ifstream in = open_in(path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::runtime_error("model file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.contains("format_version") || j["format_version"].get<int>() != 1) {
    throw std::runtime_error("model file '" + path + "' has an unsupported format version");
  }
  const int vocab = j.at("K").get<int>();
  const int hidden = j.at("H").get<int>();
  if (vocab <= 0 || hidden <= 0) {
    throw std::runtime_error("model file '" + path + "' has non-positive dimensions");
  }

  ModelFile model;
  model.transforms.log_count = j.at("transform_flags").at("log_count").get<bool>();
  model.transforms.idf = j.at("transform_flags").at("idf").get<bool>();
  if (j.contains("vocab") && !j["vocab"].is_null()) {
    const auto& v = j["vocab"];
    if (v.contains("embedded")) {
      model.vocab_tokens = v["embedded"].get<std::vector<std::string>>();
      if (static_cast<int>(model.vocab_tokens.size()) != vocab) {
        throw std::runtime_error("model file '" + path +
                                 "' embedded vocabulary does not match K");
      }
    } else if (v.contains("reference")) {
      model.vocab_reference = v["reference"].get<std::string>();
    }
  }

  const auto& w = j.at("W");
  if (!w.is_array() || static_cast<int>(w.size()) != vocab * hidden) {
    throw std::runtime_error("model file '" + path + "' W has the wrong length");
  }
  model.params.W.resize(hidden, vocab);
  for (int jj = 0; jj < hidden; ++jj) {
    for (int k = 0; k < vocab; ++k) {
      const double x = w[static_cast<std::size_t>(jj) * vocab + k].get<double>();
      if (!std::isfinite(x)) {
        throw std::runtime_error("model file '" + path + "' W contains a non-finite value");
      }
      model.params.W(jj, k) = x;
    }
  }
  model.params.b = vector_from_json(j.at("b"), vocab, "b");
  model.params.a = vector_from_json(j.at("a"), hidden, "a");
  return model;
}

void save_retrieval_csv(const RetrievalReport& report, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "recall,precision\n";
  char buf[64];
  for (const auto& pt : report.pr_curve) {
    std::snprintf(buf, sizeof(buf), "%g,%.6f\n", pt.recall, pt.precision);
    out << buf;
  }
  std::snprintf(buf, sizeof(buf), "# MAP %.6f over %zu queries\n", report.map,
                report.num_queries);
  out << buf;
}

void save_classification_report(double accuracy, std::size_t n_test, int classes,
                                const std::string& path) {
  std::ofstream out = open_out(path);
  char buf[96];
  std::snprintf(buf, sizeof(buf), "{accuracy: %.6f, n_test: %zu, classes: %d}\n",
                accuracy, n_test, classes);
  out << buf;
}

void save_features_csv(const FeatureMatrix& features, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "doc_id";
  for (Eigen::Index h = 0; h < features.rows.cols(); ++h) out << ",h" << h;
  out << "\n";
  char buf[40];
  for (Eigen::Index i = 0; i < features.rows.rows(); ++i) {
    out << i;
    for (Eigen::Index h = 0; h < features.rows.cols(); ++h) {
      std::snprintf(buf, sizeof(buf), ",%.17g", features.rows(i, h));
      out << buf;
    }
    out << "\n";
  }
}

}  // namespace rsm
