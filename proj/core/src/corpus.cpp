#include "rsm/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <iostream>
#include <map>
#include <stdexcept>

namespace rsm {

namespace {

bool is_word_byte(unsigned char c) {
  // Bytes above 0x7f belong to multibyte UTF-8 sequences; keep them so
  // non-ASCII words survive edge stripping.
  return std::isalnum(c) != 0 || c >= 0x80;
}

}  // namespace

int Vocabulary::lookup(std::string_view token) const {
  auto it = index.find(std::string(token));
  return it == index.end() ? -1 : it->second;
}

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  const std::size_t n = line.size();
  while (i < n) {
    while (i < n && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < n && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) {
      std::size_t lo = i;
      std::size_t hi = j;
      while (lo < hi && !is_word_byte(static_cast<unsigned char>(line[lo]))) ++lo;
      while (hi > lo && !is_word_byte(static_cast<unsigned char>(line[hi - 1]))) --hi;
      if (hi > lo) {
        std::string tok(line.substr(lo, hi - lo));
        for (char& c : tok) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        out.push_back(std::move(tok));
      }
    }
    i = j;
  }
  return out;
}

Vocabulary build_vocabulary(const std::vector<std::string>& lines, int max_terms) {
  // std::map keeps term order lexicographic, which fixes the tie-break.
  std::map<std::string, long long> total;
  std::map<std::string, long long> docs_with;
  long long num_docs = 0;
  for (const auto& line : lines) {
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    ++num_docs;
    std::sort(toks.begin(), toks.end());
    for (std::size_t i = 0; i < toks.size(); ++i) {
      ++total[toks[i]];
      if (i == 0 || toks[i] != toks[i - 1]) ++docs_with[toks[i]];
    }
  }

  std::vector<std::pair<std::string, long long>> ranked(total.begin(), total.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (max_terms > 0 && ranked.size() > static_cast<std::size_t>(max_terms)) {
    ranked.resize(static_cast<std::size_t>(max_terms));
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  Vocabulary vocab;
  vocab.num_docs = num_docs;
  vocab.tokens.reserve(ranked.size());
  vocab.doc_freq.reserve(ranked.size());
  for (const auto& [tok, count] : ranked) {
    vocab.index.emplace(tok, static_cast<int>(vocab.tokens.size()));
    vocab.tokens.push_back(tok);
    vocab.doc_freq.push_back(docs_with[tok]);
  }
  return vocab;
}

Corpus vectorize(const std::vector<std::string>& lines, const Vocabulary& vocab,
                 const std::vector<int>& labels) {
  if (!labels.empty() && labels.size() != lines.size()) {
    throw std::runtime_error("labels do not align with corpus lines: " +
                             std::to_string(labels.size()) + " labels for " +
                             std::to_string(lines.size()) + " lines");
  }
  Corpus corpus;
  corpus.vocab_size = vocab.size();
  for (std::size_t li = 0; li < lines.size(); ++li) {
    std::map<int, double> counts;
    for (const auto& tok : tokenize(lines[li])) {
      const int id = vocab.lookup(tok);
      if (id >= 0) counts[id] += 1.0;
    }
    if (counts.empty()) {
      std::cerr << "warning: skipping document with no in-vocabulary tokens at line "
                << (li + 1) << "\n";
      continue;
    }
    BowDocument doc;
    doc.entries.reserve(counts.size());
    for (const auto& [term, value] : counts) doc.entries.push_back({term, value});
    corpus.docs.push_back(std::move(doc));
    corpus.source_lines.push_back(li);
    if (!labels.empty()) corpus.labels.push_back(labels[li]);
  }
  return corpus;
}

void apply_log_count(Corpus& corpus) {
  if (corpus.transforms.log_count) {
    throw std::runtime_error("log-count transform already applied to this corpus");
  }
  if (corpus.transforms.idf) {
    throw std::runtime_error("log-count transform must come before idf weighting");
  }
  for (auto& doc : corpus.docs) {
    for (auto& e : doc.entries) e.value = std::ceil(std::log1p(e.value));
  }
  corpus.transforms.log_count = true;
}

Eigen::VectorXd idf_weights(const Vocabulary& vocab) {
  if (vocab.num_docs <= 0) {
    throw std::runtime_error("vocabulary has no document counts; cannot derive idf");
  }
  Eigen::VectorXd w(vocab.size());
  for (int k = 0; k < vocab.size(); ++k) {
    const long long df = vocab.doc_freq[static_cast<std::size_t>(k)];
    if (df <= 0) {
      throw std::runtime_error("term '" + vocab.tokens[static_cast<std::size_t>(k)] +
                               "' has zero document frequency; cannot derive idf");
    }
    w[k] = std::log(static_cast<double>(vocab.num_docs) / static_cast<double>(df));
  }
  return w;
}

void apply_idf(BowDocument& doc, const Eigen::VectorXd& weights) {
  std::vector<BowEntry> kept;
  kept.reserve(doc.entries.size());
  for (auto& e : doc.entries) {
    const double v = e.value * weights[e.term];
    if (v > 0.0) kept.push_back({e.term, v});
  }
  doc.entries = std::move(kept);
}

void apply_idf(Corpus& corpus, const Vocabulary& vocab) {
  if (corpus.transforms.idf) {
    throw std::runtime_error("idf weighting already applied to this corpus");
  }
  if (vocab.size() != corpus.vocab_size) {
    throw std::runtime_error("vocabulary size " + std::to_string(vocab.size()) +
                             " does not match corpus vocabulary " +
                             std::to_string(corpus.vocab_size));
  }
  const Eigen::VectorXd w = idf_weights(vocab);
  for (auto& doc : corpus.docs) apply_idf(doc, w);
  corpus.transforms.idf = true;
}

Eigen::VectorXd empirical_distribution(const Corpus& corpus) {
  if (corpus.transforms.idf) {
    throw std::runtime_error("term distribution must be computed before idf weighting");
  }
  if (corpus.docs.empty()) {
    throw std::runtime_error("cannot compute term distribution of an empty corpus");
  }
  Eigen::VectorXd p = Eigen::VectorXd::Zero(corpus.vocab_size);
  for (const auto& doc : corpus.docs) {
    for (const auto& e : doc.entries) p[e.term] += e.value;
  }
  const double total = p.sum();
  if (total <= 0.0) {
    throw std::runtime_error("corpus has no token mass");
  }
  p /= total;
  return p;
}

}  // namespace rsm
