#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "slant/embedding.hpp"
#include "slant/error.hpp"
#include "slant/parallel.hpp"
#include "slant/rng.hpp"

namespace slant {

struct TrainConfig {
  std::size_t dim = 100;
  int window = 5;
  int negatives = 5;
  int epochs = 5;
  std::int64_t min_count = 5;
  double subsample_threshold = 1e-3;
  double learning_rate = 0.025;  // linearly decayed over the run
  std::uint64_t seed = 1;
  bool deterministic = true;  // forces a single worker
  unsigned n_threads = 0;     // 0 = hardware default (ignored when deterministic)

  void validate() const {
    if (dim < 1) throw ArgumentError("train: dim must be >= 1");
    if (window < 1) throw ArgumentError("train: window must be >= 1");
    if (negatives < 1) throw ArgumentError("train: negatives must be >= 1");
    if (epochs < 1) throw ArgumentError("train: epochs must be >= 1");
    if (min_count < 1) throw ArgumentError("train: min_count must be >= 1");
    if (subsample_threshold <= 0.0)
      throw ArgumentError("train: subsample_threshold must be positive");
    if (learning_rate <= 0.0)
      throw ArgumentError("train: learning_rate must be positive");
  }
};

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

/// Loss of one training example. outputs[0] is the positive context
/// vector, the rest are negative samples:
///
///   L = -ln sigmoid(u_o . v_c) - sum_n ln sigmoid(-u_n . v_c)
inline double sgns_loss(std::span<const double> center,
                        const std::vector<std::span<const double>>& outputs) {
  double loss = -std::log(sigmoid(dot(outputs[0], center)));
  for (std::size_t k = 1; k < outputs.size(); ++k)
    loss += -std::log(sigmoid(-dot(outputs[k], center)));
  return loss;
}

struct SgnsGradient {
  double loss = 0.0;
  std::vector<double> center;                 // dL/d v_center
  std::vector<std::vector<double>> outputs;   // dL/d u_k, aligned with inputs
};

/// Analytic gradient of sgns_loss with respect to the center vector and
/// every output vector.
inline SgnsGradient sgns_loss_and_grad(
    std::span<const double> center,
    const std::vector<std::span<const double>>& outputs) {
  const std::size_t d = center.size();
  SgnsGradient g;
  g.center.assign(d, 0.0);
  g.outputs.resize(outputs.size());
  for (std::size_t k = 0; k < outputs.size(); ++k) {
    const bool positive = k == 0;
    const double x = dot(outputs[k], center);
    // d(-ln sigmoid(x))/dx = sigmoid(x) - 1;  for the negated argument the
    // chain rule flips the sign, giving sigmoid(x) for negative samples.
    double coeff;
    if (positive) {
      g.loss += -std::log(sigmoid(x));
      coeff = sigmoid(x) - 1.0;
    } else {
      g.loss += -std::log(sigmoid(-x));
      coeff = sigmoid(x);
    }
    g.outputs[k].assign(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
      g.center[i] += coeff * outputs[k][i];
      g.outputs[k][i] = coeff * center[i];
    }
  }
  return g;
}

struct SgnsRun {
  Embedding embedding;
  std::vector<double> epoch_mean_loss;
};

namespace detail {

struct SgnsModel {
  std::vector<std::string> words;   // vocab, ordered by count desc then word
  std::vector<std::int64_t> counts;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::vector<std::uint32_t>> sentences;  // in-vocab indices
  std::vector<double> neg_cumulative;  // unigram^0.75 cumulative weights
  std::vector<double> keep_prob;       // subsampling keep probability
  std::int64_t total_tokens = 0;       // in-vocab token occurrences
};

inline SgnsModel build_sgns_model(
    const std::vector<std::vector<std::string>>& sentences,
    const TrainConfig& cfg) {
  std::unordered_map<std::string, std::int64_t> raw;
  for (const auto& sent : sentences)
    for (const auto& tok : sent) ++raw[tok];

  SgnsModel m;
  for (const auto& [w, n] : raw)
    if (n >= cfg.min_count) m.words.push_back(w);
  if (m.words.empty())
    throw DataError("training error: no token meets min_count");
  std::sort(m.words.begin(), m.words.end(),
            [&](const std::string& a, const std::string& b) {
              if (raw[a] != raw[b]) return raw[a] > raw[b];
              return a < b;
            });
  m.counts.reserve(m.words.size());
  for (std::size_t i = 0; i < m.words.size(); ++i) {
    m.index.emplace(m.words[i], i);
    m.counts.push_back(raw[m.words[i]]);
    m.total_tokens += raw[m.words[i]];
  }

  m.sentences.reserve(sentences.size());
  for (const auto& sent : sentences) {
    std::vector<std::uint32_t> ids;
    ids.reserve(sent.size());
    for (const auto& tok : sent) {
      auto it = m.index.find(tok);
      if (it != m.index.end()) ids.push_back(static_cast<std::uint32_t>(it->second));
    }
    if (!ids.empty()) m.sentences.push_back(std::move(ids));
  }

  m.neg_cumulative.reserve(m.words.size());
  double acc = 0.0;
  for (std::int64_t n : m.counts) {
    acc += std::pow(static_cast<double>(n), 0.75);
    m.neg_cumulative.push_back(acc);
  }

  m.keep_prob.reserve(m.words.size());
  const double t = cfg.subsample_threshold;
  for (std::int64_t n : m.counts) {
    double f = static_cast<double>(n) / static_cast<double>(m.total_tokens);
    double p = (std::sqrt(f / t) + 1.0) * (t / f);
    m.keep_prob.push_back(p < 1.0 ? p : 1.0);
  }
  return m;
}

inline std::uint32_t sample_negative(const std::vector<double>& cumulative,
                                     Rng& rng) {
  double r = rng.uniform() * cumulative.back();
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
  if (it == cumulative.end()) --it;
  return static_cast<std::uint32_t>(it - cumulative.begin());
}

}  // namespace detail

/// Skip-gram with negative sampling, SGD on the exact sigmoid objective.
/// In deterministic mode a single worker consumes one seeded random stream
/// and the result is reproducible bit for bit. Otherwise worker threads
/// sweep disjoint sentence ranges and update the shared matrices without
/// locking; the occasional lost update is the standard hogwild trade and
/// results vary run to run.
///
/// Returned vectors are the input ("center") matrix; output vectors are
/// discarded. The embedding carries the raw corpus count of every
/// vocabulary word.
inline SgnsRun train_skipgram_run(
    const std::vector<std::vector<std::string>>& sentences,
    const TrainConfig& cfg) {
  cfg.validate();
  if (sentences.empty()) throw DataError("training error: empty corpus stream");
  detail::SgnsModel model = detail::build_sgns_model(sentences, cfg);

  const std::size_t v = model.words.size();
  const std::size_t d = cfg.dim;
  std::vector<double> input(v * d);
  std::vector<double> output(v * d, 0.0);

  Rng init_rng(cfg.seed);
  const double span = 1.0 / static_cast<double>(d);
  for (auto& x : input) x = init_rng.uniform(-0.5 * span, 0.5 * span);

  const std::int64_t plan =
      static_cast<std::int64_t>(cfg.epochs) * model.total_tokens + 1;
  std::atomic<std::int64_t> processed{0};

  unsigned workers = cfg.deterministic ? 1
                     : (cfg.n_threads == 0 ? default_threads() : cfg.n_threads);
  if (workers > model.sentences.size())
    workers = static_cast<unsigned>(model.sentences.size());
  if (workers == 0) workers = 1;

  std::vector<double> epoch_loss(cfg.epochs, 0.0);
  std::vector<std::int64_t> epoch_pairs(cfg.epochs, 0);
  std::mutex loss_mutex;

  auto sweep = [&](unsigned worker_id, std::size_t s_begin, std::size_t s_end) {
    Rng rng(cfg.seed + 1 + worker_id);
    std::vector<double> grad_center(d);
    std::vector<std::uint32_t> kept;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
      double loss_sum = 0.0;
      std::int64_t pair_count = 0;
      for (std::size_t s = s_begin; s < s_end; ++s) {
        const auto& sent = model.sentences[s];
        double progress = static_cast<double>(processed.load(std::memory_order_relaxed)) /
                          static_cast<double>(plan);
        double lr = cfg.learning_rate * std::max(1.0 - progress, 1e-4);

        kept.clear();
        for (std::uint32_t id : sent) {
          if (model.keep_prob[id] >= 1.0 || rng.uniform() < model.keep_prob[id])
            kept.push_back(id);
        }
        for (std::size_t pos = 0; pos < kept.size(); ++pos) {
          const std::uint32_t center = kept[pos];
          double* vc = input.data() + static_cast<std::size_t>(center) * d;
          const int half = cfg.window - static_cast<int>(rng.uniform_index(
                                            static_cast<std::size_t>(cfg.window)));
          for (int off = -half; off <= half; ++off) {
            if (off == 0) continue;
            std::int64_t q = static_cast<std::int64_t>(pos) + off;
            if (q < 0 || q >= static_cast<std::int64_t>(kept.size())) continue;
            const std::uint32_t context = kept[static_cast<std::size_t>(q)];

            std::fill(grad_center.begin(), grad_center.end(), 0.0);
            double pair_loss = 0.0;
            for (int k = 0; k <= cfg.negatives; ++k) {
              std::uint32_t target;
              bool positive = k == 0;
              if (positive) {
                target = context;
              } else {
                target = detail::sample_negative(model.neg_cumulative, rng);
                if (target == context) continue;
              }
              double* u = output.data() + static_cast<std::size_t>(target) * d;
              double x = 0.0;
              for (std::size_t i = 0; i < d; ++i) x += u[i] * vc[i];
              double sig = sigmoid(x);
              pair_loss += positive ? -std::log(sig) : -std::log(1.0 - sig);
              // positive: sigmoid(x) - 1, negative: sigmoid(x); SGD moves
              // against the gradient.
              double coeff = (positive ? sig - 1.0 : sig) * lr;
              for (std::size_t i = 0; i < d; ++i) {
                grad_center[i] += coeff * u[i];
                u[i] -= coeff * vc[i];
              }
            }
            for (std::size_t i = 0; i < d; ++i) vc[i] -= grad_center[i];
            loss_sum += pair_loss;
            ++pair_count;
          }
        }
        processed.fetch_add(static_cast<std::int64_t>(sent.size()),
                            std::memory_order_relaxed);
      }
      std::lock_guard<std::mutex> lock(loss_mutex);
      epoch_loss[epoch] += loss_sum;
      epoch_pairs[epoch] += pair_count;
    }
  };

  if (workers == 1) {
    sweep(0, 0, model.sentences.size());
  } else {
    std::vector<std::thread> pool;
    std::size_t per = model.sentences.size() / workers;
    std::size_t extra = model.sentences.size() % workers;
    std::size_t begin = 0;
    for (unsigned w = 0; w < workers; ++w) {
      std::size_t len = per + (w < extra ? 1 : 0);
      pool.emplace_back(sweep, w, begin, begin + len);
      begin += len;
    }
    for (auto& th : pool) th.join();
  }

  SgnsRun run;
  run.embedding.words = model.words;
  run.embedding.dim = d;
  run.embedding.vectors = std::move(input);
  for (std::size_t i = 0; i < v; ++i) {
    run.embedding.vocab.emplace(model.words[i], i);
    run.embedding.frequency.emplace(model.words[i], model.counts[i]);
  }
  run.epoch_mean_loss.resize(cfg.epochs);
  for (int e = 0; e < cfg.epochs; ++e)
    run.epoch_mean_loss[e] =
        epoch_pairs[e] > 0 ? epoch_loss[e] / static_cast<double>(epoch_pairs[e]) : 0.0;
  return run;
}

inline Embedding train_skipgram(
    const std::vector<std::vector<std::string>>& sentences,
    const TrainConfig& cfg) {
  return train_skipgram_run(sentences, cfg).embedding;
}

}  // namespace slant
