#include "pointseg/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "pointseg/errors.hpp"
#include "pointseg/features.hpp"

namespace pointseg {

namespace {

struct Problem {
  std::vector<std::size_t> row_ptr{0};
  std::vector<std::uint32_t> cols;
  std::vector<double> vals;
  std::vector<std::int8_t> labels;  // +1 boundary, -1 not
  std::size_t n_features = 0;
};

double logistic_loss(double margin_times_label) {
  // log(1 + exp(-t)), stable for both tails.
  const double t = margin_times_label;
  if (t < -35.0) return -t;
  return std::log1p(std::exp(-t));
}

double sigmoid(double u) {
  if (u >= 0.0) {
    return 1.0 / (1.0 + std::exp(-u));
  }
  const double e = std::exp(u);
  return e / (1.0 + e);
}

void compute_margins(const Problem& p, const std::vector<double>& w, double bias,
                     std::vector<double>& margins) {
  const std::size_t rows = p.labels.size();
  for (std::size_t r = 0; r < rows; ++r) {
    double m = bias;
    for (std::size_t k = p.row_ptr[r]; k < p.row_ptr[r + 1]; ++k) {
      m += w[p.cols[k]] * p.vals[k];
    }
    margins[r] = m;
  }
}

double total_loss(const Problem& p, const std::vector<double>& margins) {
  double loss = 0.0;
  for (std::size_t r = 0; r < p.labels.size(); ++r) {
    loss += logistic_loss(p.labels[r] * margins[r]);
  }
  return loss;
}

// Gradient of sum of logistic losses (without the C factor).
void loss_gradient(const Problem& p, const std::vector<double>& margins,
                   std::vector<double>& grad, double& grad_bias) {
  std::fill(grad.begin(), grad.end(), 0.0);
  grad_bias = 0.0;
  for (std::size_t r = 0; r < p.labels.size(); ++r) {
    const double y = p.labels[r];
    const double coeff = -y * sigmoid(-y * margins[r]);
    grad_bias += coeff;
    for (std::size_t k = p.row_ptr[r]; k < p.row_ptr[r + 1]; ++k) {
      grad[p.cols[k]] += coeff * p.vals[k];
    }
  }
}

double l1(const std::vector<double>& w) {
  double s = 0.0;
  for (double v : w) s += std::abs(v);
  return s;
}

struct SolveResult {
  std::vector<double> weights;
  double bias = 0.0;
  double objective = 0.0;
};

// FISTA with backtracking line search and adaptive restart on the composite
// objective ||w||_1 + C * loss(w, b); the bias is unpenalized.
SolveResult solve_l1_logistic(const Problem& p, double penalty_c, std::uint32_t max_iterations) {
  const std::size_t n = p.n_features;
  const std::size_t rows = p.labels.size();

  std::vector<double> w(n, 0.0), w_new(n, 0.0), z(n, 0.0), grad(n, 0.0);
  double bias = 0.0, bias_new = 0.0, zb = 0.0, grad_bias = 0.0;
  std::vector<double> margins(rows, 0.0);

  double lipschitz = 1.0;
  double t_momentum = 1.0;
  compute_margins(p, w, bias, margins);
  double objective = penalty_c * total_loss(p, margins);  // l1(0) == 0

  SolveResult best;
  best.weights = w;
  best.bias = bias;
  best.objective = objective;

  for (std::uint32_t iter = 0; iter < max_iterations; ++iter) {
    compute_margins(p, z, zb, margins);
    const double loss_z = total_loss(p, margins);
    loss_gradient(p, margins, grad, grad_bias);

    double loss_new = 0.0;
    for (;;) {
      const double step = 1.0 / lipschitz;
      for (std::size_t j = 0; j < n; ++j) {
        const double v = z[j] - step * penalty_c * grad[j];
        w_new[j] = v > step ? v - step : v < -step ? v + step : 0.0;
      }
      bias_new = zb - step * penalty_c * grad_bias;

      compute_margins(p, w_new, bias_new, margins);
      loss_new = total_loss(p, margins);
      double quad = 0.0, lin = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double d = w_new[j] - z[j];
        lin += grad[j] * d;
        quad += d * d;
      }
      const double db = bias_new - zb;
      lin += grad_bias * db;
      quad += db * db;
      if (penalty_c * loss_new <=
          penalty_c * loss_z + penalty_c * lin + 0.5 * lipschitz * quad + 1e-10) {
        break;
      }
      lipschitz *= 2.0;
    }

    const double objective_new = l1(w_new) + penalty_c * loss_new;
    if (objective_new < best.objective) {
      best.weights = w_new;
      best.bias = bias_new;
      best.objective = objective_new;
    }

    if (objective_new > objective) {
      // adaptive restart: drop the momentum
      t_momentum = 1.0;
      z = w_new;
      zb = bias_new;
    } else {
      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_momentum * t_momentum));
      const double beta = (t_momentum - 1.0) / t_next;
      for (std::size_t j = 0; j < n; ++j) z[j] = w_new[j] + beta * (w_new[j] - w[j]);
      zb = bias_new + beta * (bias_new - bias);
      t_momentum = t_next;
    }

    const bool converged =
        std::abs(objective - objective_new) <= 1e-9 * std::max(1.0, std::abs(objective));
    w.swap(w_new);
    bias = bias_new;
    objective = objective_new;
    if (converged && iter > 10) break;
  }
  return best;
}

}  // namespace

TrainOutput train(std::span<const Segmented> corpus, std::span<const std::u32string> dict,
                  const TrainConfig& config) {
  if (config.window < 1 || config.max_ngram < 1) {
    throw Error(ErrorKind::InvalidArgument, "window and max_ngram must be >= 1");
  }
  if (!(config.penalty_c > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "penalty C must be positive");
  }

  std::vector<std::u32string> dict_words(dict.begin(), dict.end());
  std::sort(dict_words.begin(), dict_words.end());
  dict_words.erase(std::unique(dict_words.begin(), dict_words.end()), dict_words.end());
  std::erase_if(dict_words, [](const std::u32string& w) { return w.empty(); });

  // Feature ids are assigned on first encounter; iteration order is fixed, so
  // training is reproducible.
  std::map<BoundaryFeature, std::uint32_t> feature_ids;
  Problem problem;
  for (const auto& sentence : corpus) {
    if (sentence.text.size() < 2) continue;
    const auto matches = find_dict_matches(sentence.text, dict_words);
    for (std::size_t i = 1; i < sentence.text.size(); ++i) {
      const auto feats = extract_features(sentence.text, i, config.window, config.max_ngram,
                                          matches, dict_words);
      for (const auto& [feat, count] : feats) {
        const auto [it, inserted] =
            feature_ids.try_emplace(feat, static_cast<std::uint32_t>(feature_ids.size()));
        problem.cols.push_back(it->second);
        problem.vals.push_back(count);
      }
      problem.row_ptr.push_back(problem.cols.size());
      problem.labels.push_back(sentence.boundaries[i - 1] ? 1 : -1);
    }
  }
  if (problem.labels.empty()) {
    throw Error(ErrorKind::EmptyCorpus, "no boundary examples in the corpus");
  }
  problem.n_features = feature_ids.size();

  const SolveResult solved =
      solve_l1_logistic(problem, config.penalty_c, config.max_iterations);

  TrainOutput out;
  out.examples = problem.labels.size();
  out.features_seen = problem.n_features;
  out.objective = solved.objective;

  double max_abs = std::abs(solved.bias);
  for (double v : solved.weights) max_abs = std::max(max_abs, std::abs(v));
  for (double v : solved.weights) out.features_nonzero += v != 0.0;
  const double scale = quantization_scale(max_abs);

  RawModel model;
  model.window = config.window;
  model.max_ngram = config.max_ngram;
  model.quant_scale = scale;
  model.bias = quantize_weight(solved.bias, scale);

  std::map<std::u32string, DictEntry> dict_acc;
  for (const auto& [feat, fid] : feature_ids) {
    const std::int32_t q = quantize_weight(solved.weights[fid], scale);
    if (q == 0) continue;
    switch (feat.kind) {
      case BoundaryFeature::Kind::CharNgram:
      case BoundaryFeature::Kind::TypeNgram: {
        auto& table = feat.kind == BoundaryFeature::Kind::CharNgram ? model.char_ngrams
                                                                    : model.type_ngrams;
        auto [it, inserted] = table.try_emplace(
            feat.pattern,
            std::vector<std::int32_t>(2 * config.window - feat.pattern.size() + 1, 0));
        // Eq-2 layout: index of relative position rel is W - n - rel.
        const auto idx = static_cast<std::size_t>(
            static_cast<std::int64_t>(config.window) -
            static_cast<std::int64_t>(feat.pattern.size()) - feat.rel_pos);
        it->second[idx] = q;
        break;
      }
      case BoundaryFeature::Kind::DictLeft:
        dict_acc[feat.pattern].weight_left = q;
        break;
      case BoundaryFeature::Kind::DictInside:
        dict_acc[feat.pattern].weight_inside = q;
        break;
      case BoundaryFeature::Kind::DictRight:
        dict_acc[feat.pattern].weight_right = q;
        break;
    }
  }
  for (auto& [word, entry] : dict_acc) {
    entry.word = word;
    model.dict.push_back(std::move(entry));
  }

  for (const auto& [pattern, weights] : model.char_ngrams) {
    for (std::int32_t v : weights) out.weights_stored += v != 0;
  }
  for (const auto& [pattern, weights] : model.type_ngrams) {
    for (std::int32_t v : weights) out.weights_stored += v != 0;
  }
  for (const auto& entry : model.dict) {
    out.weights_stored += (entry.weight_left != 0) + (entry.weight_inside != 0) +
                          (entry.weight_right != 0);
  }

  model.validate();
  out.model = std::move(model);
  return out;
}

}  // namespace pointseg
