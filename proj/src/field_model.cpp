#include "rfcw/field_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <random>
#include <stdexcept>

#include "rfcw/numerics.hpp"

namespace rfcw {

namespace {

constexpr double kProbTol = 1e-12;
constexpr double kStationaryTol = 1e-10;

void check_probability_vector(const std::vector<double>& p,
                              const char* what) {
  if (p.empty()) throw std::invalid_argument(std::string(what) + " is empty");
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0))
      throw std::invalid_argument(std::string(what) +
                                  " has a negative entry");
    sum += v;
  }
  if (std::fabs(sum - 1.0) > kProbTol)
    throw std::invalid_argument(std::string(what) + " does not sum to 1");
}

// Strong connectivity of the support graph of P via BFS in both directions.
bool irreducible(const std::vector<std::vector<double>>& p) {
  const std::size_t n = p.size();
  auto reach_all = [&](bool forward) {
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> queue{0};
    seen[0] = 1;
    while (!queue.empty()) {
      const std::size_t i = queue.back();
      queue.pop_back();
      for (std::size_t j = 0; j < n; ++j) {
        const double w = forward ? p[i][j] : p[j][i];
        if (w > 0.0 && !seen[j]) {
          seen[j] = 1;
          queue.push_back(j);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c; });
  };
  return reach_all(true) && reach_all(false);
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t pick_index(const std::vector<double>& probs, double u) {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return i;
  }
  return probs.size() - 1;
}

}  // namespace

std::string to_string(FieldLaw law) {
  switch (law) {
    case FieldLaw::Constant: return "constant";
    case FieldLaw::Dichotomous: return "dichotomous";
    case FieldLaw::Uniform: return "uniform";
    case FieldLaw::FiniteTable: return "finite_table";
    case FieldLaw::MarkovChain: return "markov_chain";
    case FieldLaw::Rotation: return "rotation";
  }
  return "unknown";
}

FieldModel FieldModel::constant(double h) {
  if (!std::isfinite(h)) throw std::invalid_argument("constant: h not finite");
  FieldModel m;
  m.law_ = FieldLaw::Constant;
  m.h_ = h;
  return m;
}

FieldModel FieldModel::dichotomous(double h, double alpha) {
  if (!(h >= 0.0) || !std::isfinite(h))
    throw std::invalid_argument("dichotomous: h must be >= 0");
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("dichotomous: alpha must be in [0,1]");
  FieldModel m;
  m.law_ = FieldLaw::Dichotomous;
  m.h_ = h;
  m.alpha_ = alpha;
  return m;
}

FieldModel FieldModel::uniform(double h) {
  if (!(h > 0.0) || !std::isfinite(h))
    throw std::invalid_argument("uniform: h must be > 0");
  FieldModel m;
  m.law_ = FieldLaw::Uniform;
  m.h_ = h;
  return m;
}

FieldModel FieldModel::finite_table(std::vector<double> values,
                                    std::vector<double> probs) {
  if (values.size() != probs.size())
    throw std::invalid_argument("finite_table: values/probs size mismatch");
  for (double v : values)
    if (!std::isfinite(v))
      throw std::invalid_argument("finite_table: non-finite value");
  check_probability_vector(probs, "finite_table probs");
  FieldModel m;
  m.law_ = FieldLaw::FiniteTable;
  m.values_ = std::move(values);
  m.probs_ = std::move(probs);
  return m;
}

FieldModel FieldModel::markov_chain(std::vector<double> states,
                                    std::vector<std::vector<double>> transition,
                                    std::vector<double> stationary) {
  const std::size_t n = states.size();
  if (n == 0) throw std::invalid_argument("markov_chain: no states");
  for (double v : states)
    if (!std::isfinite(v))
      throw std::invalid_argument("markov_chain: non-finite state");
  if (transition.size() != n)
    throw std::invalid_argument("markov_chain: transition is not n x n");
  for (const auto& row : transition) {
    if (row.size() != n)
      throw std::invalid_argument("markov_chain: transition is not n x n");
    check_probability_vector(row, "markov_chain transition row");
  }
  check_probability_vector(stationary, "markov_chain stationary");
  if (stationary.size() != n)
    throw std::invalid_argument("markov_chain: stationary size mismatch");
  for (std::size_t j = 0; j < n; ++j) {
    double pij = 0.0;
    for (std::size_t i = 0; i < n; ++i) pij += stationary[i] * transition[i][j];
    if (std::fabs(pij - stationary[j]) > kStationaryTol)
      throw std::invalid_argument(
          "markov_chain: stationary vector is not invariant");
  }
  if (!irreducible(transition))
    throw std::invalid_argument("markov_chain: chain is not irreducible");
  FieldModel m;
  m.law_ = FieldLaw::MarkovChain;
  m.values_ = std::move(states);
  m.probs_ = std::move(stationary);
  m.transition_ = std::move(transition);
  return m;
}

FieldModel FieldModel::rotation(double alpha, double h) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("rotation: alpha must be in (0,1)");
  if (!(h > 0.0) || !std::isfinite(h))
    throw std::invalid_argument("rotation: h must be > 0");
  FieldModel m;
  m.law_ = FieldLaw::Rotation;
  m.h_ = h;
  m.alpha_ = alpha;
  return m;
}

bool FieldModel::has_atoms() const {
  return law_ != FieldLaw::Uniform && law_ != FieldLaw::Rotation;
}

std::vector<std::pair<double, double>> FieldModel::atoms() const {
  switch (law_) {
    case FieldLaw::Constant:
      return {{h_, 1.0}};
    case FieldLaw::Dichotomous:
      return {{h_, alpha_}, {-h_, 1.0 - alpha_}};
    case FieldLaw::FiniteTable:
    case FieldLaw::MarkovChain: {
      std::vector<std::pair<double, double>> out;
      out.reserve(values_.size());
      for (std::size_t i = 0; i < values_.size(); ++i)
        out.emplace_back(values_[i], probs_[i]);
      return out;
    }
    case FieldLaw::Uniform:
    case FieldLaw::Rotation:
      return {};
  }
  return {};
}

double FieldModel::mean_field() const {
  switch (law_) {
    case FieldLaw::Constant:
      return h_;
    case FieldLaw::Dichotomous:
      return (2.0 * alpha_ - 1.0) * h_;
    case FieldLaw::Uniform:
    case FieldLaw::Rotation:
      return 0.0;
    case FieldLaw::FiniteTable:
    case FieldLaw::MarkovChain: {
      double m = 0.0;
      for (std::size_t i = 0; i < values_.size(); ++i)
        m += values_[i] * probs_[i];
      return m;
    }
  }
  return 0.0;
}

bool FieldModel::symmetric() const {
  switch (law_) {
    case FieldLaw::Constant:
      return h_ == 0.0;
    case FieldLaw::Dichotomous:
      return h_ == 0.0 || alpha_ == 0.5;
    case FieldLaw::Uniform:
    case FieldLaw::Rotation:
      return true;
    case FieldLaw::FiniteTable:
    case FieldLaw::MarkovChain: {
      std::map<double, double> mass;
      for (std::size_t i = 0; i < values_.size(); ++i)
        mass[values_[i]] += probs_[i];
      for (const auto& [v, p] : mass) {
        const auto it = mass.find(-v);
        if (it == mass.end() || std::fabs(it->second - p) > kProbTol)
          return false;
      }
      return true;
    }
  }
  return false;
}

std::uint64_t FieldModel::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
  auto mix = [&h](const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= bytes[i];
      h *= 0x100000001b3ull;
    }
  };
  const auto tag = static_cast<std::uint8_t>(law_);
  mix(&tag, 1);
  mix(&h_, sizeof h_);
  mix(&alpha_, sizeof alpha_);
  mix(values_.data(), values_.size() * sizeof(double));
  mix(probs_.data(), probs_.size() * sizeof(double));
  for (const auto& row : transition_)
    mix(row.data(), row.size() * sizeof(double));
  return h;
}

nlohmann::json FieldModel::to_json() const {
  nlohmann::json j;
  j["variant"] = to_string(law_);
  switch (law_) {
    case FieldLaw::Constant:
      j["h"] = h_;
      break;
    case FieldLaw::Dichotomous:
      j["h"] = h_;
      j["alpha"] = alpha_;
      break;
    case FieldLaw::Uniform:
      j["h"] = h_;
      break;
    case FieldLaw::FiniteTable:
      j["values"] = values_;
      j["probs"] = probs_;
      break;
    case FieldLaw::MarkovChain:
      j["states"] = values_;
      j["transition"] = transition_;
      j["stationary"] = probs_;
      break;
    case FieldLaw::Rotation:
      j["alpha"] = alpha_;
      j["h"] = h_;
      break;
  }
  return j;
}

FieldModel FieldModel::from_json(const nlohmann::json& j) {
  const std::string variant = j.at("variant").get<std::string>();
  if (variant == "constant") return constant(j.at("h").get<double>());
  if (variant == "dichotomous")
    return dichotomous(j.at("h").get<double>(), j.at("alpha").get<double>());
  if (variant == "uniform") return uniform(j.at("h").get<double>());
  if (variant == "finite_table")
    return finite_table(j.at("values").get<std::vector<double>>(),
                        j.at("probs").get<std::vector<double>>());
  if (variant == "markov_chain")
    return markov_chain(
        j.at("states").get<std::vector<double>>(),
        j.at("transition").get<std::vector<std::vector<double>>>(),
        j.at("stationary").get<std::vector<double>>());
  if (variant == "rotation")
    return rotation(j.at("alpha").get<double>(), j.at("h").get<double>());
  throw std::invalid_argument("unknown field model variant: " + variant);
}

FieldRealization sample_fields(const FieldModel& model, std::size_t n,
                               std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_fields: n must be >= 1");
  FieldRealization r;
  r.seed = seed;
  r.model = model;
  r.values.resize(n);

  std::uint64_t mix_state = seed;
  splitmix64(mix_state);
  mix_state ^= model.hash();
  std::mt19937_64 rng(splitmix64(mix_state));

  switch (model.law()) {
    case FieldLaw::Constant:
      std::fill(r.values.begin(), r.values.end(), model.h());
      break;
    case FieldLaw::Dichotomous:
      for (auto& v : r.values)
        v = uniform01(rng) < model.alpha() ? model.h() : -model.h();
      break;
    case FieldLaw::Uniform:
      for (auto& v : r.values)
        v = model.h() * (2.0 * uniform01(rng) - 1.0);
      break;
    case FieldLaw::FiniteTable:
      for (auto& v : r.values)
        v = model.values()[pick_index(model.probs(), uniform01(rng))];
      break;
    case FieldLaw::MarkovChain: {
      std::size_t state = pick_index(model.probs(), uniform01(rng));
      r.values[0] = model.values()[state];
      for (std::size_t i = 1; i < n; ++i) {
        state = pick_index(model.transition()[state], uniform01(rng));
        r.values[i] = model.values()[state];
      }
      break;
    }
    case FieldLaw::Rotation: {
      // Golden-ratio offset decorrelates orbits across seeds.
      constexpr double kGolden = 0.61803398874989484820;
      double w = static_cast<double>(seed) * kGolden;
      w -= std::floor(w);
      for (auto& v : r.values) {
        v = model.h() * (2.0 * w - 1.0);
        w += model.alpha();
        w -= std::floor(w);
      }
      break;
    }
  }
  return r;
}

double empirical_free_energy(const FieldRealization& realization, double x,
                             double beta) {
  if (realization.values.empty())
    throw std::invalid_argument("empirical_free_energy: empty realization");
  double sum = 0.0;
  for (double h : realization.values) sum += ln_cosh(x + beta * h);
  return sum / static_cast<double>(realization.values.size());
}

}  // namespace rfcw
