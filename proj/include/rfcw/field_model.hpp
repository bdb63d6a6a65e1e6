#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>
#include <utility>
#include <vector>

namespace rfcw {

enum class FieldLaw {
  Constant,
  Dichotomous,
  Uniform,
  FiniteTable,
  MarkovChain,
  Rotation,
};

std::string to_string(FieldLaw law);

// Law of the random external field. Immutable; validated at construction.
class FieldModel {
 public:
  FieldModel() = default;  // constant zero field
  static FieldModel constant(double h);
  // +h with probability alpha, -h with probability 1-alpha.
  static FieldModel dichotomous(double h, double alpha);
  // Uniform on [-h, h].
  static FieldModel uniform(double h);
  static FieldModel finite_table(std::vector<double> values,
                                 std::vector<double> probs);
  // Stationary chain on real-valued states; starts in the stationary law.
  static FieldModel markov_chain(std::vector<double> states,
                                 std::vector<std::vector<double>> transition,
                                 std::vector<double> stationary);
  // h_i = h * (2 frac(w0 + i a) - 1), an ergodic rotation of the circle.
  static FieldModel rotation(double alpha, double h);

  FieldLaw law() const { return law_; }
  double h() const { return h_; }
  double alpha() const { return alpha_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& probs() const { return probs_; }
  const std::vector<std::vector<double>>& transition() const {
    return transition_;
  }

  // Marginal law as (value, probability) atoms; empty for continuous laws.
  bool has_atoms() const;
  std::vector<std::pair<double, double>> atoms() const;
  // Half-width of the continuous support (Uniform/Rotation only).
  double support_half_width() const { return h_; }

  double mean_field() const;
  bool symmetric() const;
  std::uint64_t hash() const;

  nlohmann::json to_json() const;
  static FieldModel from_json(const nlohmann::json& j);

  friend bool operator==(const FieldModel&, const FieldModel&) = default;

 private:
  FieldLaw law_ = FieldLaw::Constant;
  double h_ = 0.0;
  double alpha_ = 0.0;
  std::vector<double> values_;
  std::vector<double> probs_;
  std::vector<std::vector<double>> transition_;
};

struct FieldRealization {
  std::vector<double> values;
  std::uint64_t seed = 0;
  FieldModel model;
};

// Deterministic given (model, n, seed); independent models get independent
// streams via the model hash.
FieldRealization sample_fields(const FieldModel& model, std::size_t n,
                               std::uint64_t seed);

// f_n(x) = (1/n) sum_i ln cosh(x + beta h_i).
double empirical_free_energy(const FieldRealization& realization, double x,
                             double beta);

}  // namespace rfcw
