// Copyright 2026 The edgestream Authors
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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "edgestream/core/config.hpp"
#include "edgestream/core/error.hpp"
#include "edgestream/core/rng.hpp"
#include "edgestream/core/value.hpp"

namespace edgestream::generate {

EDGESTREAM_DEFINE_ERROR(EmptySample);

enum class GeneratorKind { kHyperplane, kMixture, kFitted };
enum class DriftKind { kAbrupt, kGradual };

std::string to_string(GeneratorKind k);
std::string to_string(DriftKind k);

/// Parameters of one concept. Which members apply depends on the generator:
/// hyperplane uses weights/threshold, mixture uses means/variances, fitted
/// uses priors. Empty members are derived from the previous concept.
struct Concept {
  std::vector<double> weights;
  std::optional<double> threshold;
  std::vector<std::vector<double>> means;      // [class][dim]
  std::vector<std::vector<double>> variances;  // [class][dim]
  std::vector<double> priors;

  bool operator==(const Concept&) const = default;
};

struct DriftPoint {
  std::uint64_t at = 0;
  DriftKind kind = DriftKind::kAbrupt;
  std::uint64_t width = 0;
  std::optional<Concept> next;

  bool operator==(const DriftPoint&) const = default;
};

using DriftSchedule = std::vector<DriftPoint>;

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::kHyperplane;
  std::uint32_t d = 2;
  std::vector<std::string> classes{"0", "1"};
  double noise_prob = 0.0;
  std::vector<double> skew;  // class priors; empty means uniform
  DriftSchedule schedule;
  std::uint64_t seed = 0;
  std::optional<double> rate_eps;
  std::optional<Concept> initial;  // JSON key "concept"
  std::string model;  // fitted generator: path to a FittedModel document

  bool operator==(const GeneratorSpec&) const = default;
};

std::vector<Violation> validate_generator(const GeneratorSpec& spec);
Parsed<GeneratorSpec> generator_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const GeneratorSpec& spec);

/// Concept boundary recorded as drift ground truth.
struct Boundary {
  std::uint64_t event_n = 0;
  DriftKind kind = DriftKind::kAbrupt;

  bool operator==(const Boundary&) const = default;
};

/// CSV with header event_n,kind.
void write_drift_csv(std::ostream& out, const std::vector<Boundary>& boundaries);

struct FittedField {
  std::string name;
  FieldKind kind = FieldKind::kNumeric;
  double lo = 0.0;  // padded histogram range
  double hi = 0.0;
  std::vector<double> masses;
  std::vector<std::string> categories;
  std::vector<double> category_masses;
  double missing_rate = 0.0;

  bool operator==(const FittedField&) const = default;
};

/// Privacy-preserving summary of a sample: smoothed histograms and priors.
struct FittedModel {
  std::vector<FittedField> fields;
  std::vector<std::string> classes;
  std::vector<double> priors;
  std::uint64_t records = 0;

  bool operator==(const FittedModel&) const = default;
};

FittedModel fit_generator(const std::vector<Event>& sample, std::size_t bins = 20);
nlohmann::ordered_json to_json(const FittedModel& m);
FittedModel fitted_model_from_json(const nlohmann::json& j);

/// Deterministic event source. Event i carries ts = i, or i*1000/rate_eps
/// milliseconds when a rate is set.
class Generator {
 public:
  virtual ~Generator() = default;
  Event next();
  std::uint64_t emitted() const { return n_; }
  const std::vector<Boundary>& boundaries() const { return boundaries_; }

 protected:
  Generator(std::uint64_t seed, std::optional<double> rate_eps, DriftSchedule schedule);

  /// Fills values and label of an event under the active concept.
  virtual void fill(Event& e) = 0;
  /// Makes the blend (1-alpha)*from + alpha*to the active concept.
  virtual void apply(const Concept& from, const Concept& to, double alpha) = 0;
  virtual Concept current() const = 0;
  /// Concept entered at a drift point; members the point leaves empty are
  /// derived from `from`.
  virtual Concept resolve(const std::optional<Concept>& next, const Concept& from) const = 0;

  Rng rng_;

 private:
  void advance_schedule();

  std::optional<double> rate_eps_;
  DriftSchedule schedule_;
  std::size_t next_point_ = 0;
  std::optional<DriftPoint> active_;
  Concept from_;
  Concept to_;
  std::uint64_t n_ = 0;
  std::vector<Boundary> boundaries_;
};

/// Hyperplane, mixture or fitted generator per spec. A fitted spec needs the
/// model passed in (see load_fitted_model).
std::unique_ptr<Generator> make_generator(const GeneratorSpec& spec,
                                          const FittedModel* fitted = nullptr);

std::unique_ptr<Generator> gen_fitted(const FittedModel& model, std::uint64_t seed,
                                      DriftSchedule schedule = {});

std::vector<Event> take(Generator& g, std::uint64_t n);

}  // namespace edgestream::generate
