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
#include <deque>
#include <memory>
#include <string>
#include <vector>

#include "edgestream/core/bytes.hpp"
#include "edgestream/core/error.hpp"

namespace edgestream::learn {

EDGESTREAM_DEFINE_ERROR(OutOfRange);

enum class DriftLevel : std::uint8_t { kStable, kWarning, kDrift };

std::string to_string(DriftLevel level);
DriftLevel drift_level_from_string(std::string_view s);

/// Detector fed with per-prediction errors.
class DriftDetector {
 public:
  virtual ~DriftDetector() = default;
  virtual DriftLevel add(bool error) = 0;
  virtual DriftLevel level() const = 0;
  /// Statistic recorded in change logs.
  virtual double statistic() const = 0;
  virtual std::string name() const = 0;
  virtual void save(ByteWriter& w) const = 0;
  virtual void load(ByteReader& r) = 0;
  virtual std::unique_ptr<DriftDetector> clone() const = 0;
};

/// Drift Detection Method (Gama et al.).
class Ddm : public DriftDetector {
 public:
  static constexpr std::uint64_t kMinObservations = 30;

  /// `correct` is the outcome of one prediction.
  DriftLevel update(bool correct);
  DriftLevel add(bool error) override { return update(!error); }
  DriftLevel level() const override { return level_; }
  double statistic() const override { return p_ + s_; }
  std::string name() const override { return "ddm"; }
  void save(ByteWriter& w) const override;
  void load(ByteReader& r) override;
  std::unique_ptr<DriftDetector> clone() const override { return std::make_unique<Ddm>(*this); }

  std::uint64_t i() const { return i_; }
  double p() const { return p_; }
  double s() const { return s_; }
  double p_min() const { return p_min_; }
  double s_min() const { return s_min_; }

  friend bool operator==(const Ddm& a, const Ddm& b) {
    return a.i_ == b.i_ && a.p_ == b.p_ && a.s_ == b.s_ && a.p_min_ == b.p_min_ &&
           a.s_min_ == b.s_min_ && a.level_ == b.level_;
  }

 private:
  void reset();

  std::uint64_t i_ = 0;
  double p_ = 0.0;
  double s_ = 0.0;
  double p_min_ = kInf;
  double s_min_ = kInf;
  DriftLevel level_ = DriftLevel::kStable;

  static constexpr double kInf = 1e300;
};

/// ADWIN with exponential-histogram compression.
class Adwin : public DriftDetector {
 public:
  struct Bucket {
    std::uint64_t size = 0;
    double sum = 0.0;
    double m2 = 0.0;  // sum of squared deviations within the bucket

    bool operator==(const Bucket&) const = default;
  };

  explicit Adwin(double delta = 0.002, std::size_t max_buckets = 5);

  /// Inserts x in [0,1]; returns true iff at least one cut happened.
  bool update(double x);
  /// Error-rate use: a cut is reported as drift only when the error estimate rose.
  DriftLevel add(bool error) override;
  DriftLevel level() const override { return level_; }
  double statistic() const override { return mean(); }
  std::string name() const override { return "adwin"; }
  void save(ByteWriter& w) const override;
  void load(ByteReader& r) override;
  std::unique_ptr<DriftDetector> clone() const override { return std::make_unique<Adwin>(*this); }

  std::uint64_t width() const { return n_; }
  double sum() const { return sum_; }
  double mean() const { return n_ == 0 ? 0.0 : sum_ / static_cast<double>(n_); }
  /// Population variance aggregated over the buckets.
  double variance() const;
  double delta() const { return delta_; }
  std::size_t max_buckets() const { return max_buckets_; }

  /// Buckets ordered oldest first.
  std::vector<Bucket> buckets() const;

  /// Cut threshold for sub-windows of n0 and n1 elements.
  static double epsilon_cut(double n0, double n1, double delta);

  friend bool operator==(const Adwin& a, const Adwin& b) {
    return a.delta_ == b.delta_ && a.max_buckets_ == b.max_buckets_ && a.rows_ == b.rows_ &&
           a.n_ == b.n_ && a.sum_ == b.sum_ && a.level_ == b.level_;
  }

 private:
  void compress();
  bool detect_once();
  void drop_oldest();

  double delta_;
  std::size_t max_buckets_;
  // rows_[k] holds buckets of size 2^k, newest at the front.
  std::vector<std::deque<Bucket>> rows_;
  std::uint64_t n_ = 0;
  double sum_ = 0.0;
  DriftLevel level_ = DriftLevel::kStable;
};

std::unique_ptr<DriftDetector> make_detector(std::string_view name);

}  // namespace edgestream::learn
