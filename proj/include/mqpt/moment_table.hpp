// Copyright 2026 The mqpt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MQPT_MOMENT_TABLE_HPP
#define MQPT_MOMENT_TABLE_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mqpt/error.hpp"

namespace mqpt {

/// Powers of annihilation (j) and creation (k) operators, one entry per mode.
/// The moment it addresses is Tr[rho a1^dag^k1 a1^j1 ... am^dag^km am^jm].
struct MomentIndex {
  std::vector<int> j;
  std::vector<int> k;

  MomentIndex() = default;
  MomentIndex(std::vector<int> j_, std::vector<int> k_);
  /// Single-mode shorthand.
  MomentIndex(int j_, int k_) : j{j_}, k{k_} {}

  int modes() const noexcept { return static_cast<int>(j.size()); }
  /// The index with j and k swapped mode-wise (conjugate moment).
  MomentIndex swapped() const { return MomentIndex(k, j); }
  bool operator==(const MomentIndex&) const = default;
};

/// Row-major box [0, extent)^dims used to flatten index vectors.
class IndexBox {
 public:
  IndexBox(int dims, int extent);

  int dims() const noexcept { return dims_; }
  int extent() const noexcept { return extent_; }
  std::size_t size() const noexcept { return size_; }

  std::size_t flatten(std::span<const int> digits) const;
  void unflatten(std::size_t flat, std::span<int> digits) const;

 private:
  int dims_;
  int extent_;
  std::size_t size_;
};

/// Bookkeeping attached to tables produced by apply_tensor.
struct PropagationInfo {
  int summation_cutoff = 0;
  bool truncated = false;
  std::string warning;
};

/// Dense normally-ordered moment table M_{jk} for 0 <= j_s, k_s <= cutoff.
class MomentTable {
 public:
  MomentTable(int modes, int cutoff);

  static MomentTable zeros(int modes, int cutoff) { return MomentTable(modes, cutoff); }

  int modes() const noexcept { return modes_; }
  int cutoff() const noexcept { return cutoff_; }
  std::size_t size() const noexcept { return data_.size(); }

  bool contains(const MomentIndex& index) const noexcept;
  Complex at(const MomentIndex& index) const;
  Complex at(int j, int k) const { return at(MomentIndex(j, k)); }
  void set(const MomentIndex& index, Complex value);

  /// Flat access; digit layout is (j_1..j_m, k_1..k_m).
  Complex operator[](std::size_t flat) const { return data_[flat]; }
  Complex& operator[](std::size_t flat) { return data_[flat]; }
  MomentIndex index_of(std::size_t flat) const;
  std::size_t flat_of(const MomentIndex& index) const;
  const IndexBox& box() const noexcept { return box_; }

  std::span<const Complex> values() const noexcept { return data_; }

  /// Largest per-index order carrying an entry with |value| > tol, or -1.
  int support(double tol = 1e-15) const;

  const std::optional<PropagationInfo>& propagation() const noexcept { return propagation_; }
  void set_propagation(PropagationInfo info) { propagation_ = std::move(info); }

 private:
  int modes_;
  int cutoff_;
  IndexBox box_;
  std::vector<Complex> data_;
  std::optional<PropagationInfo> propagation_;
};

}  // namespace mqpt

#endif  // MQPT_MOMENT_TABLE_HPP
