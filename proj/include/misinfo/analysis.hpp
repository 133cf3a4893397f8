#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>

#include "misinfo/corpus.hpp"

namespace misinfo {

// Per-question counts of yes/no/nan; each question's three counts sum to the
// dataset size.
struct DistributionTable {
  std::array<std::size_t, kNumQuestions> yes{};
  std::array<std::size_t, kNumQuestions> no{};
  std::array<std::size_t, kNumQuestions> nan{};
};

// 7x7 association matrix between question pairs. A cell is empty (Undefined)
// when a marginal of the 2x2 table is zero or no record answers both
// questions; n_pair is the paired non-nan record count.
struct PhiMatrix {
  std::array<std::array<std::optional<double>, kNumQuestions>, kNumQuestions>
      phi{};
  std::array<std::array<std::size_t, kNumQuestions>, kNumQuestions> n_pair{};
};

DistributionTable label_distribution(const Dataset& dataset);

// Phi coefficient between questions qa and qb (1-based), restricted to
// records where both are non-nan. Yes encodes as 1, No as 0:
//   phi = (n11*n00 - n10*n01) / sqrt(r1*r0*c1*c0).
std::optional<double> phi_pair(const Dataset& dataset, int qa, int qb);

PhiMatrix phi_matrix(const Dataset& dataset);

std::string distribution_tsv(const DistributionTable& table);
std::string phi_tsv(const PhiMatrix& matrix);

// Writes label_distribution.{svg,tsv} and phi_matrix.{svg,tsv} into out_dir.
void render_charts(const DistributionTable& distribution, const PhiMatrix& phi,
                   const std::filesystem::path& out_dir);

}  // namespace misinfo
