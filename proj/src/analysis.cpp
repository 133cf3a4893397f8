#include "misinfo/analysis.hpp"

#include <cmath>

#include "misinfo/errors.hpp"
#include "misinfo/io_util.hpp"

namespace misinfo {

DistributionTable label_distribution(const Dataset& dataset) {
  DistributionTable table;
  for (const auto& rec : dataset.records) {
    for (std::size_t q = 0; q < kNumQuestions; ++q) {
      switch (rec.labels[q]) {
        case LabelValue::Yes: ++table.yes[q]; break;
        case LabelValue::No: ++table.no[q]; break;
        case LabelValue::Nan: ++table.nan[q]; break;
      }
    }
  }
  return table;
}

std::optional<double> phi_pair(const Dataset& dataset, int qa, int qb) {
  if (qa < 1 || qa > static_cast<int>(kNumQuestions) || qb < 1 ||
      qb > static_cast<int>(kNumQuestions)) {
    throw Error("phi_pair: question index out of range");
  }
  const std::size_t a = static_cast<std::size_t>(qa - 1);
  const std::size_t b = static_cast<std::size_t>(qb - 1);

  std::size_t n11 = 0, n10 = 0, n01 = 0, n00 = 0;
  for (const auto& rec : dataset.records) {
    const LabelValue la = rec.labels[a], lb = rec.labels[b];
    if (la == LabelValue::Nan || lb == LabelValue::Nan) continue;
    const bool ya = la == LabelValue::Yes;
    const bool yb = lb == LabelValue::Yes;
    if (ya && yb) ++n11;
    else if (ya && !yb) ++n10;
    else if (!ya && yb) ++n01;
    else ++n00;
  }

  const double r1 = static_cast<double>(n11 + n10);
  const double r0 = static_cast<double>(n01 + n00);
  const double c1 = static_cast<double>(n11 + n01);
  const double c0 = static_cast<double>(n10 + n00);
  if (r1 == 0.0 || r0 == 0.0 || c1 == 0.0 || c0 == 0.0) return std::nullopt;

  const double numer = static_cast<double>(n11) * static_cast<double>(n00) -
                       static_cast<double>(n10) * static_cast<double>(n01);
  return numer / std::sqrt(r1 * r0 * c1 * c0);
}

PhiMatrix phi_matrix(const Dataset& dataset) {
  PhiMatrix m;
  for (std::size_t a = 0; a < kNumQuestions; ++a) {
    for (std::size_t b = 0; b < kNumQuestions; ++b) {
      m.phi[a][b] =
          phi_pair(dataset, static_cast<int>(a + 1), static_cast<int>(b + 1));
      std::size_t paired = 0;
      for (const auto& rec : dataset.records) {
        if (rec.labels[a] != LabelValue::Nan &&
            rec.labels[b] != LabelValue::Nan)
          ++paired;
      }
      m.n_pair[a][b] = paired;
    }
  }
  return m;
}

std::string distribution_tsv(const DistributionTable& table) {
  std::string out = "question\tyes\tno\tnan\n";
  for (std::size_t q = 0; q < kNumQuestions; ++q) {
    out += "q" + std::to_string(q + 1) + "\t" + std::to_string(table.yes[q]) +
           "\t" + std::to_string(table.no[q]) + "\t" +
           std::to_string(table.nan[q]) + "\n";
  }
  return out;
}

std::string phi_tsv(const PhiMatrix& matrix) {
  std::string out = "qa\tqb\tphi\tn_pair\n";
  for (std::size_t a = 0; a < kNumQuestions; ++a) {
    for (std::size_t b = 0; b < kNumQuestions; ++b) {
      out += "q" + std::to_string(a + 1) + "\tq" + std::to_string(b + 1) + "\t";
      out += matrix.phi[a][b] ? format_fixed(*matrix.phi[a][b], 6)
                              : std::string("undefined");
      out += "\t" + std::to_string(matrix.n_pair[a][b]) + "\n";
    }
  }
  return out;
}

}  // namespace misinfo
