#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "misinfo/corpus.hpp"
#include "misinfo/matrix.hpp"

namespace misinfo {

// Per-model sigmoid scores for one dataset: scores[k] is the (n x 7) matrix
// of model k, all slices sharing tweet_ids order.
struct ScoreTensor {
  std::vector<std::string> model_ids;
  std::vector<std::string> tweet_ids;
  std::vector<Matrix> scores;

  std::size_t models() const { return scores.size(); }
  std::size_t examples() const { return tweet_ids.size(); }
};

enum class TieRule { MeanScore, AlwaysYes, AlwaysNo };

TieRule parse_tie_rule(const std::string& name);
std::string to_string(TieRule rule);

struct VoteConfig {
  double threshold = 0.5;
  TieRule tie_rule = TieRule::MeanScore;
};

// Hard yes/no decisions, one row per tweet; the pipeline always decides,
// there is no nan output.
struct LabelMatrix {
  std::vector<std::string> tweet_ids;
  std::vector<std::array<bool, kNumQuestions>> rows;  // true = yes

  std::size_t size() const { return rows.size(); }
  bool operator==(const LabelMatrix&) const = default;
};

struct VoteStats {
  std::size_t ties = 0;  // cells where the yes/no counts were equal
};

// Yes iff score >= threshold (0.5 rounds up).
LabelMatrix binarize(const std::vector<std::string>& tweet_ids,
                     const Matrix& scores, double threshold);

// Per cell: binarize each model's score and take the majority; equal counts
// fall back to the tie rule (mean-score compares the mean of the raw scores
// against the threshold). Throws on an empty tensor.
LabelMatrix majority_vote(const ScoreTensor& tensor, const VoteConfig& config,
                          VoteStats* stats = nullptr);

// Submission format: header plus `tweet_id<TAB>q1..q7` rows of yes/no tokens.
std::string serialize_submission(const LabelMatrix& labels);
void write_submission(const LabelMatrix& labels,
                      const std::filesystem::path& path);
LabelMatrix read_submission(const std::filesystem::path& path);

// Builds a tensor from per-model score matrices, checking id alignment;
// names the first mismatching row on failure.
ScoreTensor stack_scores(const std::vector<std::string>& model_ids,
                         const std::vector<std::vector<std::string>>& id_lists,
                         std::vector<Matrix> score_matrices);

}  // namespace misinfo
