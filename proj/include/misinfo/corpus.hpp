#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace misinfo {

inline constexpr std::size_t kNumQuestions = 7;

// Ternary gold label. Serialized forms are "yes", "no", "nan"; parsing is
// case-insensitive.
enum class LabelValue { Yes, No, Nan };

std::string to_string(LabelValue v);

// Throws FormatError on anything other than yes/no/nan.
LabelValue parse_label(const std::string& token);

using Labels = std::array<LabelValue, kNumQuestions>;

struct LabeledTweet {
  std::string id;
  std::string text;
  Labels labels{};

  bool operator==(const LabeledTweet&) const = default;
};

enum class Split { Train, Dev, Test, Custom };

struct Dataset {
  Split split = Split::Custom;
  std::vector<LabeledTweet> records;

  std::size_t size() const { return records.size(); }
  bool empty() const { return records.empty(); }
  std::vector<std::string> ids() const;
  std::vector<std::string> texts() const;
};

// Loads the canonical TSV layout: a header line followed by one record per
// line, `tweet_id<TAB>text` plus 7 label columns when has_labels is set.
// Rows of unlabeled files get all-Nan labels. Malformed rows, unknown label
// tokens and duplicate ids raise FormatError naming the offending line.
Dataset load_dataset(const std::filesystem::path& path, bool has_labels,
                     Split split = Split::Custom);

std::string serialize_dataset(const Dataset& dataset);

void save_dataset(const Dataset& dataset, const std::filesystem::path& path);

// Deletes every maximal substring starting with http:// or https:// up to
// the next whitespace, collapses whitespace runs to single spaces and trims.
std::string normalize_text(const std::string& text);

Dataset normalize_dataset(const Dataset& dataset);

struct ValidationWarning {
  std::string id;
  int question = 0;  // 1-based
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationWarning> warnings;
  // Violations per question (index q-1); only Q2..Q5 can be non-zero.
  std::array<std::size_t, kNumQuestions> counts_by_question{};
};

// Flags records answering No on Q1 while carrying a non-Nan label on any of
// Q2..Q5. These are warnings, not errors: nan can mean "not sure", so real
// data may violate the dependency.
ValidationReport validate(const Dataset& dataset);

}  // namespace misinfo
