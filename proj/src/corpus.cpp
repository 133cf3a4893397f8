#include "misinfo/corpus.hpp"

#include <cctype>
#include <unordered_set>

#include "misinfo/errors.hpp"
#include "misinfo/io_util.hpp"

namespace misinfo {

namespace {

constexpr std::size_t kLabeledColumns = 2 + kNumQuestions;
constexpr std::size_t kUnlabeledColumns = 2;

bool is_ws(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool url_starts_at(const std::string& text, std::size_t pos) {
  return text.compare(pos, 7, "http://") == 0 ||
         text.compare(pos, 8, "https://") == 0;
}

}  // namespace

std::string to_string(LabelValue v) {
  switch (v) {
    case LabelValue::Yes: return "yes";
    case LabelValue::No: return "no";
    case LabelValue::Nan: return "nan";
  }
  return "nan";
}

LabelValue parse_label(const std::string& token) {
  const std::string t = to_lower(trim(token));
  if (t == "yes") return LabelValue::Yes;
  if (t == "no") return LabelValue::No;
  if (t == "nan") return LabelValue::Nan;
  throw FormatError("unknown label token '" + token + "'");
}

std::vector<std::string> Dataset::ids() const {
  std::vector<std::string> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.id);
  return out;
}

std::vector<std::string> Dataset::texts() const {
  std::vector<std::string> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.text);
  return out;
}

Dataset load_dataset(const std::filesystem::path& path, bool has_labels,
                     Split split) {
  const std::vector<std::string> lines = split_lines(read_file(path));
  if (lines.empty())
    throw FormatError(path.string() + ": empty file, header line expected");

  const std::size_t want = has_labels ? kLabeledColumns : kUnlabeledColumns;
  const std::size_t header_cols = split_tabs(lines[0]).size();
  if (header_cols != want) {
    throw FormatError(path.string() + ": line 1: expected " +
                      std::to_string(want) + " header columns, got " +
                      std::to_string(header_cols));
  }

  Dataset dataset;
  dataset.split = split;
  dataset.records.reserve(lines.size() - 1);
  std::unordered_set<std::string> seen_ids;

  for (std::size_t li = 1; li < lines.size(); ++li) {
    const std::string line_no = std::to_string(li + 1);
    const std::vector<std::string> fields = split_tabs(lines[li]);
    if (fields.size() != want) {
      throw FormatError(path.string() + ": line " + line_no + ": expected " +
                        std::to_string(want) + " columns, got " +
                        std::to_string(fields.size()));
    }

    LabeledTweet rec;
    rec.id = trim(fields[0]);
    if (rec.id.empty())
      throw FormatError(path.string() + ": line " + line_no + ": empty id");
    if (!seen_ids.insert(rec.id).second) {
      throw FormatError(path.string() + ": line " + line_no +
                        ": duplicate tweet id '" + rec.id + "'");
    }

    rec.text = fields[1];
    if (trim(rec.text).empty())
      throw FormatError(path.string() + ": line " + line_no + ": empty text");

    if (has_labels) {
      for (std::size_t q = 0; q < kNumQuestions; ++q) {
        try {
          rec.labels[q] = parse_label(fields[2 + q]);
        } catch (const FormatError& e) {
          throw FormatError(path.string() + ": line " + line_no + ": " +
                            e.what());
        }
      }
    } else {
      rec.labels.fill(LabelValue::Nan);
    }
    dataset.records.push_back(std::move(rec));
  }
  return dataset;
}

std::string serialize_dataset(const Dataset& dataset) {
  std::string out = "tweet_id\ttext";
  for (std::size_t q = 1; q <= kNumQuestions; ++q)
    out += "\tq" + std::to_string(q);
  out += "\n";
  for (const auto& rec : dataset.records) {
    if (rec.text.find('\t') != std::string::npos ||
        rec.text.find('\n') != std::string::npos) {
      throw FormatError("record '" + rec.id +
                        "': text contains a tab or newline");
    }
    out += rec.id;
    out += '\t';
    out += rec.text;
    for (const LabelValue v : rec.labels) {
      out += '\t';
      out += to_string(v);
    }
    out += '\n';
  }
  return out;
}

void save_dataset(const Dataset& dataset, const std::filesystem::path& path) {
  atomic_write(path, serialize_dataset(dataset));
}

std::string normalize_text(const std::string& text) {
  std::string kept;
  kept.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == 'h' && url_starts_at(text, i)) {
      while (i < text.size() && !is_ws(text[i])) ++i;
    } else {
      kept += text[i];
      ++i;
    }
  }

  std::string out;
  out.reserve(kept.size());
  bool pending_space = false;
  for (const char c : kept) {
    if (is_ws(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty()) out += ' ';
    pending_space = false;
    out += c;
  }
  return out;
}

Dataset normalize_dataset(const Dataset& dataset) {
  Dataset out = dataset;
  for (auto& rec : out.records) rec.text = normalize_text(rec.text);
  return out;
}

ValidationReport validate(const Dataset& dataset) {
  ValidationReport report;
  for (const auto& rec : dataset.records) {
    if (rec.labels[0] != LabelValue::No) continue;
    for (std::size_t q = 1; q <= 4; ++q) {  // Q2..Q5
      if (rec.labels[q] == LabelValue::Nan) continue;
      ValidationWarning w;
      w.id = rec.id;
      w.question = static_cast<int>(q + 1);
      w.message = "record '" + rec.id + "': Q1 is no but Q" +
                  std::to_string(q + 1) + " is " + to_string(rec.labels[q]);
      report.counts_by_question[q] += 1;
      report.warnings.push_back(std::move(w));
    }
  }
  return report;
}

}  // namespace misinfo
