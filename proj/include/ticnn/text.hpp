#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace ticnn {

/// Word lists backing the explicit text features. All entries lowercase.
struct Lexicons {
  std::set<std::string> negations;
  std::set<std::string> exclusives;
  std::set<std::string> first_person;
  std::set<std::string> second_person;
  std::set<std::string> third_person;
  std::set<std::string> motion_verbs;
  std::set<std::string> positive;
  std::set<std::string> negative;
  std::set<std::string> stopwords;

  /// Compiled-in copies of the lists shipped under data/lexicons/.
  static const Lexicons& builtin();
  /// Loads one-word-per-line files (named negations.txt etc., '#' comments).
  static Lexicons load_dir(const std::string& dir);
  static std::set<std::string> load_file(const std::string& path);
};

/// Lowercased alphanumeric runs; apostrophes kept word-internally.
std::vector<std::string> tokenize(const std::string& text);
/// Same boundaries, original case (for capitalization features).
std::vector<std::string> tokenize_preserve_case(const std::string& text);

/// Sentence count under the [.!?]+ followed-by-whitespace rule; >= 1 for
/// text containing any word, 0 for empty text.
std::size_t count_sentences(const std::string& text);

/// token -> index map; 0 = padding, 1 = out-of-vocabulary.
class Vocabulary {
 public:
  static constexpr int kPadIndex = 0;
  static constexpr int kOovIndex = 1;

  /// Top (target_size - 2) tokens by frequency, ties broken lexicographically.
  static Vocabulary build(const std::vector<std::vector<std::string>>& corpus, std::size_t target_size);
  /// Rebuilds from a serialized token array (position = index).
  static Vocabulary from_tokens(std::vector<std::string> tokens);

  int lookup(const std::string& token) const;
  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> index_;
};

/// First n indices (OOV -> 1), right-padded with 0.
std::vector<int> encode_pad(const std::vector<std::string>& tokens, const Vocabulary& vocab, std::size_t n);

/// The 31 explicit text features, in report order.
struct TextExplicitVector {
  static constexpr std::size_t kDim = 31;
  std::array<double, kDim> values{};

  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }

  static const std::array<const char*, kDim>& names();
};

enum TextFeature : std::size_t {
  kWordCount = 0,
  kSentenceCount,
  kAvgWordsPerSentence,
  kQuestionMarkCount,
  kExclamationCount,
  kCapitalLetterCount,
  kCapitalLetterRatio,
  kAllCapsWordCount,
  kNegationCount,
  kExclusiveWordCount,
  kFirstPersonPronounCount,
  kSecondPersonPronounCount,
  kThirdPersonPronounCount,
  kMotionVerbCount,
  kLexicalDiversity,
  kPositiveSentimentRatio,
  kNegativeSentimentRatio,
  kHasTitle,
  kTitleWordCount,
  kTitleCapitalRatio,
  kTitleQuestionMarks,
  kTitleExclamations,
  kAvgWordLength,
  kUniqueWordCount,
  kDigitCharacterCount,
  kPunctuationDensity,
  kQuotationMarkCount,
  kUrlCount,
  kStopwordRatio,
  kAvgSentenceLengthChars,
  kExclamationsPerSentence,
};

TextExplicitVector extract_text_explicit(const std::string& title, const std::string& body, const Lexicons& lex);

/// Fractions of tokens found in the positive / negative lexicons.
std::pair<double, double> sentiment_scores(const std::vector<std::string>& tokens, const Lexicons& lex);

}  // namespace ticnn
