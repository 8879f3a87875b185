#include "ticnn/text.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ticnn {

namespace {

// Canonical word lists; data/lexicons/*.txt carry the same contents.
constexpr const char* kNegationsList =
    "no\nnot\nnever\nneither\nnor\nnone\nnothing\nnobody\nnowhere\ncannot\nhardly\nscarcely\nbarely\n";
constexpr const char* kExclusivesList =
    "but\nwithout\nhowever\nexcept\nunless\nalthough\nthough\nwhereas\nyet\nbesides\ndespite\nonly\n";
constexpr const char* kFirstPersonList = "i\nwe\nme\nus\nmy\nour\nmine\nours\nmyself\nourselves\n";
constexpr const char* kSecondPersonList = "you\nyour\nyours\nyourself\nyourselves\n";
constexpr const char* kThirdPersonList =
    "he\nshe\nit\nthey\nhim\nher\nthem\nhis\nhers\nits\ntheir\ntheirs\nhimself\nherself\nitself\nthemselves\n";
constexpr const char* kMotionVerbsList =
    "go\ngoes\ngoing\nwent\ngone\ncome\ncomes\ncoming\ncame\nwalk\nwalks\nwalked\nwalking\nrun\nruns\nrunning\nran\n"
    "move\nmoves\nmoved\nmoving\narrive\narrives\narrived\narriving\nleave\nleaves\nleaving\nleft\ntravel\ntravels\n"
    "traveled\ntraveling\ndrive\ndrives\ndriving\ndrove\nfly\nflies\nflying\nflew\nreturn\nreturns\nreturned\n"
    "returning\n";
constexpr const char* kPositiveList =
    "good\ngreat\nexcellent\nbest\nwonderful\namazing\nlove\nloved\nloves\nhappy\npositive\nsuccess\nsuccessful\n"
    "win\nwins\nwinning\nwon\nbeautiful\nperfect\nbetter\nright\ntrue\nhonest\nsupport\nsupports\ntrust\ntrusted\n"
    "benefit\nbenefits\nsafe\nstrong\nhope\nhopeful\nproud\ncelebrate\nvictory\n";
constexpr const char* kNegativeList =
    "bad\nworst\nterrible\nhorrible\nawful\nhate\nhated\nhates\nsad\nnegative\nfail\nfailure\nfailed\nfails\nlose\n"
    "loses\nlosing\nlost\nwrong\nfalse\nlie\nlies\nlying\ncorrupt\ncorruption\nfraud\nscandal\ncrisis\nthreat\n"
    "danger\ndangerous\nfear\nafraid\nangry\nanger\nattack\nattacks\ndisaster\nevil\nscam\nhoax\n";
constexpr const char* kStopwordsList =
    "the\na\nan\nand\nor\nof\nto\nin\non\nat\nfor\nwith\nby\nfrom\nas\nis\nare\nwas\nwere\nbe\nbeen\nbeing\nit\n"
    "this\nthat\nthese\nthose\nthere\nhere\nhave\nhas\nhad\ndo\ndoes\ndid\nwill\nwould\ncan\ncould\nshall\nshould\n"
    "may\nmight\nmust\nif\nthen\nthan\nso\nsuch\nabout\ninto\nover\nunder\nagain\nfurther\nonce\nwhile\nduring\n"
    "before\nafter\n";

std::set<std::string> parse_list(const char* text) {
  std::set<std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line))
    if (!line.empty()) out.insert(line);
  return out;
}

bool is_token_byte(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

std::vector<std::string> tokenize_impl(const std::string& text, bool lowercase) {
  std::vector<std::string> tokens;
  std::string cur;
  const std::size_t n = text.size();
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (is_token_byte(c)) {
      cur.push_back(lowercase ? static_cast<char>(std::tolower(c)) : static_cast<char>(c));
    } else if ((c == '\'' || c == 0x92) && !cur.empty() && i + 1 < n &&
               is_token_byte(static_cast<unsigned char>(text[i + 1]))) {
      cur.push_back('\'');
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

std::size_t count_occurrences(const std::string& haystack, const std::string& needle) {
  std::size_t count = 0, pos = 0;
  while ((pos = haystack.find(needle, pos)) != std::string::npos) {
    ++count;
    pos += needle.size();
  }
  return count;
}

}  // namespace

const Lexicons& Lexicons::builtin() {
  static const Lexicons lex = [] {
    Lexicons l;
    l.negations = parse_list(kNegationsList);
    l.exclusives = parse_list(kExclusivesList);
    l.first_person = parse_list(kFirstPersonList);
    l.second_person = parse_list(kSecondPersonList);
    l.third_person = parse_list(kThirdPersonList);
    l.motion_verbs = parse_list(kMotionVerbsList);
    l.positive = parse_list(kPositiveList);
    l.negative = parse_list(kNegativeList);
    l.stopwords = parse_list(kStopwordsList);
    return l;
  }();
  return lex;
}

std::set<std::string> Lexicons::load_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open lexicon file: " + path);
  std::set<std::string> out;
  std::string line;
  while (std::getline(is, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    std::size_t start = 0;
    while (start < line.size() && std::isspace(static_cast<unsigned char>(line[start]))) ++start;
    if (start < line.size()) out.insert(line.substr(start));
  }
  return out;
}

Lexicons Lexicons::load_dir(const std::string& dir) {
  Lexicons l;
  l.negations = load_file(dir + "/negations.txt");
  l.exclusives = load_file(dir + "/exclusives.txt");
  l.first_person = load_file(dir + "/first_person.txt");
  l.second_person = load_file(dir + "/second_person.txt");
  l.third_person = load_file(dir + "/third_person.txt");
  l.motion_verbs = load_file(dir + "/motion_verbs.txt");
  l.positive = load_file(dir + "/positive.txt");
  l.negative = load_file(dir + "/negative.txt");
  l.stopwords = load_file(dir + "/stopwords.txt");
  return l;
}

std::vector<std::string> tokenize(const std::string& text) { return tokenize_impl(text, true); }

std::vector<std::string> tokenize_preserve_case(const std::string& text) { return tokenize_impl(text, false); }

std::size_t count_sentences(const std::string& text) {
  std::size_t count = 0;
  bool segment_has_word = false;
  const std::size_t n = text.size();
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (c == '.' || c == '!' || c == '?') {
      std::size_t j = i;
      while (j + 1 < n) {
        const unsigned char d = static_cast<unsigned char>(text[j + 1]);
        if (d == '.' || d == '!' || d == '?')
          ++j;
        else
          break;
      }
      const bool at_end = (j + 1 == n);
      const bool followed_by_space = !at_end && std::isspace(static_cast<unsigned char>(text[j + 1]));
      if ((at_end || followed_by_space) && segment_has_word) {
        ++count;
        segment_has_word = false;
      }
      i = j;
    } else if (is_token_byte(c)) {
      segment_has_word = true;
    }
  }
  if (segment_has_word) ++count;
  return count;
}

Vocabulary Vocabulary::build(const std::vector<std::vector<std::string>>& corpus, std::size_t target_size) {
  if (target_size < 3) throw std::invalid_argument("vocabulary target size must be >= 3");
  std::unordered_map<std::string, std::size_t> freq;
  for (const auto& doc : corpus)
    for (const auto& tok : doc) ++freq[tok];
  std::vector<std::pair<std::string, std::size_t>> ranked(freq.begin(), freq.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  Vocabulary v;
  v.tokens_ = {"<pad>", "<oov>"};
  const std::size_t keep = std::min(target_size - 2, ranked.size());
  for (std::size_t i = 0; i < keep; ++i) {
    v.index_.emplace(ranked[i].first, static_cast<int>(v.tokens_.size()));
    v.tokens_.push_back(ranked[i].first);
  }
  return v;
}

Vocabulary Vocabulary::from_tokens(std::vector<std::string> tokens) {
  if (tokens.size() < 2) throw std::invalid_argument("serialized vocabulary must contain the two reserved slots");
  Vocabulary v;
  v.tokens_ = std::move(tokens);
  for (std::size_t i = 2; i < v.tokens_.size(); ++i) v.index_.emplace(v.tokens_[i], static_cast<int>(i));
  return v;
}

int Vocabulary::lookup(const std::string& token) const {
  auto it = index_.find(token);
  return it == index_.end() ? kOovIndex : it->second;
}

std::vector<int> encode_pad(const std::vector<std::string>& tokens, const Vocabulary& vocab, std::size_t n) {
  std::vector<int> out(n, Vocabulary::kPadIndex);
  const std::size_t keep = std::min(tokens.size(), n);
  for (std::size_t i = 0; i < keep; ++i) out[i] = vocab.lookup(tokens[i]);
  return out;
}

const std::array<const char*, TextExplicitVector::kDim>& TextExplicitVector::names() {
  static const std::array<const char*, kDim> kNames = {"word_count",
                                                      "sentence_count",
                                                      "avg_words_per_sentence",
                                                      "question_mark_count",
                                                      "exclamation_count",
                                                      "capital_letter_count",
                                                      "capital_letter_ratio",
                                                      "all_caps_word_count",
                                                      "negation_count",
                                                      "exclusive_word_count",
                                                      "first_person_pronoun_count",
                                                      "second_person_pronoun_count",
                                                      "third_person_pronoun_count",
                                                      "motion_verb_count",
                                                      "lexical_diversity",
                                                      "positive_sentiment_ratio",
                                                      "negative_sentiment_ratio",
                                                      "has_title",
                                                      "title_word_count",
                                                      "title_capital_ratio",
                                                      "title_question_marks",
                                                      "title_exclamations",
                                                      "avg_word_length",
                                                      "unique_word_count",
                                                      "digit_character_count",
                                                      "punctuation_density",
                                                      "quotation_mark_count",
                                                      "url_count",
                                                      "stopword_ratio",
                                                      "avg_sentence_length_chars",
                                                      "exclamations_per_sentence"};
  return kNames;
}

std::pair<double, double> sentiment_scores(const std::vector<std::string>& tokens, const Lexicons& lex) {
  if (tokens.empty()) return {0.0, 0.0};
  std::size_t pos = 0, neg = 0;
  for (const auto& t : tokens) {
    if (lex.positive.count(t)) ++pos;
    if (lex.negative.count(t)) ++neg;
  }
  const double n = static_cast<double>(tokens.size());
  return {pos / n, neg / n};
}

TextExplicitVector extract_text_explicit(const std::string& title, const std::string& body, const Lexicons& lex) {
  TextExplicitVector v;
  const std::vector<std::string> tokens = tokenize(body);
  const std::vector<std::string> raw_tokens = tokenize_preserve_case(body);
  const double word_count = static_cast<double>(tokens.size());
  const double sentences = static_cast<double>(count_sentences(body));

  v[kWordCount] = word_count;
  v[kSentenceCount] = sentences;
  v[kAvgWordsPerSentence] = sentences > 0 ? word_count / sentences : 0.0;

  std::size_t questions = 0, exclaims = 0, capitals = 0, letters = 0, digits = 0, punct = 0, quotes = 0;
  for (std::size_t i = 0; i < body.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(body[i]);
    if (c == '?') ++questions;
    if (c == '!') ++exclaims;
    if (c == '"') ++quotes;
    if (std::isupper(c)) ++capitals;
    if (std::isalpha(c)) ++letters;
    if (std::isdigit(c)) ++digits;
    if (std::ispunct(c)) ++punct;
    // curly double quotes U+201C / U+201D
    if (c == 0xE2 && i + 2 < body.size() && static_cast<unsigned char>(body[i + 1]) == 0x80) {
      const unsigned char third = static_cast<unsigned char>(body[i + 2]);
      if (third == 0x9C || third == 0x9D) ++quotes;
    }
  }
  v[kQuestionMarkCount] = static_cast<double>(questions);
  v[kExclamationCount] = static_cast<double>(exclaims);
  v[kCapitalLetterCount] = static_cast<double>(capitals);
  v[kCapitalLetterRatio] = letters > 0 ? static_cast<double>(capitals) / static_cast<double>(letters) : 0.0;

  std::size_t all_caps = 0;
  for (const auto& t : raw_tokens) {
    if (t.size() < 2) continue;
    bool has_alpha = false, any_lower = false;
    for (unsigned char c : t) {
      if (std::isalpha(c)) has_alpha = true;
      if (std::islower(c)) any_lower = true;
    }
    if (has_alpha && !any_lower) ++all_caps;
  }
  v[kAllCapsWordCount] = static_cast<double>(all_caps);

  std::size_t negs = 0, excl = 0, fp = 0, sp = 0, tp = 0, motion = 0, stop = 0;
  std::set<std::string> unique;
  std::size_t token_chars = 0;
  for (const auto& t : tokens) {
    if (lex.negations.count(t)) ++negs;
    if (lex.exclusives.count(t)) ++excl;
    if (lex.first_person.count(t)) ++fp;
    if (lex.second_person.count(t)) ++sp;
    if (lex.third_person.count(t)) ++tp;
    if (lex.motion_verbs.count(t)) ++motion;
    if (lex.stopwords.count(t)) ++stop;
    unique.insert(t);
    token_chars += t.size();
  }
  v[kNegationCount] = static_cast<double>(negs);
  v[kExclusiveWordCount] = static_cast<double>(excl);
  v[kFirstPersonPronounCount] = static_cast<double>(fp);
  v[kSecondPersonPronounCount] = static_cast<double>(sp);
  v[kThirdPersonPronounCount] = static_cast<double>(tp);
  v[kMotionVerbCount] = static_cast<double>(motion);
  v[kLexicalDiversity] = word_count > 0 ? static_cast<double>(unique.size()) / word_count : 0.0;

  const auto [pos_ratio, neg_ratio] = sentiment_scores(tokens, lex);
  v[kPositiveSentimentRatio] = pos_ratio;
  v[kNegativeSentimentRatio] = neg_ratio;

  const std::vector<std::string> title_tokens = tokenize(title);
  v[kHasTitle] = title_tokens.empty() ? 0.0 : 1.0;
  v[kTitleWordCount] = static_cast<double>(title_tokens.size());
  std::size_t title_caps = 0, title_letters = 0, title_q = 0, title_e = 0;
  for (unsigned char c : title) {
    if (std::isupper(c)) ++title_caps;
    if (std::isalpha(c)) ++title_letters;
    if (c == '?') ++title_q;
    if (c == '!') ++title_e;
  }
  v[kTitleCapitalRatio] = title_letters > 0 ? static_cast<double>(title_caps) / static_cast<double>(title_letters) : 0.0;
  v[kTitleQuestionMarks] = static_cast<double>(title_q);
  v[kTitleExclamations] = static_cast<double>(title_e);

  v[kAvgWordLength] = word_count > 0 ? static_cast<double>(token_chars) / word_count : 0.0;
  v[kUniqueWordCount] = static_cast<double>(unique.size());
  v[kDigitCharacterCount] = static_cast<double>(digits);
  v[kPunctuationDensity] = body.empty() ? 0.0 : static_cast<double>(punct) / static_cast<double>(body.size());
  v[kQuotationMarkCount] = static_cast<double>(quotes);

  std::string lowered(body.size(), '\0');
  std::transform(body.begin(), body.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  v[kUrlCount] = static_cast<double>(count_occurrences(lowered, "http://") + count_occurrences(lowered, "https://") +
                                     count_occurrences(lowered, "www."));

  v[kStopwordRatio] = word_count > 0 ? static_cast<double>(stop) / word_count : 0.0;
  v[kAvgSentenceLengthChars] = sentences > 0 ? static_cast<double>(body.size()) / sentences : 0.0;
  v[kExclamationsPerSentence] = sentences > 0 ? static_cast<double>(exclaims) / sentences : 0.0;
  return v;
}

}  // namespace ticnn
