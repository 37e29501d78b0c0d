#include "vqsearch/text.hpp"

#include <fstream>

#include "vqsearch/errors.hpp"

namespace vqsearch {
namespace {

bool is_alnum(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9');
}

char lower(unsigned char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a')
                                : static_cast<char>(c);
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

const std::unordered_set<std::string>& Tokenizer::default_stopwords() {
  static const std::unordered_set<std::string> words = {
      "a",     "an",    "and",   "are",   "as",    "at",    "be",
      "been",  "but",   "by",    "for",   "from",  "had",   "has",
      "have",  "he",    "her",   "his",   "i",     "if",    "in",
      "into",  "is",    "it",    "its",   "of",    "on",    "or",
      "our",   "she",   "so",    "such",  "than",  "that",  "the",
      "their", "them",  "then",  "there", "these", "they",  "this",
      "those", "to",    "was",   "we",    "were",  "what",  "when",
      "which", "while", "who",   "will",  "with",  "would", "you"};
  return words;
}

const std::unordered_set<std::string>& Tokenizer::default_exceptions() {
  static const std::unordered_set<std::string> words = {
      "bahamas",  "barbados", "bias",     "business", "christmas",
      "crisis",   "economics", "gas",     "honduras", "news",
      "mathematics", "netherlands", "paris", "philippines", "physics",
      "politics", "series",   "species",  "texas",    "wales",
      "whereas",  "always",   "perhaps",  "lens",     "mumps",
      "measles",  "diabetes", "aids",     "arkansas", "kansas",
      "emirates", "seychelles", "maldives", "comoros", "athens"};
  return words;
}

Tokenizer::Tokenizer()
    : stopwords_(default_stopwords()), exceptions_(default_exceptions()) {}

Tokenizer::Tokenizer(std::unordered_set<std::string> stopwords,
                     std::unordered_set<std::string> exceptions)
    : stopwords_(std::move(stopwords)), exceptions_(std::move(exceptions)) {}

std::string Tokenizer::lemmatize(std::string_view token) const {
  std::string t(token);
  if (exceptions_.count(t)) return t;
  const std::size_t n = t.size();
  if (n > 4 && t.compare(n - 3, 3, "ies") == 0) {
    t.replace(n - 3, 3, "y");
    return t;
  }
  if (n >= 4 && t.back() == 's') {
    const char before = t[n - 2];
    if (!is_digit(before) && before != 's' && before != 'u' && before != 'i') {
      t.pop_back();
    }
  }
  return t;
}

bool Tokenizer::is_stopword(std::string_view token) const {
  return stopwords_.count(std::string(token)) > 0;
}

std::vector<std::string> Tokenizer::normalize(std::string_view text) const {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      out.push_back(lemmatize(cur));
      cur.clear();
    }
  };
  for (unsigned char c : text) {
    if (is_alnum(c)) {
      cur.push_back(lower(c));
    } else {
      flush();
    }
  }
  flush();
  return out;
}

std::vector<std::string> Tokenizer::tokenize(std::string_view text) const {
  std::vector<std::string> out = normalize(text);
  std::erase_if(out, [&](const std::string& t) { return is_stopword(t); });
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  static const Tokenizer tokenizer;
  return tokenizer.tokenize(text);
}

std::unordered_set<std::string> load_word_list(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open word list " + path.string());
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
      line.pop_back();
    }
    if (line.empty() || line.front() == '#') continue;
    words.insert(to_lower(line));
  }
  return words;
}

std::string to_lower(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (unsigned char c : text) out.push_back(lower(c));
  return out;
}

std::string normalize_phrase(std::string_view text) {
  std::string out;
  bool pending_space = false;
  for (unsigned char c : text) {
    if (is_alnum(c)) {
      if (pending_space && !out.empty()) out.push_back(' ');
      pending_space = false;
      out.push_back(lower(c));
    } else {
      pending_space = true;
    }
  }
  return out;
}

}  // namespace vqsearch
