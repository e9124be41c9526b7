#pragma once

#include <array>
#include <fstream>
#include <string>
#include <vector>

#include "mathrules/expr.hpp"
#include "mathrules/rng.hpp"

namespace mathrules {

enum class VocabMode { full, restricted };

/// Characters a variable-name token may not contain. Declared here (not
/// buried in the lexer) so alternative exclusion sets can be swapped in.
inline bool token_excluded(const std::string& token) {
  if (token.empty()) return true;
  for (unsigned char c : token) {
    if (c < 0x21) return true;  // whitespace and control characters
    switch (c) {
      case '+': case '-': case '*': case '/': case '^':
      case '=': case ';': case '(': case ')': case '.': case ',':
        return true;
      default: break;
    }
  }
  return false;
}

/// Pool of legal variable-name tokens. Full mode filters an external token
/// list; restricted mode is latin+greek letters, optionally crossed with a
/// digit suffix.
struct VocabSpec {
  VocabMode mode = VocabMode::restricted;
  bool with_digits = false;
  std::vector<std::string> tokens;
};

/// Token-count bounds for concatenated names (e.g. 1..3 train, 3..5 test).
struct NameSpec {
  int k_min = 1;
  int k_max = 3;
};

struct VocabPartition {
  int fraction = 100;  // percent
  std::uint64_t seed = 0;
  std::vector<std::string> subset;
  std::vector<std::string> complement;
};

inline std::vector<std::string> letter_tokens() {
  std::vector<std::string> out;
  for (char c = 'a'; c <= 'z'; ++c) out.emplace_back(1, c);
  for (char c = 'A'; c <= 'Z'; ++c) out.emplace_back(1, c);
  static const std::array<const char*, 48> greek = {
      "α", "β", "γ", "δ", "ε", "ζ", "η", "θ", "ι", "κ", "λ", "μ",
      "ν", "ξ", "ο", "π", "ρ", "σ", "τ", "υ", "φ", "χ", "ψ", "ω",
      "Α", "Β", "Γ", "Δ", "Ε", "Ζ", "Η", "Θ", "Ι", "Κ", "Λ", "Μ",
      "Ν", "Ξ", "Ο", "Π", "Ρ", "Σ", "Τ", "Υ", "Φ", "Χ", "Ψ", "Ω"};
  for (const char* g : greek) out.emplace_back(g);
  return out;
}

inline VocabSpec build_vocab(VocabMode mode, const std::vector<std::string>& token_source,
                             bool with_digits) {
  VocabSpec v;
  v.mode = mode;
  v.with_digits = with_digits;
  if (mode == VocabMode::restricted) {
    std::vector<std::string> letters = letter_tokens();
    v.tokens = letters;
    if (with_digits) {
      for (const auto& l : letters)
        for (char d = '0'; d <= '9'; ++d) v.tokens.push_back(l + std::string(1, d));
    }
    return v;
  }
  for (const auto& t : token_source)
    if (!token_excluded(t)) v.tokens.push_back(t);
  if (v.tokens.empty()) raise(errc::empty_vocabulary, "no usable tokens in source");
  return v;
}

/// UTF-8 token file, one token per line, blank lines ignored.
inline std::vector<std::string> load_token_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(errc::io_error, "cannot open token file: " + path);
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) tokens.push_back(line);
  }
  return tokens;
}

/// Deterministic seeded shuffle; the first round(fraction*N/100) tokens form
/// the subset.
inline VocabPartition partition(const VocabSpec& v, int fraction, std::uint64_t seed) {
  if (fraction <= 0 || fraction > 100)
    raise(errc::empty_vocabulary, "fraction must be in (0, 100]");
  VocabPartition p;
  p.fraction = fraction;
  p.seed = seed;
  std::vector<std::string> shuffled = v.tokens;
  Rng rng(derive_seed(seed, "vocab-partition", static_cast<std::uint64_t>(fraction)));
  rng.shuffle(shuffled);
  std::size_t take = static_cast<std::size_t>(
      (static_cast<unsigned long long>(shuffled.size()) * fraction + 50) / 100);
  p.subset.assign(shuffled.begin(), shuffled.begin() + take);
  p.complement.assign(shuffled.begin() + take, shuffled.end());
  return p;
}

/// Concatenation of k uniformly drawn tokens, k in [k_min, k_max]; retries
/// until the result is a legal parser name.
inline std::string sample_name(const std::vector<std::string>& pool, const NameSpec& spec,
                               Rng& rng) {
  if (pool.empty()) raise(errc::empty_vocabulary, "empty token pool");
  for (int attempt = 0; attempt < 100; ++attempt) {
    int k = static_cast<int>(rng.uniform(spec.k_min, spec.k_max));
    std::string name;
    for (int i = 0; i < k; ++i) name += pool[rng.index(pool.size())];
    if (is_legal_name(name)) return name;
  }
  raise(errc::exhausted_retries, "token pool cannot produce a legal name");
}

inline std::string sample_name(const VocabSpec& v, const NameSpec& spec, Rng& rng) {
  NameSpec s = spec;
  if (v.mode == VocabMode::restricted) s = {1, 1};  // one token per variable
  return sample_name(v.tokens, s, rng);
}

}  // namespace mathrules
