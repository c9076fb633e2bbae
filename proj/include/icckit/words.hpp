#pragma once

// Words over a finite alphabet of group generators, the textual word syntax
// shared by the CLI and the oracle, free reduction and Britton reduction for
// Baumslag-Solitar groups.

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "icckit/error.hpp"

namespace icckit {

struct Letter {
  std::size_t generator = 0;
  int exponent = 1;  // +1 or -1

  friend bool operator==(const Letter&, const Letter&) = default;
};

struct Word {
  std::vector<Letter> letters;

  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }

  void push(std::size_t gen, int exp) { letters.push_back({gen, exp}); }

  void append(const Word& other) {
    letters.insert(letters.end(), other.letters.begin(), other.letters.end());
  }

  Word inverse() const {
    Word out;
    out.letters.reserve(letters.size());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
      out.letters.push_back({it->generator, -it->exponent});
    return out;
  }

  friend bool operator==(const Word&, const Word&) = default;
};

inline Word power_word(std::size_t gen, long long k) {
  Word w;
  const int e = k < 0 ? -1 : 1;
  for (long long i = 0; i < (k < 0 ? -k : k); ++i) w.push(gen, e);
  return w;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\n' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\n' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline long long parse_exponent(std::string_view s, std::string_view token) {
  s = trim(s);
  if (s.empty()) throw Error("word: missing exponent in '" + std::string(token) + "'");
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw Error("word: bad exponent in '" + std::string(token) + "'");
  long long v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9')
      throw Error("word: bad exponent in '" + std::string(token) + "'");
    v = v * 10 + (s[i] - '0');
    if (v > 1'000'000) throw Error("word: exponent too large in '" + std::string(token) + "'");
  }
  return neg ? -v : v;
}

}  // namespace detail

/// Parses `t*a^2*t^-1` style text against an alphabet of generator names.
/// The empty string and "1" denote the identity.
inline Word parse_word(std::string_view text, const std::vector<std::string>& alphabet) {
  Word w;
  text = detail::trim(text);
  if (text.empty() || text == "1" || text == "e") return w;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t stop = text.find('*', start);
    if (stop == std::string_view::npos) stop = text.size();
    std::string_view token = detail::trim(text.substr(start, stop - start));
    if (token.empty()) throw Error("word: empty factor in '" + std::string(text) + "'");
    std::string_view name = token;
    long long exp = 1;
    if (auto caret = token.find('^'); caret != std::string_view::npos) {
      name = detail::trim(token.substr(0, caret));
      exp = detail::parse_exponent(token.substr(caret + 1), token);
    }
    std::size_t gen = alphabet.size();
    for (std::size_t i = 0; i < alphabet.size(); ++i)
      if (alphabet[i] == name) gen = i;
    if (gen == alphabet.size())
      throw Error("word: unknown generator '" + std::string(name) + "'");
    w.append(power_word(gen, exp));
    start = stop + 1;
  }
  return w;
}

/// Formats a word, collapsing runs of one letter into a power.
inline std::string format_word(const Word& w, const std::vector<std::string>& alphabet) {
  if (w.empty()) return "1";
  std::string out;
  std::size_t i = 0;
  while (i < w.letters.size()) {
    std::size_t j = i;
    long long exp = 0;
    while (j < w.letters.size() && w.letters[j].generator == w.letters[i].generator &&
           w.letters[j].exponent == w.letters[i].exponent) {
      exp += w.letters[j].exponent;
      ++j;
    }
    if (!out.empty()) out += '*';
    const std::size_t g = w.letters[i].generator;
    out += g < alphabet.size() ? alphabet[g] : "x" + std::to_string(g);
    if (exp != 1) out += "^" + std::to_string(exp);
    i = j;
  }
  return out;
}

inline Word free_reduce(const Word& w) {
  Word out;
  out.letters.reserve(w.letters.size());
  for (const Letter& l : w.letters) {
    if (!out.letters.empty() && out.letters.back().generator == l.generator &&
        out.letters.back().exponent == -l.exponent) {
      out.letters.pop_back();
    } else {
      out.letters.push_back(l);
    }
  }
  return out;
}

/// Generator indices used by the Baumslag-Solitar routines.
inline constexpr std::size_t kBsA = 0;
inline constexpr std::size_t kBsT = 1;

/// Removes every pinch from a word over {a, t} in BS(m, n) = <a, t | t a^m t^-1 = a^n>.
/// t a^k t^-1 with m | k becomes a^(k n / m); t^-1 a^k t with n | k becomes
/// a^(k m / n). The output is freely reduced and pinch-free.
inline Word britton_reduce(long long m, long long n, const Word& w) {
  if (m == 0 || n == 0) throw Error("britton_reduce: m and n must be nonzero");
  // Syllables: an a-power (is_t == false) or a single t^{+-1}.
  struct Syl {
    bool is_t;
    long long value;  // a-exponent or t-exponent
  };
  std::vector<Syl> stack;
  auto push_a = [&](long long k) {
    if (k == 0) return;
    if (!stack.empty() && !stack.back().is_t) {
      stack.back().value += k;
      if (stack.back().value == 0) stack.pop_back();
    } else {
      stack.push_back({false, k});
    }
  };
  for (const Letter& l : w.letters) {
    if (l.generator == kBsA) {
      push_a(l.exponent);
      continue;
    }
    if (l.generator != kBsT) throw Error("britton_reduce: word must be over {a, t}");
    const int eps = l.exponent;
    if (!stack.empty() && stack.back().is_t && stack.back().value == -eps) {
      stack.pop_back();
      continue;
    }
    if (stack.size() >= 2 && !stack.back().is_t && stack[stack.size() - 2].is_t &&
        stack[stack.size() - 2].value == -eps) {
      const long long k = stack.back().value;
      // eps == -1: pattern t a^k t^-1; eps == +1: pattern t^-1 a^k t.
      const long long div = eps == -1 ? m : n;
      const long long mul = eps == -1 ? n : m;
      if (k % div == 0) {
        stack.pop_back();
        stack.pop_back();
        push_a(k / div * mul);
        continue;
      }
    }
    stack.push_back({true, eps});
  }
  Word out;
  for (const Syl& s : stack) {
    if (s.is_t)
      out.push(kBsT, static_cast<int>(s.value));
    else
      out.append(power_word(kBsA, s.value));
  }
  return out;
}

}  // namespace icckit
