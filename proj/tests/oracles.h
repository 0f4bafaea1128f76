#pragma once

// Brute-force reference computations for tests. Deliberately independent of the
// library: own UTF-8 decoding, own jamo tables (loaded from Unicode names), no
// shared helpers.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

inline std::vector<std::string> chars(const std::string& s) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < s.size();) {
    const auto b = static_cast<unsigned char>(s[i]);
    const std::size_t n = b < 0x80 ? 1 : b < 0xE0 ? 2 : b < 0xF0 ? 3 : 4;
    out.push_back(s.substr(i, n));
    i += n;
  }
  return out;
}

inline char32_t code_point(const std::string& ch) {
  const auto* p = reinterpret_cast<const unsigned char*>(ch.data());
  switch (ch.size()) {
    case 1: return p[0];
    case 2: return ((p[0] & 0x1F) << 6) | (p[1] & 0x3F);
    case 3: return ((p[0] & 0x0F) << 12) | ((p[1] & 0x3F) << 6) | (p[2] & 0x3F);
    case 4: return ((p[0] & 0x07) << 18) | ((p[1] & 0x3F) << 12) | ((p[2] & 0x3F) << 6) | (p[3] & 0x3F);
    default: throw std::invalid_argument("not one code point");
  }
}

inline std::string to_utf8(char32_t c) {
  std::string s;
  if (c < 0x80) {
    s += static_cast<char>(c);
  } else if (c < 0x800) {
    s += static_cast<char>(0xC0 | (c >> 6));
    s += static_cast<char>(0x80 | (c & 0x3F));
  } else if (c < 0x10000) {
    s += static_cast<char>(0xE0 | (c >> 12));
    s += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
    s += static_cast<char>(0x80 | (c & 0x3F));
  } else {
    s += static_cast<char>(0xF0 | (c >> 18));
    s += static_cast<char>(0x80 | ((c >> 12) & 0x3F));
    s += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
    s += static_cast<char>(0x80 | (c & 0x3F));
  }
  return s;
}

inline std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

inline std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

template <typename T>
std::map<T, int> multiset(const std::vector<T>& v) {
  std::map<T, int> m;
  for (const auto& x : v) ++m[x];
  return m;
}

inline int letter_count(const std::vector<std::string>& ws, char letter) {
  int n = 0;
  for (const auto& w : ws) {
    for (char c : w) n += std::tolower(static_cast<unsigned char>(c)) == letter;
  }
  return n;
}

// True iff no neighbouring pair of `perm` was a neighbouring pair (by value) in `orig`.
inline bool adjacency_free(const std::vector<std::string>& orig, const std::vector<std::string>& perm) {
  std::set<std::pair<std::string, std::string>> adj;
  for (std::size_t i = 0; i + 1 < orig.size(); ++i) {
    adj.insert({orig[i], orig[i + 1]});
    adj.insert({orig[i + 1], orig[i]});
  }
  for (std::size_t i = 0; i + 1 < perm.size(); ++i) {
    if (adj.count({perm[i], perm[i + 1]})) return false;
  }
  return true;
}

// Conjoining-to-compatibility jamo map from the fixture generated off Unicode letter names.
class Jamo {
 public:
  explicit Jamo(const std::filesystem::path& table) {
    std::ifstream in(table);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      const auto tab = line.find('\t');
      map_[static_cast<char32_t>(std::stoul(line.substr(0, tab), nullptr, 16))] =
          static_cast<char32_t>(std::stoul(line.substr(tab + 1), nullptr, 16));
    }
    if (map_.size() != 67) throw std::runtime_error("jamo table incomplete");
    for (char32_t s = 0xAC00; s <= 0xD7A3; ++s) inverse_[parts(to_utf8(s))] = to_utf8(s);
  }

  // Compatibility jamo of a syllable: initial, medial, and final when present.
  std::vector<std::string> parts(const std::string& syllable) const {
    const char32_t s = code_point(syllable) - 0xAC00;
    if (s >= 11172) throw std::invalid_argument("not a Hangul syllable: " + syllable);
    std::vector<std::string> out{to_utf8(map_.at(0x1100 + s / 588)), to_utf8(map_.at(0x1161 + (s % 588) / 28))};
    if (s % 28) out.push_back(to_utf8(map_.at(0x11A7 + s % 28)));
    return out;
  }

  // Inverse of parts() over an exhaustive table; empty when no syllable matches.
  std::string compose(const std::vector<std::string>& p) const {
    auto it = inverse_.find(p);
    return it == inverse_.end() ? "" : it->second;
  }

 private:
  std::map<char32_t, char32_t> map_;
  std::map<std::vector<std::string>, std::string> inverse_;
};

}  // namespace oracle
