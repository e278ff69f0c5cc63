#pragma once

// Reference implementations the interpreter is checked against. None of
// them uses the interpreter; they work on plain C++ data and produce the
// printed form the interpreter is expected to print.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <regex>
#include <string>
#include <vector>

namespace oracle {

// ---------------------------------------------------------------------------
// Collection decompositions

using Coll = std::vector<int>;

inline std::string show(const Coll& c) {
  std::string s = "{";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? " " : "") + std::to_string(c[i]);
  return s + "}";
}

inline Coll without(const Coll& c, std::size_t i) {
  Coll r = c;
  r.erase(r.begin() + static_cast<std::ptrdiff_t>(i));
  return r;
}

enum class Kind { List, Multiset, Set };
enum class Shape { Cons, ConsCons, Join, NonLinear, Not };

inline const char* matcher_name(Kind k) {
  switch (k) {
    case Kind::List: return "list";
    case Kind::Multiset: return "multiset";
    case Kind::Set: return "set";
  }
  return "";
}

/// Pattern and body of the match clause for `s`.
inline std::pair<const char*, const char*> clause_of(Shape s) {
  switch (s) {
    case Shape::Cons: return {"<cons $x $r>", "[x r]"};
    case Shape::ConsCons: return {"<cons $x <cons $y $r>>", "[x y r]"};
    case Shape::Join: return {"<join $xs $ys>", "[xs ys]"};
    case Shape::NonLinear: return {"<cons $x <cons ,x _>>", "x"};
    case Shape::Not: return {"<cons $x ^<cons ,x _>>", "x"};
  }
  return {"", ""};
}

/// The ways `c` decomposes under `cons`: each entry is the head and rest.
/// A list has one way, a multiset one per element, and a set keeps the
/// whole collection as the rest.
inline std::vector<std::pair<int, Coll>> cons_ways(Kind k, const Coll& c) {
  std::vector<std::pair<int, Coll>> out;
  if (c.empty()) return out;
  if (k == Kind::List) {
    out.emplace_back(c[0], Coll(c.begin() + 1, c.end()));
    return out;
  }
  for (std::size_t i = 0; i < c.size(); ++i) out.emplace_back(c[i], k == Kind::Set ? c : without(c, i));
  return out;
}

/// Printed results of the clause for `s`, in no particular order.
inline std::vector<std::string> decompositions(Kind k, Shape s, const Coll& c) {
  std::vector<std::string> out;
  switch (s) {
    case Shape::Cons:
      for (const auto& [x, r] : cons_ways(k, c)) out.push_back("[" + std::to_string(x) + " " + show(r) + "]");
      break;
    case Shape::ConsCons:
      for (const auto& [x, r1] : cons_ways(k, c))
        for (const auto& [y, r2] : cons_ways(k, r1))
          out.push_back("[" + std::to_string(x) + " " + std::to_string(y) + " " + show(r2) + "]");
      break;
    case Shape::Join:
      for (std::size_t i = 0; i <= c.size(); ++i)
        out.push_back("[" + show(Coll(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(i))) + " " +
                      show(Coll(c.begin() + static_cast<std::ptrdiff_t>(i), c.end())) + "]");
      break;
    case Shape::NonLinear:
      for (const auto& [x, r1] : cons_ways(k, c))
        for (const auto& [y, r2] : cons_ways(k, r1))
          if (y == x) out.push_back(std::to_string(x));
      break;
    case Shape::Not:
      for (const auto& [x, r1] : cons_ways(k, c)) {
        const auto rest = cons_ways(k, r1);
        if (std::none_of(rest.begin(), rest.end(), [x = x](const auto& w) { return w.first == x; }))
          out.push_back(std::to_string(x));
      }
      break;
  }
  return out;
}

/// Every collection over {1,2,3} with at most `max_len` elements.
inline std::vector<Coll> small_collections(std::size_t max_len) {
  std::vector<Coll> out{{}};
  for (std::size_t begin = 0, len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (int v = 1; v <= 3; ++v) {
        Coll c = out[i];
        c.push_back(v);
        out.push_back(std::move(c));
      }
    begin = end;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Primes

inline std::vector<std::uint64_t> sieve(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Poker hands

struct Card {
  int suit;  // 0..3
  int rank;  // 1..13
};

inline const std::array<const char*, 4> kSuits{"Spade", "Heart", "Club", "Diamond"};

inline std::string show(const std::vector<Card>& hand) {
  std::string s = "{";
  for (std::size_t i = 0; i < hand.size(); ++i)
    s += std::string(i ? " " : "") + "<Card <" + kSuits[static_cast<std::size_t>(hand[i].suit)] + "> " +
         std::to_string(hand[i].rank) + ">";
  return s + "}";
}

/// Classifies by counting ranks and suits. Ranks are compared modulo 13,
/// so a straight may wrap around in either direction.
inline std::string classify(const std::vector<Card>& hand) {
  std::map<int, int> ranks;
  std::map<int, int> suits;
  for (const auto& c : hand) {
    ++ranks[c.rank % 13];
    ++suits[c.suit];
  }
  std::vector<int> counts;
  for (const auto& [r, n] : ranks) counts.push_back(n);
  std::sort(counts.rbegin(), counts.rend());

  bool straight = false;
  if (ranks.size() == 5)
    for (int top = 0; top < 13 && !straight; ++top) {
      straight = true;
      for (int d = 0; d < 5; ++d) straight = straight && ranks.count(((top - d) % 13 + 13) % 13);
    }
  const bool flush = suits.size() == 1;

  if (straight && flush) return "<Straight-Flush>";
  if (counts[0] == 4) return "<Four-of-Kind>";
  if (counts[0] == 3 && counts[1] == 2) return "<Full-House>";
  if (flush) return "<Flush>";
  if (straight) return "<Straight>";
  if (counts[0] == 3) return "<Three-of-Kind>";
  if (counts[0] == 2 && counts[1] == 2) return "<Two-Pair>";
  if (counts[0] == 2) return "<One-Pair>";
  return "<Nothing>";
}

inline std::vector<Card> parse_hand(const std::string& text) {
  static const std::regex card(R"(<Card <(\w+)> (\d+)>)");
  std::vector<Card> out;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), card); it != std::sregex_iterator(); ++it) {
    const auto s = std::find(kSuits.begin(), kSuits.end(), (*it)[1].str());
    out.push_back({static_cast<int>(s - kSuits.begin()), std::stoi((*it)[2].str())});
  }
  return out;
}

inline std::vector<std::vector<Card>> random_hands(std::size_t n, std::uint32_t seed) {
  std::vector<Card> deck;
  for (int s = 0; s < 4; ++s)
    for (int r = 1; r <= 13; ++r) deck.push_back({s, r});
  std::mt19937 rng(seed);
  std::vector<std::vector<Card>> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::shuffle(deck.begin(), deck.end(), rng);
    out.emplace_back(deck.begin(), deck.begin() + 5);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Mahjong hands

/// Tiles 0..26 are numbered tiles (suit * 9 + number - 1), 27..33 honors.
using Tile = int;
constexpr int kTileKinds = 34;

inline const std::array<const char*, 3> kTileSuits{"Wan", "Pin", "Sou"};
inline const std::array<const char*, 7> kHonors{"Ton", "Nan", "Sha", "Pe", "Haku", "Hatsu", "Chun"};

inline std::string show_tile(Tile t) {
  if (t < 27)
    return "<Num <" + std::string(kTileSuits[static_cast<std::size_t>(t / 9)]) + "> " + std::to_string(t % 9 + 1) +
           ">";
  return "<Hnr <" + std::string(kHonors[static_cast<std::size_t>(t - 27)]) + ">>";
}

inline std::string show_tiles(const std::vector<Tile>& hand) {
  std::string s = "{";
  for (std::size_t i = 0; i < hand.size(); ++i) s += (i ? " " : "") + show_tile(hand[i]);
  return s + "}";
}

inline std::vector<Tile> parse_tiles(const std::string& text) {
  static const std::regex tile(R"(<Num <(\w+)> (\d+)>|<Hnr <(\w+)>>)");
  std::vector<Tile> out;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), tile); it != std::sregex_iterator(); ++it) {
    if ((*it)[1].matched) {
      const auto s = std::find(kTileSuits.begin(), kTileSuits.end(), (*it)[1].str()) - kTileSuits.begin();
      out.push_back(static_cast<Tile>(s * 9 + std::stoi((*it)[2].str()) - 1));
    } else {
      const auto h = std::find(kHonors.begin(), kHonors.end(), (*it)[3].str()) - kHonors.begin();
      out.push_back(static_cast<Tile>(27 + h));
    }
  }
  return out;
}

/// Whether `counts` splits exactly into `melds` sets of three identical
/// tiles or three consecutive numbers of one suit.
inline bool melds_only(std::array<int, kTileKinds>& counts, int melds) {
  if (melds == 0) return std::all_of(counts.begin(), counts.end(), [](int n) { return n == 0; });
  int t = 0;
  while (counts[static_cast<std::size_t>(t)] == 0) ++t;
  auto at = [&](int i) -> int& { return counts[static_cast<std::size_t>(i)]; };
  if (at(t) >= 3) {
    at(t) -= 3;
    const bool ok = melds_only(counts, melds - 1);
    at(t) += 3;
    if (ok) return true;
  }
  if (t < 27 && t % 9 <= 6 && at(t + 1) > 0 && at(t + 2) > 0) {
    --at(t), --at(t + 1), --at(t + 2);
    const bool ok = melds_only(counts, melds - 1);
    ++at(t), ++at(t + 1), ++at(t + 2);
    if (ok) return true;
  }
  return false;
}

/// A winning 14-tile hand: a pair and four melds, or seven pairs (a
/// quadruple counts as two pairs).
inline bool complete(const std::vector<Tile>& hand) {
  if (hand.size() != 14) return false;
  std::array<int, kTileKinds> counts{};
  for (Tile t : hand) ++counts[static_cast<std::size_t>(t)];
  if (std::all_of(counts.begin(), counts.end(), [](int n) { return n % 2 == 0; })) return true;
  for (auto& n : counts) {
    if (n < 2) continue;
    n -= 2;
    const bool ok = melds_only(counts, 4);
    n += 2;
    if (ok) return true;
  }
  return false;
}

inline std::vector<std::vector<Tile>> random_tile_hands(std::size_t n, std::uint32_t seed) {
  std::vector<Tile> wall;
  for (Tile t = 0; t < kTileKinds; ++t)
    for (int k = 0; k < 4; ++k) wall.push_back(t);
  std::mt19937 rng(seed);
  std::vector<std::vector<Tile>> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::shuffle(wall.begin(), wall.end(), rng);
    out.emplace_back(wall.begin(), wall.begin() + 14);
  }
  return out;
}

} // namespace oracle
