// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Instance constructors, synthetic profile generators and the profile file
// format.
//
// Profile file grammar (LF written, CRLF accepted):
//
//   # comment to end of line, anywhere
//   n m
//   <n lines of m space-separated alternatives, most preferred first>
//   costs: c1 ... cm        (optional, any order, each at most once)
//   caps: x1 ... xm
//   budget: B
//   weights: w1 ... wn

#ifndef PREFALLOC_INSTANCES_HPP_
#define PREFALLOC_INSTANCES_HPP_

#include <charconv>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prefalloc/core.hpp"
#include "prefalloc/random.hpp"

namespace prefalloc {

// ---------------------------------------------------------------------------
// Constructors

inline Instance make_monroe(const Profile& profile, int k) {
  const int n = profile.num_agents();
  const int m = profile.num_alternatives();
  if (k < 1 || k > m) {
    throw DomainError("committee size " + std::to_string(k) + " outside 1.." +
                      std::to_string(m));
  }
  const Value cap = (n + k - 1) / k;
  return Instance{profile,
                  std::vector<Value>(static_cast<std::size_t>(n), 1),
                  std::vector<Value>(static_cast<std::size_t>(m), 1),
                  std::vector<Value>(static_cast<std::size_t>(m), cap),
                  k,
                  SystemTag::kMonroe,
                  k};
}

inline Instance make_cc(const Profile& profile, int k) {
  const int n = profile.num_agents();
  const int m = profile.num_alternatives();
  if (k < 1 || k > m) {
    throw DomainError("committee size " + std::to_string(k) + " outside 1.." +
                      std::to_string(m));
  }
  return Instance{profile,
                  std::vector<Value>(static_cast<std::size_t>(n), 1),
                  std::vector<Value>(static_cast<std::size_t>(m), 1),
                  std::vector<Value>(static_cast<std::size_t>(m), n),
                  k,
                  SystemTag::kCC,
                  k};
}

// Unrestricted instance; throws ValidationError on malformed fields.
inline Instance make_general(const Profile& profile, std::vector<Value> weights,
                             std::vector<Value> costs, std::vector<Value> capacities,
                             Value budget) {
  Instance instance{profile, std::move(weights), std::move(costs),
                    std::move(capacities), budget, SystemTag::kGeneral, std::nullopt};
  instance.Validate();
  return instance;
}

// ---------------------------------------------------------------------------
// Generators

// Every order drawn uniformly from the m! permutations.
inline Profile gen_impartial_culture(int n, int m, std::uint64_t seed) {
  if (n < 1 || m < 1) throw DomainError("generator needs n, m >= 1");
  Rng rng(seed);
  std::vector<std::vector<int>> orders(static_cast<std::size_t>(n));
  for (auto& order : orders) {
    order.resize(static_cast<std::size_t>(m));
    for (int a = 0; a < m; ++a) order[a] = a + 1;
    rng.shuffle(std::span<int>(order));
  }
  return Profile(std::move(orders));
}

// Every agent ranks 1, 2, ..., m.
inline Profile gen_identical(int n, int m) {
  if (n < 1 || m < 1) throw DomainError("generator needs n, m >= 1");
  std::vector<int> order(static_cast<std::size_t>(m));
  for (int a = 0; a < m; ++a) order[a] = a + 1;
  return Profile(std::vector<std::vector<int>>(static_cast<std::size_t>(n), order));
}

// ---------------------------------------------------------------------------
// File format

enum class ParseErrorKind {
  kMalformedHeader,   // missing or non-numeric "n m"
  kHeaderDomain,      // n < 1 or m < 1
  kMalformedToken,    // non-integer where an integer is required
  kWrongLength,       // order or block with the wrong number of entries
  kIndexOutOfRange,   // alternative outside 1..m
  kDuplicateIndex,    // alternative repeated within one order
  kMissingOrders,     // fewer than n order lines
  kUnknownBlock,      // unrecognized trailing line or repeated block
  kBadValue,          // nonpositive cost/cap/budget/weight
};

inline std::string_view to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::kMalformedHeader: return "malformed_header";
    case ParseErrorKind::kHeaderDomain: return "header_domain";
    case ParseErrorKind::kMalformedToken: return "malformed_token";
    case ParseErrorKind::kWrongLength: return "wrong_length";
    case ParseErrorKind::kIndexOutOfRange: return "index_out_of_range";
    case ParseErrorKind::kDuplicateIndex: return "duplicate_index";
    case ParseErrorKind::kMissingOrders: return "missing_orders";
    case ParseErrorKind::kUnknownBlock: return "unknown_block";
    case ParseErrorKind::kBadValue: return "bad_value";
  }
  return "?";
}

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, int line, int column, const std::string& detail)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " +
                           std::string(to_string(kind)) + ": " + detail),
        kind_(kind),
        line_(line),
        column_(column) {}

  ParseErrorKind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  ParseErrorKind kind_;
  int line_;
  int column_;
};

// Parsed file contents. The optional fields are present only when the
// corresponding block appears.
struct ProfileDocument {
  Profile profile;
  std::optional<std::vector<Value>> costs;
  std::optional<std::vector<Value>> capacities;
  std::optional<Value> budget;
  std::optional<std::vector<Value>> weights;

  bool has_general_fields() const {
    return costs || capacities || budget || weights;
  }

  // General instance from the document; absent fields default to unit
  // weights and costs, capacities n and budget m.
  Instance to_instance() const {
    const int n = profile.num_agents();
    const int m = profile.num_alternatives();
    return make_general(
        profile, weights.value_or(std::vector<Value>(static_cast<std::size_t>(n), 1)),
        costs.value_or(std::vector<Value>(static_cast<std::size_t>(m), 1)),
        capacities.value_or(std::vector<Value>(static_cast<std::size_t>(m), n)),
        budget.value_or(m));
  }

  friend bool operator==(const ProfileDocument&, const ProfileDocument&) = default;
};

namespace internal {

struct Token {
  std::string_view text;
  int column;  // 1-based
};

inline std::vector<Token> Tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

inline Value ParseInteger(const Token& token, int line) {
  Value v = 0;
  const char* first = token.text.data();
  const char* last = first + token.text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(ParseErrorKind::kMalformedToken, line, token.column,
                     "expected an integer, found '" + std::string(token.text) + "'");
  }
  return v;
}

struct SignificantLine {
  int number;  // 1-based physical line
  std::vector<Token> tokens;
};

inline std::vector<SignificantLine> SignificantLines(std::string_view document) {
  std::vector<SignificantLine> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= document.size()) {
    std::size_t end = document.find('\n', pos);
    if (end == std::string_view::npos) end = document.size();
    std::string_view line = document.substr(pos, end - pos);
    ++number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    auto tokens = Tokenize(line);
    if (!tokens.empty()) out.push_back({number, std::move(tokens)});
    if (end == document.size()) break;
    pos = end + 1;
  }
  return out;
}

}  // namespace internal

inline ProfileDocument parse_instance(std::string_view document) {
  using internal::ParseInteger;
  const auto lines = internal::SignificantLines(document);
  if (lines.empty()) {
    throw ParseError(ParseErrorKind::kMalformedHeader, 1, 1, "missing 'n m' header");
  }
  const auto& header = lines.front();
  if (header.tokens.size() != 2) {
    throw ParseError(ParseErrorKind::kMalformedHeader, header.number, 1,
                     "header must be exactly 'n m'");
  }
  Value n = 0;
  Value m = 0;
  try {
    n = ParseInteger(header.tokens[0], header.number);
    m = ParseInteger(header.tokens[1], header.number);
  } catch (const ParseError& e) {
    throw ParseError(ParseErrorKind::kMalformedHeader, e.line(), e.column(),
                     "header must be two integers");
  }
  if (n < 1 || m < 1 || n > (1 << 30) || m > (1 << 30)) {
    throw ParseError(ParseErrorKind::kHeaderDomain, header.number, 1,
                     "n and m must be at least 1, got n=" + std::to_string(n) +
                         " m=" + std::to_string(m));
  }

  std::vector<std::vector<int>> orders;
  orders.reserve(static_cast<std::size_t>(n));
  std::size_t idx = 1;
  for (; idx < lines.size() && static_cast<Value>(orders.size()) < n; ++idx) {
    const auto& line = lines[idx];
    if (line.tokens.front().text.back() == ':') {
      throw ParseError(ParseErrorKind::kMissingOrders, line.number, 1,
                       "expected " + std::to_string(n) + " orders, found " +
                           std::to_string(orders.size()));
    }
    if (static_cast<Value>(line.tokens.size()) != m) {
      throw ParseError(ParseErrorKind::kWrongLength, line.number, 1,
                       "order has " + std::to_string(line.tokens.size()) +
                           " entries, expected " + std::to_string(m));
    }
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(m));
    std::vector<char> seen(static_cast<std::size_t>(m) + 1, 0);
    for (const auto& token : line.tokens) {
      const Value a = ParseInteger(token, line.number);
      if (a < 1 || a > m) {
        throw ParseError(ParseErrorKind::kIndexOutOfRange, line.number, token.column,
                         "alternative " + std::to_string(a) + " outside 1.." +
                             std::to_string(m));
      }
      if (seen[a]) {
        throw ParseError(ParseErrorKind::kDuplicateIndex, line.number, token.column,
                         "alternative " + std::to_string(a) + " repeated");
      }
      seen[a] = 1;
      order.push_back(static_cast<int>(a));
    }
    orders.push_back(std::move(order));
  }
  if (static_cast<Value>(orders.size()) < n) {
    const int at = lines.back().number + 1;
    throw ParseError(ParseErrorKind::kMissingOrders, at, 1,
                     "expected " + std::to_string(n) + " orders, found " +
                         std::to_string(orders.size()));
  }

  ProfileDocument doc{Profile(std::move(orders)), std::nullopt, std::nullopt,
                      std::nullopt, std::nullopt};
  for (; idx < lines.size(); ++idx) {
    const auto& line = lines[idx];
    const std::string_view key = line.tokens.front().text;
    auto values = [&](Value expected) {
      if (static_cast<Value>(line.tokens.size()) - 1 != expected) {
        throw ParseError(ParseErrorKind::kWrongLength, line.number, 1,
                         std::string(key) + " needs " + std::to_string(expected) +
                             " values, found " + std::to_string(line.tokens.size() - 1));
      }
      std::vector<Value> out;
      for (std::size_t t = 1; t < line.tokens.size(); ++t) {
        const Value v = ParseInteger(line.tokens[t], line.number);
        if (v < 1) {
          throw ParseError(ParseErrorKind::kBadValue, line.number, line.tokens[t].column,
                           std::string(key) + " values must be positive");
        }
        out.push_back(v);
      }
      return out;
    };
    auto once = [&](bool present) {
      if (present) {
        throw ParseError(ParseErrorKind::kUnknownBlock, line.number, 1,
                         "block '" + std::string(key) + "' repeated");
      }
    };
    if (key == "costs:") {
      once(doc.costs.has_value());
      doc.costs = values(m);
    } else if (key == "caps:") {
      once(doc.capacities.has_value());
      doc.capacities = values(m);
    } else if (key == "budget:") {
      once(doc.budget.has_value());
      doc.budget = values(1).front();
    } else if (key == "weights:") {
      once(doc.weights.has_value());
      doc.weights = values(n);
    } else {
      throw ParseError(ParseErrorKind::kUnknownBlock, line.number, 1,
                       "unexpected line after the orders");
    }
  }
  return doc;
}

inline std::string write_instance(const ProfileDocument& doc) {
  std::ostringstream out;
  const Profile& p = doc.profile;
  out << p.num_agents() << ' ' << p.num_alternatives() << '\n';
  for (const auto& order : p.orders()) {
    for (std::size_t r = 0; r < order.size(); ++r) {
      if (r) out << ' ';
      out << order[r];
    }
    out << '\n';
  }
  auto block = [&](std::string_view key, const std::vector<Value>& values) {
    out << key;
    for (Value v : values) out << ' ' << v;
    out << '\n';
  };
  if (doc.costs) block("costs:", *doc.costs);
  if (doc.capacities) block("caps:", *doc.capacities);
  if (doc.budget) block("budget:", {*doc.budget});
  if (doc.weights) block("weights:", *doc.weights);
  return out.str();
}

inline std::string write_instance(const Profile& profile) {
  return write_instance(ProfileDocument{profile, std::nullopt, std::nullopt,
                                        std::nullopt, std::nullopt});
}

}  // namespace prefalloc

#endif  // PREFALLOC_INSTANCES_HPP_
