#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "domelim/error.hpp"
#include "domelim/game.hpp"
#include "domelim/rational.hpp"

namespace domelim {

// Game file grammar (line oriented, '#' comments, blank lines ignored):
//
//   players <n>
//   labels 1: <name>+
//   ...
//   labels n: <name>+
//   payoffs
//   <n rationals>        one line per joint strategy, odometer order
//
// Rationals are -?digits(/digits)?.

namespace detail {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;  // 1-based
  std::vector<Token> tokens;
};

inline std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(pos, end - pos);
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t k = 0;
    while (k < raw.size()) {
      while (k < raw.size() && (raw[k] == ' ' || raw[k] == '\t' || raw[k] == '\r')) ++k;
      if (k >= raw.size()) break;
      const std::size_t start = k;
      while (k < raw.size() && raw[k] != ' ' && raw[k] != '\t' && raw[k] != '\r') ++k;
      line.tokens.push_back({raw.substr(start, k - start), start + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

inline bool parse_count(std::string_view text, std::size_t& out) {
  if (text.empty() || text.size() > 9) return false;
  out = 0;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
    out = out * 10 + static_cast<std::size_t>(c - '0');
  }
  return true;
}

}  // namespace detail

inline Game parse_game(std::string_view text) {
  const auto lines = detail::tokenize(text);
  std::size_t cursor = 0;
  const auto last_line = [&]() -> std::size_t { return lines.empty() ? 1 : lines.back().number; };

  if (lines.empty()) throw ParseError(1, 1, "empty game file; expected `players <n>`");
  {
    const auto& line = lines[cursor++];
    std::size_t n = 0;
    if (line.tokens[0].text != "players") {
      throw ParseError(line.number, line.tokens[0].column, "expected `players <n>`");
    }
    if (line.tokens.size() < 2 || !detail::parse_count(line.tokens[1].text, n)) {
      throw ParseError(line.number, line.tokens.size() < 2 ? line.tokens[0].column : line.tokens[1].column,
                       "expected a player count after `players`");
    }
    if (line.tokens.size() > 2) throw ParseError(line.number, line.tokens[2].column, "unexpected text after player count");
    if (n < 2) throw ParseError(line.number, line.tokens[1].column, "a game needs at least two players");
  }
  std::size_t n = 0;
  detail::parse_count(lines[0].tokens[1].text, n);

  std::vector<std::vector<std::string>> labels;
  for (std::size_t i = 1; i <= n; ++i) {
    if (cursor >= lines.size()) throw ParseError(last_line(), 1, "missing `labels " + std::to_string(i) + ":` line");
    const auto& line = lines[cursor++];
    const auto& tokens = line.tokens;
    if (tokens[0].text != "labels") {
      throw ParseError(line.number, tokens[0].column, "expected `labels " + std::to_string(i) + ":`");
    }
    const std::string expected = std::to_string(i) + ":";
    std::size_t first_name = 0;
    if (tokens.size() >= 2 && tokens[1].text == expected) {
      first_name = 2;
    } else if (tokens.size() >= 3 && tokens[1].text == std::to_string(i) && tokens[2].text == ":") {
      first_name = 3;
    } else {
      throw ParseError(line.number, tokens.size() >= 2 ? tokens[1].column : tokens[0].column,
                       "expected `" + expected + "` after `labels`");
    }
    if (tokens.size() == first_name) {
      throw ParseError(line.number, tokens.back().column, "player " + std::to_string(i) + " has no strategies");
    }
    std::set<std::string_view> seen;
    auto& names = labels.emplace_back();
    for (std::size_t k = first_name; k < tokens.size(); ++k) {
      if (!seen.insert(tokens[k].text).second) {
        throw ParseError(line.number, tokens[k].column, "duplicate label '" + std::string(tokens[k].text) + "'");
      }
      names.emplace_back(tokens[k].text);
    }
  }

  if (cursor >= lines.size()) throw ParseError(last_line(), 1, "missing `payoffs` line");
  {
    const auto& line = lines[cursor++];
    if (line.tokens[0].text != "payoffs") throw ParseError(line.number, line.tokens[0].column, "expected `payoffs`");
    if (line.tokens.size() > 1) throw ParseError(line.number, line.tokens[1].column, "unexpected text after `payoffs`");
  }

  std::size_t joints = 1;
  for (const auto& names : labels) joints *= names.size();
  std::vector<Rational> payoffs;
  payoffs.reserve(joints * n);
  for (std::size_t k = 0; k < joints; ++k) {
    if (cursor >= lines.size()) {
      throw ParseError(last_line(), 1,
                       "expected " + std::to_string(joints) + " payoff lines, found " + std::to_string(k));
    }
    const auto& line = lines[cursor++];
    if (line.tokens.size() != n) {
      throw ParseError(line.number, line.tokens.front().column,
                       "payoff line has " + std::to_string(line.tokens.size()) + " entries, expected " + std::to_string(n));
    }
    for (const auto& token : line.tokens) {
      auto value = parse_rational(token.text);
      if (!value) {
        const auto slash = token.text.find('/');
        const bool zero_den = slash != std::string_view::npos && slash + 1 < token.text.size() &&
                              token.text.substr(slash + 1).find_first_not_of('0') == std::string_view::npos &&
                              parse_rational(token.text.substr(0, slash)).has_value();
        throw ParseError(line.number, token.column,
                         zero_den ? "zero denominator in '" + std::string(token.text) + "'"
                                  : "malformed rational '" + std::string(token.text) + "'");
      }
      payoffs.push_back(std::move(*value));
    }
  }
  if (cursor < lines.size()) {
    const auto& line = lines[cursor];
    throw ParseError(line.number, line.tokens.front().column, "trailing text after the last payoff line");
  }
  return Game(std::move(labels), std::move(payoffs));
}

inline std::string write_game(const Game& game) {
  std::string out = "players " + std::to_string(game.num_players()) + "\n";
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    out += "labels " + std::to_string(i + 1) + ":";
    for (const auto& name : game.labels(i)) out += " " + name;
    out += "\n";
  }
  out += "payoffs\n";
  const auto& tensor = game.payoff_tensor();
  const std::size_t n = game.num_players();
  for (std::size_t k = 0; k < tensor.size(); k += n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) out += ' ';
      out += to_string(tensor[k + i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace domelim
