#include "phull/spec_file.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "phull/errors.hpp"

namespace phull {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line, std::size_t offset) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    out.push_back({line.substr(i, j - i), offset + i + 1});
    i = j;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::size_t leading_space(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return i;
}

Word parse_word(const Alphabet& alpha, std::string_view text, std::size_t line, std::size_t offset) {
  std::vector<Letter> letters;
  for (const auto& tok : tokenize(text, offset)) {
    if (auto l = alpha.find(tok.text)) {
      letters.push_back(*l);
      continue;
    }
    if (!alpha.single_char())
      throw ParseError(line, tok.column, fmt::format("unknown symbol '{}'", tok.text));
    for (std::size_t k = 0; k < tok.text.size(); ++k) {
      auto l = alpha.find(tok.text.substr(k, 1));
      if (!l) throw ParseError(line, tok.column + k, fmt::format("unknown symbol '{}'", tok.text.substr(k, 1)));
      letters.push_back(*l);
    }
  }
  if (letters.empty()) throw ParseError(line, offset + 1, "empty word");
  return Word(std::move(letters));
}

double parse_real(std::string_view text, std::size_t line, std::size_t column) {
  double v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    throw ParseError(line, column, fmt::format("expected a finite real number, got '{}'", text));
  return v;
}

enum class Section { header, rules, potential };

}  // namespace

SubstitutionSpec parse_spec(std::string_view text) {
  std::optional<std::string> name;
  std::optional<Alphabet> alpha;
  std::optional<std::pair<std::string, std::pair<std::size_t, std::size_t>>> seed_text;  // text, (line, column)
  std::map<Letter, Word> rules;
  std::map<Letter, double> potential;
  std::size_t rules_line = 0, potential_line = 0;
  Section section = Section::header;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::size_t indent = leading_space(raw);
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const std::size_t col0 = indent + 1;

    if (line.front() == '[') {
      if (line == "[rules]") {
        if (!alpha) throw ParseError(line_no, col0, "[rules] before 'alphabet:'");
        if (rules_line) throw ParseError(line_no, col0, "duplicate [rules] section");
        section = Section::rules;
        rules_line = line_no;
      } else if (line == "[potential]") {
        if (!alpha) throw ParseError(line_no, col0, "[potential] before 'alphabet:'");
        if (potential_line) throw ParseError(line_no, col0, "duplicate [potential] section");
        section = Section::potential;
        potential_line = line_no;
      } else {
        throw ParseError(line_no, col0, fmt::format("unknown section '{}'", line));
      }
      continue;
    }

    if (section == Section::header) {
      const auto colon = line.find(':');
      if (colon == std::string_view::npos) throw ParseError(line_no, col0, "expected 'key: value'");
      const auto key = trim(line.substr(0, colon));
      const auto after = line.substr(colon + 1);
      const std::size_t vcol = col0 + colon + 1 + leading_space(after);
      const auto value = trim(after);
      if (value.empty()) throw ParseError(line_no, vcol, fmt::format("missing value for '{}'", key));
      if (key == "name") {
        if (name) throw ParseError(line_no, col0, "duplicate 'name'");
        name = std::string(value);
      } else if (key == "alphabet") {
        if (alpha) throw ParseError(line_no, col0, "duplicate 'alphabet'");
        std::vector<std::string> symbols;
        for (const auto& tok : tokenize(value, vcol - 1)) symbols.emplace_back(tok.text);
        try {
          alpha.emplace(std::move(symbols));
        } catch (const InvalidArgument& e) {
          throw ParseError(line_no, vcol, e.what());
        }
      } else if (key == "seed") {
        if (seed_text) throw ParseError(line_no, col0, "duplicate 'seed'");
        seed_text = {std::string(value), {line_no, vcol}};
      } else {
        throw ParseError(line_no, col0, fmt::format("unknown key '{}'", key));
      }
      continue;
    }

    const std::string_view sep = section == Section::rules ? "->" : "=";
    const auto at = line.find(sep);
    if (at == std::string_view::npos)
      throw ParseError(line_no, col0, fmt::format("expected 'symbol {} value'", sep));
    const auto lhs = trim(line.substr(0, at));
    const auto letter = alpha->find(lhs);
    if (!letter) throw ParseError(line_no, col0, fmt::format("unknown symbol '{}'", lhs));
    const auto rhs_raw = line.substr(at + sep.size());
    const std::size_t rcol = col0 + at + sep.size() + leading_space(rhs_raw);
    const auto rhs = trim(rhs_raw);
    if (section == Section::rules) {
      if (rules.contains(*letter)) throw ParseError(line_no, col0, fmt::format("duplicate rule for '{}'", lhs));
      rules.emplace(*letter, parse_word(*alpha, rhs, line_no, rcol - 1));
    } else {
      if (potential.contains(*letter))
        throw ParseError(line_no, col0, fmt::format("duplicate potential for '{}'", lhs));
      potential.emplace(*letter, parse_real(rhs, line_no, rcol));
    }
  }

  if (!name) throw ParseError(1, 1, "missing 'name'");
  if (!alpha) throw ParseError(1, 1, "missing 'alphabet'");
  if (!rules_line) throw ParseError(1, 1, "missing [rules] section");
  std::vector<Word> images;
  for (Letter l = 0; l < alpha->size(); ++l) {
    auto it = rules.find(l);
    if (it == rules.end())
      throw ParseError(rules_line, 1, fmt::format("no rule for letter '{}'", alpha->symbol(l)));
    images.push_back(it->second);
  }
  SubstitutionSpec spec{*name, Substitution(*alpha, std::move(images)), std::nullopt, std::nullopt};
  if (seed_text) {
    const auto& [txt, where] = *seed_text;
    spec.seed = CyclicWord(parse_word(*alpha, txt, where.first, where.second - 1));
  }
  if (potential_line) {
    std::vector<double> values;
    for (Letter l = 0; l < alpha->size(); ++l) {
      auto it = potential.find(l);
      if (it == potential.end())
        throw ParseError(potential_line, 1, fmt::format("no potential for letter '{}'", alpha->symbol(l)));
      values.push_back(it->second);
    }
    spec.potential = PotentialMap(std::move(values));
  }
  return spec;
}

SubstitutionSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read spec file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

std::string format_spec(const SubstitutionSpec& spec) {
  const auto& alpha = spec.alphabet();
  std::string out = "name: " + spec.name + "\nalphabet:";
  for (const auto& s : alpha.symbols()) out += " " + s;
  out += "\n";
  if (spec.seed) out += "seed: " + alpha.render(spec.seed->period()) + "\n";
  out += "[rules]\n";
  for (Letter l = 0; l < alpha.size(); ++l)
    out += alpha.symbol(l) + " -> " + alpha.render(spec.substitution.image(l)) + "\n";
  if (spec.potential) {
    out += "[potential]\n";
    for (Letter l = 0; l < alpha.size(); ++l) out += fmt::format("{} = {}\n", alpha.symbol(l), (*spec.potential)(l));
  }
  return out;
}

PotentialMap parse_potential_list(const Alphabet& alphabet, std::string_view text) {
  std::map<Letter, double> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    const auto item = text.substr(pos, comma - pos);
    const std::size_t col = pos + 1;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw ParseError(1, col, fmt::format("expected KEY=VAL, got '{}'", item));
    const auto key = trim(item.substr(0, eq));
    const auto letter = alphabet.find(key);
    if (!letter) throw ParseError(1, col, fmt::format("unknown symbol '{}'", key));
    if (values.contains(*letter)) throw ParseError(1, col, fmt::format("duplicate potential for '{}'", key));
    values.emplace(*letter, parse_real(trim(item.substr(eq + 1)), 1, col + eq + 1));
    pos = comma + 1;
  }
  std::vector<double> out;
  for (Letter l = 0; l < alphabet.size(); ++l) {
    auto it = values.find(l);
    if (it == values.end()) throw ParseError(1, 1, fmt::format("no potential for letter '{}'", alphabet.symbol(l)));
    out.push_back(it->second);
  }
  return PotentialMap(std::move(out));
}

}  // namespace phull
