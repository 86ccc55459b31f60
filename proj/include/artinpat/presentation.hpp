#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "artinpat/error.hpp"

namespace apat {

// One factor g_k^e of a word; gen is 0-based.
struct Syllable {
  int gen = 0;
  long exp = 0;
  friend bool operator==(const Syllable&, const Syllable&) = default;
};

using Word = std::vector<Syllable>;

// A power-conjugate presentation on generators g_1..g_n.
//   g_i^{e_i} = power[i]
//   g_j^{g_i} = conj[j][i]   (j > i; absent means g_i and g_j commute)
struct PcPresentation {
  std::string name;
  std::vector<int> orders;
  std::vector<Word> power;
  std::vector<std::vector<std::optional<Word>>> conj;

  int rank() const noexcept { return static_cast<int>(orders.size()); }

  explicit PcPresentation(std::string n = {}, std::vector<int> rel_orders = {})
      : name(std::move(n)), orders(std::move(rel_orders)) {
    resize(rank());
  }

  void resize(int n) {
    orders.resize(n, 2);
    power.assign(n, {});
    conj.assign(n, std::vector<std::optional<Word>>(n));
  }

  const std::optional<Word>& conjugate(int j, int i) const { return conj.at(j).at(i); }
};

inline std::string word_to_string(const Word& w) {
  if (w.empty()) return "id";
  std::string out;
  for (const auto& s : w) {
    if (!out.empty()) out += ' ';
    out += 'g' + std::to_string(s.gen + 1) + '^' + std::to_string(s.exp);
  }
  return out;
}

inline std::string to_text(const PcPresentation& p) {
  std::ostringstream os;
  os << "group " << p.name << "\n";
  os << "gens " << p.rank() << "\n";
  os << "orders";
  for (int e : p.orders) os << ' ' << e;
  os << "\n";
  for (int i = 0; i < p.rank(); ++i)
    if (!p.power[i].empty()) os << "pow " << i + 1 << " = " << word_to_string(p.power[i]) << "\n";
  for (int i = 0; i < p.rank(); ++i)
    for (int j = i + 1; j < p.rank(); ++j)
      if (const auto& w = p.conj[j][i]) os << "conj " << j + 1 << ' ' << i + 1 << " = " << word_to_string(*w) << "\n";
  os << "end\n";
  return os.str();
}

namespace detail {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
      ++i;
      continue;
    }
    if (line[i] == '=') {
      out.push_back({line.substr(i, 1), i + 1});
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r' && line[j] != '#' && line[j] != '=') ++j;
    out.push_back({line.substr(i, j - i), i + 1});
    i = j;
  }
  return out;
}

template <class Int>
std::optional<Int> parse_int(std::string_view s) {
  Int v{};
  if (s.empty()) return std::nullopt;
  const char* b = s.data();
  if (*b == '+') ++b;
  auto [ptr, ec] = std::from_chars(b, s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

class BlockParser {
 public:
  std::vector<PcPresentation> run(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t nl = text.find('\n', pos);
      if (nl == std::string_view::npos) nl = text.size();
      ++line_no;
      line(text.substr(pos, nl - pos), line_no);
      pos = nl + 1;
    }
    if (open_) throw ParseError(line_no, 1, "unterminated block for group '" + cur_.name + "' (missing 'end')");
    return std::move(out_);
  }

 private:
  void line(std::string_view raw, std::size_t ln) {
    auto toks = tokenize(raw);
    if (toks.empty()) return;
    auto fail = [&](const Token& t, const std::string& msg) -> void { throw ParseError(ln, t.column, msg); };
    const auto& kw = toks[0];
    if (kw.text == "group") {
      if (open_) fail(kw, "'group' inside an open block");
      if (toks.size() != 2) fail(kw, "expected 'group <name>'");
      cur_ = PcPresentation(std::string(toks[1].text));
      open_ = true;
      have_gens_ = have_orders_ = false;
      seen_pow_.clear();
      return;
    }
    if (!open_) fail(kw, "statement outside a group block");
    if (kw.text == "gens") {
      if (have_gens_) fail(kw, "duplicate 'gens'");
      if (toks.size() != 2) fail(kw, "expected 'gens <n>'");
      auto n = parse_int<int>(toks[1].text);
      if (!n || *n < 0) fail(toks[1], "bad generator count");
      cur_.resize(*n);
      seen_pow_.assign(*n, false);
      have_gens_ = true;
    } else if (kw.text == "orders") {
      if (!have_gens_) fail(kw, "'orders' before 'gens'");
      if (have_orders_) fail(kw, "duplicate 'orders'");
      if (static_cast<int>(toks.size()) - 1 != cur_.rank())
        fail(kw, "expected " + std::to_string(cur_.rank()) + " relative orders");
      for (int i = 0; i < cur_.rank(); ++i) {
        auto e = parse_int<int>(toks[i + 1].text);
        if (!e || *e < 2) fail(toks[i + 1], "relative order must be an integer >= 2");
        cur_.orders[i] = *e;
      }
      have_orders_ = true;
    } else if (kw.text == "pow") {
      need_header(kw, ln);
      if (toks.size() < 4 || toks[2].text != "=") fail(kw, "expected 'pow <i> = <word>'");
      int i = gen_index(toks[1], ln);
      if (seen_pow_[i]) fail(toks[1], "duplicate power relation for g" + std::to_string(i + 1));
      seen_pow_[i] = true;
      cur_.power[i] = word(toks, 3, i, ln);
    } else if (kw.text == "conj") {
      need_header(kw, ln);
      if (toks.size() < 5 || toks[3].text != "=") fail(kw, "expected 'conj <j> <i> = <word>'");
      int j = gen_index(toks[1], ln);
      int i = gen_index(toks[2], ln);
      if (j <= i) fail(toks[1], "conjugate relation needs j > i (got j=" + std::to_string(j + 1) + ", i=" + std::to_string(i + 1) + ")");
      if (cur_.conj[j][i]) fail(toks[1], "duplicate conjugate relation");
      cur_.conj[j][i] = word(toks, 4, i, ln);
    } else if (kw.text == "end") {
      if (toks.size() != 1) fail(toks[1], "unexpected token after 'end'");
      if (!have_gens_) fail(kw, "block without 'gens'");
      if (!have_orders_ && cur_.rank() > 0) fail(kw, "block without 'orders'");
      out_.push_back(std::move(cur_));
      open_ = false;
    } else {
      fail(kw, "unknown keyword '" + std::string(kw.text) + "'");
    }
  }

  void need_header(const Token& t, std::size_t ln) const {
    if (!have_gens_ || !have_orders_) throw ParseError(ln, t.column, "relation before 'gens'/'orders'");
  }

  int gen_index(const Token& t, std::size_t ln) const {
    auto v = parse_int<int>(t.text);
    if (!v || *v < 1 || *v > cur_.rank())
      throw ParseError(ln, t.column, "generator index out of range: '" + std::string(t.text) + "'");
    return *v - 1;
  }

  // Right-hand sides may only involve generators beyond `above`.
  Word word(const std::vector<Token>& toks, std::size_t from, int above, std::size_t ln) const {
    Word w;
    if (toks.size() == from + 1 && toks[from].text == "id") return w;
    int last = above;
    for (std::size_t k = from; k < toks.size(); ++k) {
      const auto& t = toks[k];
      auto fail = [&](const std::string& m) { throw ParseError(ln, t.column, m); };
      if (t.text.size() < 2 || t.text[0] != 'g') fail("expected a token g<k>^<e>, got '" + std::string(t.text) + "'");
      auto caret = t.text.find('^');
      auto gen = parse_int<int>(t.text.substr(1, caret == std::string_view::npos ? std::string_view::npos : caret - 1));
      if (!gen || *gen < 1 || *gen > cur_.rank()) fail("generator index out of range in '" + std::string(t.text) + "'");
      long e = 1;
      if (caret != std::string_view::npos) {
        auto ev = parse_int<long>(t.text.substr(caret + 1));
        if (!ev) fail("bad exponent in '" + std::string(t.text) + "'");
        e = *ev;
      }
      int g = *gen - 1;
      if (g <= last) {
        if (g <= above) fail("generator g" + std::to_string(g + 1) + " not allowed here; right-hand side must use generators after g" + std::to_string(above + 1));
        fail("generator indices must be strictly increasing");
      }
      last = g;
      if (e != 0) w.push_back({g, e});
    }
    return w;
  }

  std::vector<PcPresentation> out_;
  PcPresentation cur_;
  std::vector<bool> seen_pow_;
  bool open_ = false;
  bool have_gens_ = false;
  bool have_orders_ = false;
};

}  // namespace detail

// Parses every `group ... end` block in `text`.
inline std::vector<PcPresentation> parse_presentations(std::string_view text) {
  return detail::BlockParser{}.run(text);
}

inline PcPresentation parse_presentation(std::string_view text) {
  auto all = parse_presentations(text);
  if (all.size() != 1) throw ParseError(1, 1, "expected exactly one group block, found " + std::to_string(all.size()));
  return std::move(all.front());
}

}  // namespace apat
