#pragma once

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "invchar/fan.hpp"
#include "invchar/flag.hpp"
#include "invchar/morse.hpp"
#include "invchar/polytope.hpp"
#include "invchar/rational_function.hpp"
#include "invchar/toric_trace.hpp"

// Line-oriented text formats. '#' starts a comment; blank lines are ignored.
namespace invchar::io {

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// FNV-1a, used to fingerprint input files in reports.
inline std::uint64_t fingerprint(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace detail {

inline std::vector<std::string> content_lines(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(first, last - first + 1));
  }
  return out;
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline Vec parse_row(const std::string& line, std::size_t expected, const char* what) {
  Vec v;
  for (const auto& tok : split_ws(line)) v.push_back(parse_rational(tok));
  if (v.size() != expected)
    throw Error(ErrorKind::Parse, std::string(what) + " row '" + line + "' has " + std::to_string(v.size()) +
                                      " entries, expected " + std::to_string(expected));
  return v;
}

inline std::size_t parse_header(const std::string& line, std::string_view keyword) {
  auto toks = split_ws(line);
  if (toks.size() != 2 || toks[0] != keyword)
    throw Error(ErrorKind::Parse, "expected '" + std::string(keyword) + " <n>', got '" + line + "'");
  try {
    long v = std::stol(toks[1]);
    if (v < 0) throw std::invalid_argument("negative");
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, "bad dimension in '" + line + "'");
  }
}

inline int parse_int(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, std::string("bad ") + what + " '" + s + "'");
  }
}

// Sum of terms like "3", "-t", "1/2t^4", "2*t^3".
inline Poly parse_poly_terms(std::string_view s) {
  std::string text;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) text += c;
  if (text.empty()) throw Error(ErrorKind::Parse, "empty polynomial");
  Poly out;
  std::size_t pos = 0;
  auto digits = [&]() {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    return text.substr(start, pos - start);
  };
  while (pos < text.size()) {
    int sgn = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sgn = text[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      throw Error(ErrorKind::Parse, "expected '+' or '-' in polynomial '" + text + "'");
    }
    std::string coef = digits();
    if (!coef.empty() && pos < text.size() && text[pos] == '/') {
      ++pos;
      std::string den = digits();
      if (den.empty()) throw Error(ErrorKind::Parse, "bad coefficient in '" + text + "'");
      coef += "/" + den;
    }
    if (pos < text.size() && text[pos] == '*') {
      if (coef.empty()) throw Error(ErrorKind::Parse, "dangling '*' in '" + text + "'");
      ++pos;
    }
    std::size_t degree = 0;
    bool has_t = false;
    if (pos < text.size() && text[pos] == 't') {
      has_t = true;
      ++pos;
      degree = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        std::string e = digits();
        if (e.empty()) throw Error(ErrorKind::Parse, "bad exponent in '" + text + "'");
        degree = static_cast<std::size_t>(std::stoul(e));
      }
    }
    if (coef.empty() && !has_t) throw Error(ErrorKind::Parse, "bad term in polynomial '" + text + "'");
    Rational c = coef.empty() ? Rational(1) : parse_rational(coef);
    out += Poly::monomial(c * sgn, degree);
  }
  return out;
}

// "[c0,c1,...]" coefficient list.
inline Poly parse_coeff_list(std::string_view s) {
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw Error(ErrorKind::Parse, "bad coefficient list");
  std::vector<Rational> c;
  std::string body(s.substr(1, s.size() - 2));
  std::istringstream in(body);
  std::string tok;
  while (std::getline(in, tok, ','))
    if (!tok.empty()) c.push_back(parse_rational(tok));
  return Poly(std::move(c));
}

// Product of factors "(expr)", "[list]", each optionally raised "^k".
inline Poly parse_product(std::string_view s) {
  Poly out = Poly::one();
  std::size_t pos = 0;
  bool any = false;
  while (pos < s.size()) {
    const char open = s[pos];
    const char close = open == '(' ? ')' : open == '[' ? ']' : '\0';
    if (!close) throw Error(ErrorKind::Parse, "expected '(' or '[' in '" + std::string(s) + "'");
    const auto end = s.find(close, pos);
    if (end == std::string_view::npos) throw Error(ErrorKind::Parse, "unbalanced brackets in '" + std::string(s) + "'");
    Poly factor = open == '(' ? parse_poly_terms(s.substr(pos + 1, end - pos - 1)) : parse_coeff_list(s.substr(pos, end - pos + 1));
    pos = end + 1;
    unsigned power = 1;
    if (pos < s.size() && s[pos] == '^') {
      const auto start = ++pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos == start) throw Error(ErrorKind::Parse, "bad exponent in '" + std::string(s) + "'");
      power = static_cast<unsigned>(std::stoul(std::string(s.substr(start, pos - start))));
    }
    out *= factor.pow(power);
    any = true;
  }
  if (!any) throw Error(ErrorKind::Parse, "empty expression");
  return out;
}

}  // namespace detail

/// Polynomial literal: "[1,0,-1]", "(1-t^2)^2", or bare terms "1 - t^2".
inline Poly parse_poly(std::string_view s) {
  if (!s.empty() && (s.front() == '(' || s.front() == '[')) return detail::parse_product(s);
  return detail::parse_poly_terms(s);
}

/// "NUM/DEN" with bracketed or parenthesized factors, or a polynomial.
inline RationalFunction parse_rational_function(std::string_view s) {
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(' || s[i] == '[') ++depth;
    if (s[i] == ')' || s[i] == ']') --depth;
    if (s[i] == '/' && depth == 0) return RationalFunction(parse_poly(s.substr(0, i)), parse_poly(s.substr(i + 1)));
  }
  return RationalFunction(parse_poly(s));
}

/// "dim n", then facets "a_1 ... a_n | b" meaning <a, y> <= b.
inline HPolytope parse_polytope(std::string_view text) {
  auto lines = detail::content_lines(text);
  if (lines.empty()) throw Error(ErrorKind::Parse, "empty polytope file");
  const std::size_t n = detail::parse_header(lines[0], "dim");
  std::vector<Facet> facets;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto bar = lines[i].find('|');
    if (bar == std::string::npos) throw Error(ErrorKind::Parse, "facet line '" + lines[i] + "' lacks '|'");
    Vec normal = detail::parse_row(lines[i].substr(0, bar), n, "facet");
    Vec offset = detail::parse_row(lines[i].substr(bar + 1), 1, "offset");
    facets.push_back(Facet{std::move(normal), offset[0]});
  }
  return HPolytope::make(n, std::move(facets));
}

inline std::string format_polytope(const HPolytope& p) {
  std::string s = "dim " + std::to_string(p.dim()) + "\n";
  for (const auto& f : p.facets()) {
    for (const auto& x : f.normal) s += x.str() + " ";
    s += "| " + f.offset.str() + "\n";
  }
  return s;
}

/// n rows of L, then one row c, for y -> L y + c.
inline AffineInvolution parse_involution(std::string_view text, std::size_t n) {
  auto lines = detail::content_lines(text);
  if (lines.size() != n + 1)
    throw Error(ErrorKind::Parse, "involution file needs " + std::to_string(n + 1) + " rows, got " + std::to_string(lines.size()));
  AffineInvolution inv;
  for (std::size_t i = 0; i < n; ++i) inv.linear.push_back(detail::parse_row(lines[i], n, "involution"));
  inv.translation = detail::parse_row(lines[n], n, "translation");
  return inv;
}

inline std::string format_involution(const AffineInvolution& inv) {
  std::string s;
  for (const auto& row : inv.linear) {
    for (std::size_t j = 0; j < row.size(); ++j) s += (j ? " " : "") + row[j].str();
    s += "\n";
  }
  for (std::size_t j = 0; j < inv.translation.size(); ++j) s += (j ? " " : "") + inv.translation[j].str();
  return s + "\n";
}

/// k' rows of the projection onto the subtorus.
inline SubtorusSpec parse_subtorus(std::string_view text, std::size_t n) {
  SubtorusSpec sub;
  for (const auto& line : detail::content_lines(text)) sub.projection.push_back(detail::parse_row(line, n, "subtorus"));
  if (sub.projection.empty()) throw Error(ErrorKind::Parse, "subtorus file has no rows");
  return sub;
}

/// "rank n", ray lines "v_1 ... v_n", cone lines "c: i_1 ... i_n" (0-based).
inline SimplicialFan parse_fan(std::string_view text) {
  auto lines = detail::content_lines(text);
  if (lines.empty()) throw Error(ErrorKind::Parse, "empty fan file");
  SimplicialFan fan;
  fan.rank = detail::parse_header(lines[0], "rank");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].rfind("c:", 0) == 0) {
      std::vector<std::size_t> cone;
      for (const auto& tok : detail::split_ws(lines[i].substr(2))) {
        const int idx = detail::parse_int(tok, "ray index");
        if (idx < 0) throw Error(ErrorKind::Parse, "negative ray index");
        cone.push_back(static_cast<std::size_t>(idx));
      }
      std::sort(cone.begin(), cone.end());
      fan.cones.push_back(std::move(cone));
    } else {
      fan.rays.push_back(detail::parse_row(lines[i], fan.rank, "ray"));
    }
  }
  fan.validate();
  return fan;
}

inline std::string format_fan(const SimplicialFan& fan) {
  std::string s = "rank " + std::to_string(fan.rank) + "\n";
  for (const auto& r : fan.rays) {
    for (std::size_t j = 0; j < r.size(); ++j) s += (j ? " " : "") + r[j].str();
    s += "\n";
  }
  for (const auto& c : fan.cones) {
    s += "c:";
    for (auto i : c) s += " " + std::to_string(i);
    s += "\n";
  }
  return s;
}

/// n integer rows of the lattice involution ψ.
inline Matrix parse_matrix(std::string_view text, std::size_t n) {
  auto lines = detail::content_lines(text);
  if (lines.size() != n) throw Error(ErrorKind::Parse, "matrix file needs " + std::to_string(n) + " rows");
  Matrix m;
  for (const auto& line : lines) m.push_back(detail::parse_row(line, n, "matrix"));
  return m;
}

/// Lines "deg h+ h-"; unspecified degrees are zero.
inline SignedBettiTable parse_betti_table(std::string_view text) {
  std::map<int, SignedBettiTable::Entry> rows;
  for (const auto& line : detail::content_lines(text)) {
    auto toks = detail::split_ws(line);
    if (toks.size() != 3) throw Error(ErrorKind::Parse, "Betti line '" + line + "' needs 'deg h+ h-'");
    const int deg = detail::parse_int(toks[0], "degree");
    const int plus = detail::parse_int(toks[1], "h+");
    const int minus = detail::parse_int(toks[2], "h-");
    if (deg < 0 || plus < 0 || minus < 0) throw Error(ErrorKind::Parse, "negative entry in '" + line + "'");
    if (!rows.emplace(deg, SignedBettiTable::Entry{plus, minus}).second)
      throw Error(ErrorKind::Parse, "degree " + std::to_string(deg) + " listed twice");
  }
  if (rows.empty()) throw Error(ErrorKind::Parse, "empty Betti table");
  SignedBettiTable t;
  t.entries.assign(static_cast<std::size_t>(rows.rbegin()->first) + 1, {});
  for (const auto& [deg, e] : rows) t.entries[deg] = e;
  return t;
}

inline std::string format_betti_table(const SignedBettiTable& t) {
  std::string s;
  for (std::size_t i = 0; i < t.entries.size(); ++i)
    s += std::to_string(i) + " " + std::to_string(t.entries[i].plus) + " " + std::to_string(t.entries[i].minus) + "\n";
  return s;
}

/// "comp <id> index=<2m> stab_rank=<r> series=<num>/<den> pair=<id'>" and
/// one "zero table=<path>" line; the path is relative to `base_dir`. A
/// component without series= gets the orbit series 1/(1-t^2)^{stab_rank}.
inline CriticalData parse_critical_data(std::string_view text, const std::filesystem::path& base_dir) {
  CriticalData data;
  bool have_zero = false;
  for (const auto& line : detail::content_lines(text)) {
    auto toks = detail::split_ws(line);
    std::map<std::string, std::string> kv;
    for (std::size_t i = (toks[0] == "comp" ? 2 : 1); i < toks.size(); ++i) {
      const auto eq = toks[i].find('=');
      if (eq == std::string::npos) throw Error(ErrorKind::Parse, "expected key=value, got '" + toks[i] + "'");
      kv[toks[i].substr(0, eq)] = toks[i].substr(eq + 1);
    }
    if (toks[0] == "zero") {
      if (have_zero) throw Error(ErrorKind::Parse, "more than one zero-level line");
      if (!kv.count("table")) throw Error(ErrorKind::Parse, "zero-level line needs table=<path>");
      data.zero.table = parse_betti_table(read_file(base_dir / kv["table"]));
      have_zero = true;
    } else if (toks[0] == "comp") {
      if (toks.size() < 2) throw Error(ErrorKind::Parse, "component line lacks an id");
      CriticalComponentRecord c;
      c.id = toks[1];
      if (!kv.count("index")) throw Error(ErrorKind::Parse, "component " + c.id + " lacks index=");
      c.index = detail::parse_int(kv["index"], "index");
      c.stab_rank = kv.count("stab_rank") ? detail::parse_int(kv["stab_rank"], "stab_rank") : 0;
      if (c.stab_rank < 0) throw Error(ErrorKind::Parse, "negative stab_rank");
      c.t_series = kv.count("series") ? parse_rational_function(kv["series"])
                                      : RationalFunction(Poly::one(), Poly::binomial_term(-1, 2).pow(static_cast<unsigned>(c.stab_rank)));
      if (kv.count("pair")) c.paired_with = kv["pair"];
      data.components.push_back(std::move(c));
    } else {
      throw Error(ErrorKind::Parse, "unknown record '" + toks[0] + "'");
    }
  }
  if (!have_zero) throw Error(ErrorKind::Parse, "critical-data file lacks a zero-level line");
  return data;
}

/// Lines "n <n>", "spectrum <r_1> ... <r_n>", "weights <w_1> ... <w_n>";
/// omitted lists take the defaults of FlagSpec::standard.
inline flag::FlagSpec parse_flag_spec(std::string_view text) {
  std::optional<int> n;
  std::vector<Rational> spectrum, weights;
  for (const auto& line : detail::content_lines(text)) {
    auto toks = detail::split_ws(line);
    if (toks[0] == "n" && toks.size() == 2) {
      n = detail::parse_int(toks[1], "n");
    } else if (toks[0] == "spectrum" || toks[0] == "weights") {
      auto& dst = toks[0] == "spectrum" ? spectrum : weights;
      for (std::size_t i = 1; i < toks.size(); ++i) dst.push_back(parse_rational(toks[i]));
    } else {
      throw Error(ErrorKind::Parse, "unknown flag spec line '" + line + "'");
    }
  }
  if (!n) throw Error(ErrorKind::Parse, "flag spec lacks 'n <n>'");
  if (*n < 2) throw Error(ErrorKind::InvalidInput, "flag variety needs n >= 2, got " + std::to_string(*n));
  flag::FlagSpec spec = flag::FlagSpec::standard(*n);
  if (!spectrum.empty()) spec.spectrum = std::move(spectrum);
  if (!weights.empty()) spec.weights = std::move(weights);
  spec.validate();
  return spec;
}

}  // namespace invchar::io
