#include "parshin/deck.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "parshin/expr_parse.hpp"

namespace parshin {
namespace {

struct Entry {
  std::string section;
  std::string key;
  std::string value;
  size_t offset = 0;  // byte offset of the value within the deck text
};

std::string trim(const std::string& s, size_t* lead = nullptr) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  if (lead) *lead = a;
  return s.substr(a, b - a);
}

std::vector<std::pair<std::string, size_t>> split_list(const std::string& s,
                                                       char sep, size_t base) {
  std::vector<std::pair<std::string, size_t>> out;
  size_t start = 0;
  for (size_t k = 0; k <= s.size(); ++k) {
    if (k == s.size() || s[k] == sep) {
      std::string piece = s.substr(start, k - start);
      size_t lead = 0;
      std::string t = trim(piece, &lead);
      out.emplace_back(t, base + start + lead);
      start = k + 1;
    }
  }
  return out;
}

std::vector<Entry> tokenize(const std::string& text) {
  static const std::vector<std::string> kSections = {
      "ambient", "variety", "flag", "parameters", "form", "candidates", "numeric"};
  std::vector<Entry> out;
  std::string section;
  size_t line_start = 0;
  while (line_start <= text.size()) {
    size_t eol = text.find('\n', line_start);
    if (eol == std::string::npos) eol = text.size();
    std::string line = text.substr(line_start, eol - line_start);
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    size_t lead = 0;
    std::string body = trim(line, &lead);
    if (!body.empty()) {
      if (body.front() == '[') {
        if (body.back() != ']')
          throw deck_error("unterminated section header", line_start + lead);
        section = body.substr(1, body.size() - 2);
        bool known = false;
        for (const auto& s : kSections) known = known || s == section;
        if (!known)
          throw deck_error("unknown section [" + section + "]", line_start + lead);
      } else {
        size_t eq = body.find('=');
        if (eq == std::string::npos)
          throw deck_error("expected 'key = value'", line_start + lead);
        if (section.empty())
          throw deck_error("entry before any section header", line_start + lead);
        size_t vlead = 0;
        std::string value = trim(body.substr(eq + 1), &vlead);
        Entry e;
        e.section = section;
        e.key = trim(body.substr(0, eq));
        e.value = value;
        e.offset = line_start + lead + eq + 1 + vlead;
        out.push_back(std::move(e));
      }
    }
    line_start = eol + 1;
  }
  return out;
}

RationalFunction parse_expr(const std::string& text, const VarList& vars, size_t off) {
  try {
    return parse_rational(text, vars);
  } catch (const parse_error& e) {
    throw deck_error(e.what(), off + e.offset);
  }
}

ExactScalar parse_const(const std::string& text, const VarList& vars, size_t off) {
  RationalFunction r = parse_expr(text, vars, off);
  if (!r.is_constant()) throw deck_error("expected a constant", off);
  return r.constant_value();
}

int parse_diff_index(const std::string& tok, const VarList& vars, size_t off) {
  if (tok.size() < 2 || tok[0] != 'd')
    throw deck_error("expected a differential like dx", off);
  std::string name = tok.substr(1);
  for (size_t v = 0; v < vars.size(); ++v)
    if (vars[v] == name) return int(v);
  throw deck_error("differential of undeclared variable '" + name + "'", off);
}

double parse_double(const std::string& s, size_t off) {
  try {
    size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw deck_error("bad numeric literal '" + s + "'", off);
  }
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ProblemDeck parse_deck(const std::string& text) {
  std::vector<Entry> entries = tokenize(text);
  ProblemDeck deck;
  FlagProblem& p = deck.problem;

  // ambient first: everything else parses against the declared variables
  bool have_n = false, have_vars = false;
  for (const auto& e : entries) {
    if (e.section != "ambient") continue;
    if (e.key == "n") {
      p.n = int(parse_double(e.value, e.offset));
      if (p.n != 1 && p.n != 2) throw deck_error("n must be 1 or 2", e.offset);
      have_n = true;
    } else if (e.key == "vars") {
      for (auto& [name, off] : split_list(e.value, ',', e.offset)) {
        if (name.empty()) throw deck_error("empty variable name", off);
        for (char c : name)
          if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            throw deck_error("bad variable name '" + name + "'", off);
        p.vars.push_back(name);
      }
      have_vars = true;
    } else {
      throw deck_error("unknown key '" + e.key + "' in [ambient]", e.offset);
    }
  }
  if (!have_n || !have_vars)
    throw deck_error("[ambient] must declare n and vars", 0);
  p.surface = Polynomial(p.vars);

  VarList tvars = {p.curve_param};
  for (const auto& e : entries) {
    if (e.section == "flag" && e.key == "param") {
      p.curve_param = e.value;
      tvars = {p.curve_param};
    }
  }

  for (const auto& e : entries) {
    if (e.section == "ambient") continue;
    if (e.section == "variety") {
      if (e.key != "surface")
        throw deck_error("unknown key '" + e.key + "' in [variety]", e.offset);
      RationalFunction r = parse_expr(e.value, p.vars, e.offset);
      if (!r.den().is_constant())
        throw deck_error("surface must be a polynomial", e.offset);
      p.surface = r.num() * (ExactScalar(1) / r.den().constant_term());
    } else if (e.section == "flag") {
      if (e.key == "param") {
        // handled above
      } else if (e.key == "curve") {
        for (auto& [comp, off] : split_list(e.value, ',', e.offset))
          p.curve.push_back(parse_expr(comp, tvars, off));
      } else if (e.key == "point") {
        for (auto& [comp, off] : split_list(e.value, ',', e.offset))
          p.point.push_back(parse_const(comp, p.vars, off));
      } else {
        throw deck_error("unknown key '" + e.key + "' in [flag]", e.offset);
      }
    } else if (e.section == "parameters") {
      if (e.key != "u1" && e.key != "u2")
        throw deck_error("unknown key '" + e.key + "' in [parameters]", e.offset);
      size_t idx = e.key == "u1" ? 0 : 1;
      if (p.params.size() <= idx) p.params.resize(idx + 1, RationalFunction(p.vars, ExactScalar(0)));
      p.params[idx] = parse_expr(e.value, p.vars, e.offset);
    } else if (e.section == "form") {
      if (e.key != "term")
        throw deck_error("unknown key '" + e.key + "' in [form]", e.offset);
      auto fields = split_list(e.value, ':', e.offset);
      if (fields.size() != 2)
        throw deck_error("expected 'term = <expr> : <differentials>'", e.offset);
      FormTerm term;
      term.coeff = parse_expr(fields[0].first, p.vars, fields[0].second);
      for (auto& [tok, off] : split_list(fields[1].first, '^', fields[1].second))
        term.diffs.push_back(parse_diff_index(tok, p.vars, off));
      p.form.terms.push_back(std::move(term));
    } else if (e.section == "candidates") {
      if (e.key != "candidate")
        throw deck_error("unknown key '" + e.key + "' in [candidates]", e.offset);
      auto fields = split_list(e.value, ':', e.offset);
      Candidate c;
      c.name = fields[0].first;
      if (c.name.empty()) throw deck_error("candidate needs a name", e.offset);
      if (p.n == 2) {
        if (fields.size() != 4)
          throw deck_error("expected 'candidate = <name> : <curve> : <u1> : <u2>'",
                           e.offset);
        for (auto& [comp, off] : split_list(fields[1].first, ',', fields[1].second))
          c.curve.push_back(parse_expr(comp, tvars, off));
        c.params.push_back(parse_expr(fields[2].first, p.vars, fields[2].second));
        c.params.push_back(parse_expr(fields[3].first, p.vars, fields[3].second));
      } else {
        if (fields.size() != 2)
          throw deck_error("expected 'candidate = <name> : <point or inf>'", e.offset);
        if (fields[1].first == "inf")
          c.at_infinity = true;
        else
          c.point.push_back(parse_const(fields[1].first, p.vars, fields[1].second));
      }
      deck.candidates.push_back(std::move(c));
    } else if (e.section == "numeric") {
      if (e.key == "delta1")
        deck.numeric.delta1 = parse_double(e.value, e.offset);
      else if (e.key == "delta2")
        deck.numeric.delta2 = parse_double(e.value, e.offset);
      else if (e.key == "grid")
        deck.numeric.grid = int(parse_double(e.value, e.offset));
      else if (e.key == "tol")
        deck.numeric.tol = parse_double(e.value, e.offset);
      else if (e.key == "engine") {
        if (e.value != "symbolic" && e.value != "numeric" && e.value != "both")
          throw deck_error("engine must be symbolic, numeric, or both", e.offset);
        deck.numeric.engine = e.value;
      } else {
        throw deck_error("unknown key '" + e.key + "' in [numeric]", e.offset);
      }
    }
  }

  if (int(p.point.size()) != p.ambient_dim())
    throw deck_error("[flag] point must list one constant per ambient variable", 0);
  if (int(p.params.size()) != p.n)
    throw deck_error("[parameters] must define u1..u" + std::to_string(p.n), 0);
  if (p.form.terms.empty()) throw deck_error("[form] must define at least one term", 0);
  return deck;
}

ProblemDeck load_deck(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw deck_error("cannot open deck file '" + path + "'", 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_deck(buf.str());
}

std::string serialize_deck(const ProblemDeck& deck) {
  const FlagProblem& p = deck.problem;
  std::ostringstream os;
  os << "[ambient]\n";
  os << "n = " << p.n << "\n";
  os << "vars = ";
  for (size_t v = 0; v < p.vars.size(); ++v)
    os << (v ? ", " : "") << p.vars[v];
  os << "\n";
  if (!p.full_ambient()) os << "\n[variety]\nsurface = " << p.surface.str() << "\n";
  os << "\n[flag]\n";
  if (p.curve_param != "t") os << "param = " << p.curve_param << "\n";
  if (!p.curve.empty()) {
    os << "curve = ";
    for (size_t v = 0; v < p.curve.size(); ++v)
      os << (v ? ", " : "") << p.curve[v].str();
    os << "\n";
  }
  os << "point = ";
  for (size_t v = 0; v < p.point.size(); ++v)
    os << (v ? ", " : "") << p.point[v].str();
  os << "\n";
  os << "\n[parameters]\n";
  for (size_t k = 0; k < p.params.size(); ++k)
    os << "u" << (k + 1) << " = " << p.params[k].str() << "\n";
  os << "\n[form]\n";
  for (const auto& term : p.form.terms) {
    os << "term = " << term.coeff.str() << " : ";
    for (size_t k = 0; k < term.diffs.size(); ++k)
      os << (k ? "^" : "") << "d" << p.vars[size_t(term.diffs[k])];
    os << "\n";
  }
  if (!deck.candidates.empty()) {
    os << "\n[candidates]\n";
    for (const auto& c : deck.candidates) {
      os << "candidate = " << c.name << " : ";
      if (p.n == 2) {
        for (size_t v = 0; v < c.curve.size(); ++v)
          os << (v ? ", " : "") << c.curve[v].str();
        os << " : " << c.params[0].str() << " : " << c.params[1].str();
      } else if (c.at_infinity) {
        os << "inf";
      } else {
        os << c.point[0].str();
      }
      os << "\n";
    }
  }
  os << "\n[numeric]\n";
  os << "delta1 = " << fmt17(deck.numeric.delta1) << "\n";
  os << "delta2 = " << fmt17(deck.numeric.delta2) << "\n";
  os << "grid = " << deck.numeric.grid << "\n";
  os << "tol = " << fmt17(deck.numeric.tol) << "\n";
  os << "engine = " << deck.numeric.engine << "\n";
  return os.str();
}

FlagProblem candidate_problem(const ProblemDeck& deck, const Candidate& c) {
  FlagProblem p = deck.problem;
  if (p.n == 2) {
    p.curve = c.curve;
    p.params = c.params;
    return p;
  }
  if (!p.full_ambient())
    throw flag_error("n = 1 candidates are supported on the affine line only");
  if (c.at_infinity) {
    // chart substitution t -> 1/t: omega = R(t) dt becomes -R(1/t)/t^2 dt
    RationalFunction tvar = RationalFunction::variable(p.vars, p.vars[0]);
    RationalFunction inv = RationalFunction(p.vars, ExactScalar(1)) / tvar;
    std::vector<RationalFunction> coords{inv};
    auto embed = [&](const ExactScalar& s) { return RationalFunction(p.vars, s); };
    for (auto& term : p.form.terms) {
      RationalFunction num = term.coeff.num().eval_with<RationalFunction>(coords, embed);
      RationalFunction den = term.coeff.den().eval_with<RationalFunction>(coords, embed);
      term.coeff = -(num / den) * inv * inv;
    }
    p.point = {ExactScalar(0)};
    p.params = {tvar};
    return p;
  }
  p.point = {c.point[0]};
  RationalFunction tvar = RationalFunction::variable(p.vars, p.vars[0]);
  p.params = {tvar - RationalFunction(p.vars, c.point[0])};
  return p;
}

}  // namespace parshin
