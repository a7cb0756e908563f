#include "parshin/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace parshin {

Polynomial::Polynomial(VarList vars, const ExactScalar& c) : vars_(std::move(vars)) {
  if (!c.is_zero()) terms_[Exponents(vars_.size(), 0)] = c;
}

Polynomial Polynomial::variable(const VarList& vars, const std::string& name) {
  Polynomial p(vars);
  Exponents e(vars.size(), 0);
  auto it = std::find(vars.begin(), vars.end(), name);
  if (it == vars.end()) throw exact_error("unknown variable: " + name);
  e[it - vars.begin()] = 1;
  p.terms_[e] = ExactScalar(1);
  return p;
}

int Polynomial::var_index(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end()) throw exact_error("unknown variable: " + name);
  return int(it - vars_.begin());
}

bool Polynomial::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 &&
         terms_.begin()->first == Exponents(vars_.size(), 0);
}

ExactScalar Polynomial::constant_term() const {
  auto it = terms_.find(Exponents(vars_.size(), 0));
  return it == terms_.end() ? ExactScalar(0) : it->second;
}

void Polynomial::add_term(const Exponents& e, const ExactScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int Polynomial::degree_in(const std::string& var) const {
  int v = var_index(var), d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[v]);
  return d;
}

int Polynomial::total_degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int k : e) s += k;
    d = std::max(d, s);
  }
  return d;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(vars_);
  for (const auto& [e, c] : terms_) r.terms_[e] = -c;
  return r;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  if (a.vars_ != b.vars_) throw exact_error("variable-list mismatch");
  Polynomial r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, c);
  return r;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  return a + (-b);
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.vars_ != b.vars_) throw exact_error("variable-list mismatch");
  Polynomial r(a.vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e = ea;
      for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Polynomial Polynomial::operator*(const ExactScalar& c) const {
  Polynomial r(vars_);
  if (c.is_zero()) return r;
  for (const auto& [e, k] : terms_) r.terms_[e] = k * c;
  return r;
}

Polynomial Polynomial::partial(const std::string& var) const {
  int v = var_index(var);
  Polynomial r(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[v] == 0) continue;
    Exponents d = e;
    d[v] -= 1;
    r.add_term(d, c * ExactScalar(e[v]));
  }
  return r;
}

ExactScalar Polynomial::eval(std::span<const ExactScalar> point) const {
  return eval_with<ExactScalar>(point, [](const ExactScalar& c) { return c; });
}

std::complex<double> Polynomial::eval(std::span<const std::complex<double>> point) const {
  std::complex<double> acc = 0.0;
  for (const auto& [e, c] : terms_) {
    std::complex<double> t = c.to_complex();
    for (size_t v = 0; v < e.size(); ++v) {
      for (int k = 0; k < e[v]; ++k) t *= point[v];
    }
    acc += t;
  }
  return acc;
}

ExactScalar Polynomial::remove_content() {
  if (terms_.empty()) return ExactScalar(1);
  bool all_real = true;
  for (const auto& [e, c] : terms_) {
    if (!c.is_real()) { all_real = false; break; }
  }
  ExactScalar content;
  if (all_real) {
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const auto& [e, c] : terms_) {
      mpz_class num = c.real().get_num(), den = c.real().get_den();
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), num.get_mpz_t());
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), den.get_mpz_t());
    }
    mpq_class q(num_gcd, den_lcm);
    q.canonicalize();
    if (terms_.rbegin()->second.real() < 0) q = -q;
    content = ExactScalar(q);
  } else {
    // Gaussian coefficients: normalize by the leading coefficient.
    content = terms_.rbegin()->second;
  }
  for (auto& [e, c] : terms_) c /= content;
  return content;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // highest-degree terms first
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string cs = c.str();
    if (!first) os << " + ";
    bool unit = c.is_one();
    bool has_var = std::any_of(e.begin(), e.end(), [](int k) { return k > 0; });
    if (!unit || !has_var) {
      if (cs.find('+') != std::string::npos ||
          (cs.find('-') != std::string::npos && cs.rfind('-') > 0))
        os << "(" << cs << ")";
      else
        os << cs;
      if (has_var) os << "*";
    }
    bool first_var = true;
    for (size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      if (!first_var) os << "*";
      os << vars_[v];
      if (e[v] > 1) os << "^" << e[v];
      first_var = false;
    }
    first = false;
  }
  return os.str();
}

}  // namespace parshin
