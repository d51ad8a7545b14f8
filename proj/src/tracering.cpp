#include "sl2cert/tracering.hpp"

#include <mutex>
#include <unordered_map>

#include "sl2cert/errors.hpp"

namespace sl2cert {

namespace {

// Cyclic word over two generators 0 (A) and 1 (B).
using Cyc = std::vector<std::pair<int, long long>>;

void normalize(Cyc& s) {
  bool again = true;
  while (again) {
    again = false;
    Cyc out;
    for (const auto& x : s) {
      if (x.second == 0) {
        again = true;
        continue;
      }
      if (!out.empty() && out.back().first == x.first) {
        out.back().second += x.second;
        if (out.back().second == 0) out.pop_back();
        again = true;
      } else {
        out.push_back(x);
      }
    }
    if (out.size() >= 2 && out.front().first == out.back().first) {
      out.front().second += out.back().second;
      out.pop_back();
      again = true;
    }
    s = std::move(out);
  }
}

std::string encode(const Cyc& s, size_t start) {
  std::string k;
  for (size_t i = 0; i < s.size(); ++i) {
    const auto& x = s[(start + i) % s.size()];
    k += x.first == 0 ? 'A' : 'B';
    k += std::to_string(x.second);
    k += ',';
  }
  return k;
}

// Smallest encoding over rotations of s and of its inverse.
std::string canonical_key(const Cyc& s) {
  Cyc inv(s.rbegin(), s.rend());
  for (auto& x : inv) x.second = -x.second;
  std::string best = encode(s, 0);
  const Cyc* both[] = {&s, &inv};
  for (const Cyc* c : both) {
    for (size_t i = 0; i < c->size(); ++i) {
      std::string k = encode(*c, i);
      if (k < best) best = std::move(k);
    }
  }
  return best;
}

Polynomial chebyshev(long long n, const Polynomial& v) {
  if (n < 0) n = -n;
  Polynomial t0(2);
  if (n == 0) return t0;
  Polynomial t1 = v;
  for (long long i = 1; i < n; ++i) {
    Polynomial t2 = v * t1 - t0;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  return t1;
}

std::mutex memo_mu;
std::unordered_map<std::string, Polynomial>& memo() {
  static std::unordered_map<std::string, Polynomial> m;
  return m;
}

Polynomial trace_cyc(Cyc s) {
  normalize(s);
  if (s.empty()) return Polynomial(2);
  if (s.size() == 1) return chebyshev(s[0].second, Polynomial::variable(s[0].first));
  std::string key = canonical_key(s);
  {
    std::lock_guard<std::mutex> lock(memo_mu);
    auto it = memo().find(key);
    if (it != memo().end()) return it->second;
  }
  Polynomial result;
  size_t i = 0;
  while (i < s.size() && s[i].second == 1) ++i;
  if (i == s.size()) {
    // Alternating A B A B ... with unit exponents: (AB)^k.
    result = chebyshev(static_cast<long long>(s.size() / 2), Polynomial::variable(2));
  } else {
    // Cayley-Hamilton: X^n = tr(X) X^(n-1) - X^(n-2), read in either direction.
    long long n = s[i].second;
    long long d = n >= 2 ? -1 : 1;
    Cyc s1 = s, s2 = s;
    s1[i].second = n + d;
    s2[i].second = n + 2 * d;
    result = Polynomial::variable(s[i].first) * trace_cyc(std::move(s1)) - trace_cyc(std::move(s2));
  }
  std::lock_guard<std::mutex> lock(memo_mu);
  memo().emplace(key, result);
  return result;
}

template <class T, class Mul, class Add>
T evaluate_terms(const Polynomial& tp, const T vals[3], const T& one, Mul mul, Add add) {
  std::vector<T> powers[3];
  for (int v = 0; v < 3; ++v) powers[v].push_back(one);
  T acc = one;
  bool first = true;
  for (const Term& t : tp.terms()) {
    T term = one;
    for (int v = 0; v < 3; ++v) {
      unsigned e = t.mono.exp(v);
      while (powers[v].size() <= e) powers[v].push_back(mul(powers[v].back(), vals[v]));
      if (e != 0) term = mul(term, powers[v][e]);
    }
    T scaled = mul(term, T(t.coef));
    acc = first ? scaled : add(acc, scaled);
    first = false;
  }
  return acc;
}

}  // namespace

const std::vector<std::string>& trace_variable_names() {
  static const std::vector<std::string> names{"p", "q", "r"};
  return names;
}

const std::vector<std::string>& tau_variable_names() {
  static const std::vector<std::string> names{"x", "z"};
  return names;
}

TracePolynomial trace_of_word(const Word& w, Symbol a, Symbol b) {
  Cyc s;
  for (const Syllable& x : w.syllables()) {
    if (x.gen == a) {
      s.emplace_back(0, x.exp);
    } else if (x.gen == b) {
      s.emplace_back(1, x.exp);
    } else {
      throw WrongAlphabet("letter '" + symbol_name(x.gen) + "' is not one of the two trace generators");
    }
  }
  return trace_cyc(std::move(s));
}

FieldElement substitute_traces(const TracePolynomial& tp, const FieldElement& p0, const FieldElement& q0,
                               const FieldElement& r0) {
  require_same_tower(p0.tower(), q0.tower());
  require_same_tower(p0.tower(), r0.tower());
  if (tp.is_zero()) return FieldElement(p0.tower());
  std::vector<FieldElement> powers[3];
  const FieldElement* vals[3] = {&p0, &q0, &r0};
  FieldElement one(p0.tower(), Integer(1));
  for (auto& p : powers) p.push_back(one);
  FieldElement acc(p0.tower());
  for (const Term& t : tp.terms()) {
    FieldElement term(p0.tower(), t.coef);
    for (int v = 0; v < 3; ++v) {
      unsigned e = t.mono.exp(v);
      while (powers[v].size() <= e) powers[v].push_back(powers[v].back() * *vals[v]);
      if (e != 0) term *= powers[v][e];
    }
    acc += term;
  }
  return acc;
}

Polynomial substitute_traces(const TracePolynomial& tp, const Polynomial& p0, const Polynomial& q0,
                             const Polynomial& r0) {
  const Polynomial vals[3] = {p0, q0, r0};
  if (tp.is_zero()) return Polynomial();
  return evaluate_terms<Polynomial>(
      tp, vals, Polynomial(1), [](const Polynomial& x, const Polynomial& y) { return x * y; },
      [](const Polynomial& x, const Polynomial& y) { return x + y; });
}

Word figure8_longitude_word() { return Word::parse("B*A^-1*B^-1*A^2*B^-1*A^-1*B"); }

Word figure8_relator_word() { return Word::parse("B^-1*A^-1*B*A*B^-1*A*B*A^-1*B^-1*A"); }

TauLongitude tau_longitude() {
  Polynomial x = Polynomial::variable(0);
  Polynomial z = Polynomial::variable(1);
  TauLongitude out;
  out.raw = substitute_traces(trace_of_word(figure8_longitude_word()), x, x, z);
  out.reduced = out.raw.reduce_monic_quadratic(1, Polynomial(1) + x * x, Polynomial(1) - x * x * Polynomial(2));
  return out;
}

}  // namespace sl2cert
