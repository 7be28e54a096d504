/*
 * Copyright 2026 The Samelson Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SAMELSON_POLYNOMIAL_HPP
#define SAMELSON_POLYNOMIAL_HPP

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "samelson/fp.hpp"
#include "samelson/ring.hpp"

namespace samelson {

struct Term {
  Monomial mono;
  Residue coeff;
};

/// Result of coh_degree: a common degree, the zero marker, or "mixed".
struct CohDegree {
  enum class Kind { Zero, Homogeneous, Mixed };
  Kind kind = Kind::Zero;
  int degree = 0;

  bool is_zero() const { return kind == Kind::Zero; }
  bool is_homogeneous() const { return kind == Kind::Homogeneous; }
  bool is_mixed() const { return kind == Kind::Mixed; }
  friend bool operator==(const CohDegree&, const CohDegree&) = default;
};

/// Sparse polynomial over a RingSpec.  Terms are kept sorted descending in
/// the ring's monomial order, each monomial at most once, no zero
/// coefficients; two polynomials over the same ring are equal iff their
/// term vectors are equal.
class Polynomial {
 public:
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial constant(const RingPtr& ring, Residue c) {
    Polynomial f(ring);
    c %= ring->prime();
    if (c != 0) f.terms_.push_back({Monomial{}, c});
    return f;
  }

  static Polynomial monomial(const RingPtr& ring, Monomial m, Residue c = 1) {
    Polynomial f(ring);
    c %= ring->prime();
    if (c != 0) f.terms_.push_back({m, c});
    return f;
  }

  static Polynomial variable(const RingPtr& ring, std::size_t index, unsigned exponent = 1) {
    if (index >= ring->size()) throw StructuralError("variable index out of range");
    return monomial(ring, Monomial::variable(index, exponent));
  }

  static Polynomial variable(const RingPtr& ring, std::string_view name, unsigned exponent = 1) {
    auto idx = ring->index_of(name);
    if (!idx) throw StructuralError("ring has no variable named " + std::string(name));
    return variable(ring, *idx, exponent);
  }

  /// Builds a canonical polynomial from arbitrary (possibly repeated,
  /// unsorted, zero) terms.
  static Polynomial from_terms(const RingPtr& ring, std::vector<Term> terms) {
    Polynomial f(ring);
    const Residue p = ring->prime();
    std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
      return ring->compare(a.mono, b.mono) > 0;
    });
    for (const auto& t : terms) {
      Residue c = t.coeff % p;
      if (!f.terms_.empty() && f.terms_.back().mono == t.mono) {
        f.terms_.back().coeff = fp_add(f.terms_.back().coeff, c, p);
        if (f.terms_.back().coeff == 0) f.terms_.pop_back();
      } else if (c != 0) {
        f.terms_.push_back({t.mono, c});
      }
    }
    return f;
  }

  const RingPtr& ring() const { return ring_; }
  Residue prime() const { return ring_->prime(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  const Term& leading() const { return terms_.front(); }

  Residue coefficient(Monomial m) const {
    for (const auto& t : terms_)
      if (t.mono == m) return t.coeff;
    return 0;
  }

  CohDegree coh_degree() const {
    if (terms_.empty()) return {};
    int d = ring_->degree(terms_.front().mono);
    for (const auto& t : terms_)
      if (ring_->degree(t.mono) != d) return {CohDegree::Kind::Mixed, 0};
    return {CohDegree::Kind::Homogeneous, d};
  }

  Polynomial homogeneous_part(int degree) const {
    Polynomial f(ring_);
    for (const auto& t : terms_)
      if (ring_->degree(t.mono) == degree) f.terms_.push_back(t);
    return f;
  }

  Polynomial operator-() const {
    Polynomial f = *this;
    for (auto& t : f.terms_) t.coeff = fp_neg(t.coeff, prime());
    return f;
  }

  Polynomial& operator+=(const Polynomial& g) { return *this = combine(*this, g, 1); }
  Polynomial& operator-=(const Polynomial& g) { return *this = combine(*this, g, prime() - 1); }
  Polynomial& operator*=(const Polynomial& g) { return *this = *this * g; }

  friend Polynomial operator+(const Polynomial& f, const Polynomial& g) { return combine(f, g, 1); }
  friend Polynomial operator-(const Polynomial& f, const Polynomial& g) {
    return combine(f, g, f.prime() - 1);
  }

  friend Polynomial operator*(const Polynomial& f, const Polynomial& g) {
    check_same(f, g);
    return multiply(f, g, std::nullopt, 0);
  }

  friend bool operator==(const Polynomial& f, const Polynomial& g) {
    if (!same_ring(f.ring_, g.ring_)) return false;
    if (f.terms_.size() != g.terms_.size()) return false;
    for (std::size_t i = 0; i < f.terms_.size(); ++i)
      if (!(f.terms_[i].mono == g.terms_[i].mono) || f.terms_[i].coeff != g.terms_[i].coeff)
        return false;
    return true;
  }

  Polynomial scaled(Residue c) const {
    c %= prime();
    Polynomial f(ring_);
    if (c == 0) return f;
    f.terms_ = terms_;
    for (auto& t : f.terms_) t.coeff = fp_mul(t.coeff, c, prime());
    return f;
  }

  /// Multiplies every monomial by m (order-preserving, so no re-sort).
  Polynomial times_monomial(Monomial m, Residue c = 1) const {
    Polynomial f(ring_);
    c %= prime();
    if (c == 0) return f;
    f.terms_.reserve(terms_.size());
    for (const auto& t : terms_) f.terms_.push_back({t.mono * m, fp_mul(t.coeff, c, prime())});
    return f;
  }

  Polynomial pow(unsigned e) const {
    Polynomial result = constant(ring_, 1), base = *this;
    while (e) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  /// f * g with every term whose exponent of `var` exceeds `max_exp`
  /// discarded; this is multiplication in F_p[...]/(var^(max_exp+1)).
  friend Polynomial mul_truncated(const Polynomial& f, const Polynomial& g, std::size_t var,
                                  unsigned max_exp) {
    check_same(f, g);
    return multiply(f, g, var, max_exp);
  }

  /// Drops every term whose exponent of `var` exceeds max_exp.
  Polynomial truncated(std::size_t var, unsigned max_exp) const {
    Polynomial f(ring_);
    for (const auto& t : terms_)
      if (t.mono[var] <= max_exp) f.terms_.push_back(t);
    return f;
  }

 private:
  static void check_same(const Polynomial& f, const Polynomial& g) {
    if (!same_ring(f.ring_, g.ring_))
      throw StructuralError("ring mismatch: '" + f.ring_->label() + "' vs '" + g.ring_->label() +
                            "'");
  }

  // f + s*g by merging the two sorted term lists.
  static Polynomial combine(const Polynomial& f, const Polynomial& g, Residue s) {
    check_same(f, g);
    const Residue p = f.prime();
    const RingSpec& ring = *f.ring_;
    Polynomial r(f.ring_);
    r.terms_.reserve(f.terms_.size() + g.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < f.terms_.size() || j < g.terms_.size()) {
      int c;
      if (i == f.terms_.size()) c = -1;
      else if (j == g.terms_.size()) c = 1;
      else c = ring.compare(f.terms_[i].mono, g.terms_[j].mono);
      if (c > 0) {
        r.terms_.push_back(f.terms_[i++]);
      } else if (c < 0) {
        r.terms_.push_back({g.terms_[j].mono, fp_mul(g.terms_[j].coeff, s, p)});
        ++j;
      } else {
        Residue v = fp_add(f.terms_[i].coeff, fp_mul(g.terms_[j].coeff, s, p), p);
        if (v != 0) r.terms_.push_back({f.terms_[i].mono, v});
        ++i;
        ++j;
      }
    }
    return r;
  }

  static Polynomial multiply(const Polynomial& f, const Polynomial& g,
                             std::optional<std::size_t> trunc_var, unsigned max_exp) {
    Polynomial r(f.ring_);
    if (f.is_zero() || g.is_zero()) return r;
    const Residue p = f.prime();
    if (g.size() == 1 && !trunc_var) return f.times_monomial(g.terms_[0].mono, g.terms_[0].coeff);
    if (f.size() == 1 && !trunc_var) return g.times_monomial(f.terms_[0].mono, f.terms_[0].coeff);
    std::unordered_map<Monomial, std::uint64_t, MonomialHash> acc;
    acc.reserve(f.size() * g.size() / 2 + 16);
    for (const auto& a : f.terms_) {
      if (trunc_var && a.mono[*trunc_var] > max_exp) continue;
      for (const auto& b : g.terms_) {
        Monomial m = a.mono * b.mono;
        if (trunc_var && m[*trunc_var] > max_exp) continue;
        std::uint64_t& slot = acc[m];
        slot += static_cast<std::uint64_t>(a.coeff) * b.coeff;
        if (slot >= (std::uint64_t{1} << 62)) slot %= p;
      }
    }
    r.terms_.reserve(acc.size());
    for (const auto& [m, c] : acc) {
      Residue v = static_cast<Residue>(c % p);
      if (v != 0) r.terms_.push_back({m, v});
    }
    const RingSpec& ring = *f.ring_;
    std::sort(r.terms_.begin(), r.terms_.end(),
              [&](const Term& a, const Term& b) { return ring.compare(a.mono, b.mono) > 0; });
    return r;
  }

  RingPtr ring_;
  std::vector<Term> terms_;
};

inline CohDegree coh_degree(const Polynomial& f) { return f.coh_degree(); }

struct FormatOptions {
  /// Print residues above p/2 as negative numbers.
  bool signed_coefficients = false;
};

inline std::string format_monomial(const RingSpec& ring, Monomial m) {
  std::string out;
  for (std::size_t i = ring.size(); i-- > 0;) {
    unsigned e = m[i];
    if (e == 0) continue;
    if (!out.empty()) out += '*';
    out += ring.var(i).name;
    if (e > 1) out += '^' + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

/// Canonical text form: terms in descending monomial order, variables inside
/// a monomial in reverse declaration order, `coeff*var^e*var^e`.
inline std::string to_string(const Polynomial& f, FormatOptions opts = {}) {
  if (f.is_zero()) return "0";
  const Residue p = f.prime();
  std::string out;
  bool first = true;
  for (const auto& t : f.terms()) {
    std::int64_t c = opts.signed_coefficients ? fp_signed(t.coeff, p) : t.coeff;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) out += '-';
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    std::string mono = format_monomial(*f.ring(), t.mono);
    if (t.mono.is_one()) {
      out += std::to_string(c);
    } else if (c == 1) {
      out += mono;
    } else {
      out += std::to_string(c) + '*' + mono;
    }
  }
  return out;
}

/// Resolves identifiers other than ring variables (catalog names such as
/// `xhat16`); returns nullopt for unknown names.
using NameResolver = std::function<std::optional<Polynomial>(std::string_view)>;

namespace detail {

class PolyParser {
 public:
  PolyParser(const RingPtr& ring, std::string_view text, const NameResolver& resolver)
      : ring_(ring), text_(text), resolver_(resolver) {}

  Polynomial parse() {
    Polynomial f = sum();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("polynomial '" + std::string(text_) + "' at " + std::to_string(pos_) + ": " +
                     msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial sum() {
    Polynomial acc(ring_);
    bool negate = false;
    if (accept('-')) negate = true;
    else accept('+');
    Polynomial t = product();
    acc = negate ? -t : t;
    while (true) {
      if (accept('+')) acc += product();
      else if (accept('-')) acc -= product();
      else break;
    }
    return acc;
  }

  Polynomial product() {
    Polynomial acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  std::int64_t integer() {
    skip_ws();
    std::size_t start = pos_;
    std::int64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > (std::int64_t{1} << 50)) fail("integer too large");
      ++pos_;
    }
    if (pos_ == start) fail("expected integer");
    return v;
  }

  unsigned exponent() {
    if (!accept('^')) return 1;
    std::int64_t e = integer();
    if (e > 255) fail("exponent too large");
    return static_cast<unsigned>(e);
  }

  Polynomial factor() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = sum();
      if (!accept(')')) fail("expected ')'");
      return inner.pow(exponent());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::int64_t num = integer();
      std::int64_t den = 1;
      if (accept('/')) den = integer();
      Residue r = Rational(num, den).to_residue(ring_->prime());
      return Polynomial::constant(ring_, r).pow(exponent());
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      unsigned e = exponent();
      if (auto idx = ring_->index_of(name)) return Polynomial::variable(ring_, *idx, e);
      if (resolver_) {
        if (auto f = resolver_(name)) return f->pow(e);
      }
      fail("unknown name '" + std::string(name) + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const RingPtr& ring_;
  std::string_view text_;
  const NameResolver& resolver_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the canonical text form; also accepts rational coefficients
/// ("18/5*p3*p1"), parentheses and integer powers of parenthesized groups.
inline Polynomial parse_polynomial(const RingPtr& ring, std::string_view text,
                                   const NameResolver& resolver = {}) {
  return detail::PolyParser(ring, text, resolver).parse();
}

inline std::ostream& operator<<(std::ostream& os, const Polynomial& f) { return os << to_string(f); }

}  // namespace samelson

#endif  // SAMELSON_POLYNOMIAL_HPP
