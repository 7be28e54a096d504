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

#ifndef SAMELSON_SYMFUN_HPP
#define SAMELSON_SYMFUN_HPP

// Symmetric functions of t_1, ..., t_m.  The t-variables are the cohomology
// of the maximal torus; the model rings Z/p[p_1, ..., p_{m-1}, c_m] are the
// W(D_m)-invariants among them, with c_i = e_i(t) and p_i = e_i(t^2).  The
// t-world is kept small and used as an independent oracle; production code
// only ever touches the model rings.

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "samelson/polynomial.hpp"
#include "samelson/ring_map.hpp"

namespace samelson {

/// Z/p[t_1, ..., t_m], each t_i of degree 2.
struct TWorld {
  int m = 0;
  RingPtr ring;

  static TWorld make(int m, Residue p) {
    if (m < 1 || m > static_cast<int>(kMaxVars)) throw PreconditionError("TWorld: m out of range");
    std::vector<Variable> vars;
    for (int i = 1; i <= m; ++i) vars.push_back({"t" + std::to_string(i), 2});
    return {m, make_ring(p, std::move(vars), "t-world(" + std::to_string(m) + ")")};
  }

  Polynomial t(int i) const { return Polynomial::variable(ring, static_cast<std::size_t>(i - 1)); }
};

enum class SymKind { Chern, Pontryagin };

/// e_i(t_1..t_m) for Chern, e_i(t_1^2..t_m^2) for Pontryagin.
inline Polynomial elem_sym_t(const TWorld& w, SymKind kind, int i) {
  if (i < 0 || i > w.m) throw PreconditionError("elem_sym_t: index out of range");
  // e[k] of the first j variables, updated one variable at a time.
  std::vector<Polynomial> e(static_cast<std::size_t>(i) + 1, Polynomial(w.ring));
  e[0] = Polynomial::constant(w.ring, 1);
  for (int j = 1; j <= w.m; ++j) {
    Polynomial y = Polynomial::variable(w.ring, static_cast<std::size_t>(j - 1),
                                        kind == SymKind::Chern ? 1 : 2);
    for (int k = std::min(i, j); k >= 1; --k) e[k] += e[k - 1] * y;
  }
  return e[i];
}

enum class ModelKind {
  B,  ///< Spin(2m+1): Z/p[p_1, ..., p_m]
  D,  ///< Spin(2m):   Z/p[p_1, ..., p_{m-1}, c_m], p_m = c_m^2
};

/// The cohomology ring of BSpin(n) as a ring of Pontryagin classes, with
/// the truncation rule that expresses p_n for every n >= 0.
class PontryaginRing {
 public:
  PontryaginRing(ModelKind kind, int rank, Residue p) : kind_(kind), rank_(rank) {
    if (rank < 1 || rank > static_cast<int>(kMaxVars))
      throw PreconditionError("PontryaginRing: rank out of range");
    std::vector<Variable> vars;
    int last = kind == ModelKind::D ? rank - 1 : rank;
    for (int i = 1; i <= last; ++i) vars.push_back({"p" + std::to_string(i), 4 * i});
    if (kind == ModelKind::D) vars.push_back({"c" + std::to_string(rank), 2 * rank});
    std::string label =
        "Spin(" + std::to_string(kind == ModelKind::D ? 2 * rank : 2 * rank + 1) + ")";
    ring_ = make_ring(p, std::move(vars), label);
  }

  /// Spin(n) for n >= 3.
  static PontryaginRing spin(int n, Residue p) {
    return n % 2 == 0 ? PontryaginRing(ModelKind::D, n / 2, p)
                      : PontryaginRing(ModelKind::B, (n - 1) / 2, p);
  }

  const RingPtr& ring() const { return ring_; }
  ModelKind kind() const { return kind_; }
  int rank() const { return rank_; }
  Residue prime() const { return ring_->prime(); }

  /// p_n: 1 for n = 0, the variable for n below the rank, c_m^2 for n = m in
  /// type D, and 0 beyond the rank.
  Polynomial pontryagin(int n) const {
    if (n == 0) return Polynomial::constant(ring_, 1);
    if (n < 0 || n > rank_) return Polynomial(ring_);
    if (n == rank_ && kind_ == ModelKind::D)
      return Polynomial::variable(ring_, static_cast<std::size_t>(rank_ - 1), 2);
    return Polynomial::variable(ring_, static_cast<std::size_t>(n - 1));
  }

  /// c_m, type D only.
  Polynomial euler() const {
    if (kind_ != ModelKind::D) throw PreconditionError("euler class only exists in type D");
    return Polynomial::variable(ring_, static_cast<std::size_t>(rank_ - 1));
  }

  /// The substitution p_i -> e_i(t^2) (and c_m -> e_m(t)) into a t-world of
  /// the same rank.
  RingMap to_t_world(const TWorld& w) const {
    if (w.m != rank_) throw PreconditionError("to_t_world: rank mismatch");
    std::vector<Polynomial> imgs;
    int last = kind_ == ModelKind::D ? rank_ - 1 : rank_;
    for (int i = 1; i <= last; ++i) imgs.push_back(elem_sym_t(w, SymKind::Pontryagin, i));
    if (kind_ == ModelKind::D) imgs.push_back(elem_sym_t(w, SymKind::Chern, rank_));
    return RingMap("to_t", ring_, w.ring, std::move(imgs));
  }

 private:
  ModelKind kind_;
  int rank_;
  RingPtr ring_;
};

/// Z/p[c_1, ..., c_m] with c_i of degree 2i.
inline RingPtr make_chern_ring(int m, Residue p) {
  std::vector<Variable> vars;
  for (int i = 1; i <= m; ++i) vars.push_back({"c" + std::to_string(i), 2 * i});
  return make_ring(p, std::move(vars), "chern(" + std::to_string(m) + ")");
}

namespace detail {

inline void for_each_partition(int k, int max_part, std::vector<int>& counts,
                               const std::function<void(const std::vector<int>&)>& fn) {
  if (k == 0) {
    fn(counts);
    return;
  }
  for (int j = std::min(k, max_part); j >= 1; --j) {
    ++counts[static_cast<std::size_t>(j)];
    for_each_partition(k - j, j, counts, fn);
    --counts[static_cast<std::size_t>(j)];
  }
}

inline __int128 binomial128(int n, int r) {
  __int128 b = 1;
  for (int i = 1; i <= r; ++i) b = b * (n - r + i) / i;
  return b;
}

}  // namespace detail

/// Power sum s_k = t_1^{2k} + ... + t_m^{2k} written in the Pontryagin
/// classes by Girard's formula
///   s_k = (-1)^k k sum (-1)^{i_1+...+i_m} (i_1+...+i_m-1)!/(i_1!...i_m!)
///         p_1^{i_1} ... p_m^{i_m}
/// over i_1 + 2 i_2 + ... + m i_m = k.  Top and out-of-range p_n are
/// resolved by the ring's truncation rule.
inline Polynomial girard_power_sum(int k, const PontryaginRing& ring) {
  if (k < 1) throw PreconditionError("girard_power_sum: k must be >= 1");
  if (k > 60) throw PreconditionError("girard_power_sum: k too large for exact coefficients");
  const Residue p = ring.prime();
  const int m = ring.rank();
  std::vector<Polynomial> pvars;
  for (int n = 0; n <= m; ++n) pvars.push_back(ring.pontryagin(n));
  Polynomial result(ring.ring());
  std::vector<int> counts(static_cast<std::size_t>(k) + 1, 0);
  detail::for_each_partition(k, m, counts, [&](const std::vector<int>& cnt) {
    int n = 0;
    for (int c : cnt) n += c;
    // k (n-1)! / prod i_j! = (k / n) * multinomial(n; i_1, ..., i_m)
    __int128 multinomial = 1;
    int acc = 0;
    for (int j = 1; j <= m && j < static_cast<int>(cnt.size()); ++j) {
      acc += cnt[static_cast<std::size_t>(j)];
      multinomial *= detail::binomial128(acc, cnt[static_cast<std::size_t>(j)]);
    }
    __int128 coeff = multinomial * k / n;
    if ((k + n) % 2 != 0) coeff = -coeff;
    __int128 r = coeff % static_cast<__int128>(p);
    if (r < 0) r += p;
    Polynomial term = Polynomial::constant(ring.ring(), static_cast<Residue>(r));
    for (int j = 1; j <= m && j < static_cast<int>(cnt.size()); ++j)
      if (cnt[static_cast<std::size_t>(j)])
        term = term * pvars[static_cast<std::size_t>(j)].pow(
                          static_cast<unsigned>(cnt[static_cast<std::size_t>(j)]));
    result += term;
  });
  return result;
}

/// p_i = sum_{j+k=2i} (-1)^{i+j} c_j c_k with c_0 = 1 and c_j = 0 past the
/// rank of the Chern ring.
inline Polynomial pontryagin_in_chern(int i, const RingPtr& chern) {
  const int m = static_cast<int>(chern->size());
  if (i < 1) throw PreconditionError("pontryagin_in_chern: i must be >= 1");
  auto c = [&](int j) {
    if (j == 0) return Polynomial::constant(chern, 1);
    if (j > m) return Polynomial(chern);
    return Polynomial::variable(chern, static_cast<std::size_t>(j - 1));
  };
  Polynomial r(chern);
  const Residue p = chern->prime();
  for (int j = 0; j <= 2 * i; ++j) {
    int k = 2 * i - j;
    if (j > m || k > m) continue;
    Polynomial t = c(j) * c(k);
    r += ((i + j) % 2 == 0) ? t : t.scaled(p - 1);
  }
  return r;
}

/// The ring map Z/p[p_1..p_{m-1}, c_m] -> Z/p[c_1..c_m] rewriting the
/// Pontryagin classes in Chern classes.
inline RingMap pontryagin_to_chern(const PontryaginRing& model, const RingPtr& chern) {
  std::vector<Polynomial> imgs;
  int last = model.kind() == ModelKind::D ? model.rank() - 1 : model.rank();
  for (int i = 1; i <= last; ++i) imgs.push_back(pontryagin_in_chern(i, chern));
  if (model.kind() == ModelKind::D)
    imgs.push_back(Polynomial::variable(chern, static_cast<std::size_t>(model.rank() - 1)));
  return RingMap("p->c", model.ring(), chern, std::move(imgs));
}

namespace detail {

// Lex order with variable 0 most significant.
inline bool lex_greater(Monomial a, Monomial b) {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

struct LexGreater {
  bool operator()(Monomial a, Monomial b) const { return lex_greater(a, b); }
};

}  // namespace detail

/// Writes a symmetric polynomial in the m variables of `source` (all of the
/// same degree) as a polynomial in the elementary symmetric functions, which
/// are the first m variables of `target`.  Repeatedly strips the lex-leading
/// term a_1 >= ... >= a_m with c * e_1^{a_1-a_2} ... e_m^{a_m}.
inline Polynomial decompose_symmetric(const Polynomial& f, const RingPtr& target) {
  const RingPtr& src = f.ring();
  const std::size_t m = src->size();
  const Residue p = src->prime();
  if (target->size() < m) throw PreconditionError("decompose_symmetric: target too small");
  // Elementary symmetric functions of the source variables.
  std::vector<Polynomial> e(m + 1, Polynomial(src));
  e[0] = Polynomial::constant(src, 1);
  for (std::size_t j = 0; j < m; ++j) {
    Polynomial y = Polynomial::variable(src, j);
    for (std::size_t k = j + 1; k >= 1; --k) e[k] += e[k - 1] * y;
  }
  std::vector<std::vector<Polynomial>> epow(m + 1);
  auto power = [&](std::size_t i, unsigned k) -> const Polynomial& {
    auto& pw = epow[i];
    if (pw.empty()) pw.push_back(Polynomial::constant(src, 1));
    while (pw.size() <= k) pw.push_back(pw.back() * e[i]);
    return pw[k];
  };

  std::map<Monomial, Residue, detail::LexGreater> work;
  for (const auto& t : f.terms()) work[t.mono] = t.coeff;
  std::vector<Term> out;
  while (!work.empty()) {
    auto [lead, c] = *work.begin();
    Monomial target_mono;
    for (std::size_t i = 0; i < m; ++i) {
      unsigned next = i + 1 < m ? lead[i + 1] : 0;
      if (lead[i] < next) throw NotInvariantError("decompose_symmetric: input is not symmetric");
      target_mono.set(i, lead[i] - next);
    }
    out.push_back({target_mono, c});
    Polynomial prod = Polynomial::constant(src, c);
    for (std::size_t i = 0; i < m; ++i)
      if (target_mono[i]) prod = prod * power(i + 1, target_mono[i]);
    for (const auto& t : prod.terms()) {
      auto it = work.find(t.mono);
      if (it == work.end()) {
        work.emplace(t.mono, fp_neg(t.coeff, p));
      } else {
        it->second = fp_sub(it->second, t.coeff, p);
        if (it->second == 0) work.erase(it);
      }
    }
  }
  return Polynomial::from_terms(target, std::move(out));
}

/// Preimage of a W(D_m)-invariant t-polynomial under p_i -> e_i(t^2),
/// c_m -> e_m(t).  Invariance is checked on the generators of W(D_m): the
/// adjacent transpositions and the sign change of (t_1, t_2).
inline Polynomial decompose_invariant(const TWorld& w, const Polynomial& f,
                                      const PontryaginRing& model) {
  if (model.kind() != ModelKind::D || model.rank() != w.m)
    throw PreconditionError("decompose_invariant: needs the type D model of the same rank");
  if (!same_ring(f.ring(), w.ring)) throw StructuralError("decompose_invariant: not a t-polynomial");
  const Residue p = w.ring->prime();
  const std::size_t m = static_cast<std::size_t>(w.m);

  for (std::size_t i = 0; i + 1 < m; ++i) {
    std::vector<Term> swapped;
    for (const auto& t : f.terms()) {
      Monomial s = t.mono;
      s.set(i, t.mono[i + 1]);
      s.set(i + 1, t.mono[i]);
      swapped.push_back({s, t.coeff});
    }
    if (!(Polynomial::from_terms(w.ring, std::move(swapped)) == f))
      throw NotInvariantError("not invariant under the transposition (t" + std::to_string(i + 1) +
                              " t" + std::to_string(i + 2) + ")");
  }
  if (m >= 2) {
    std::vector<Term> flipped;
    for (const auto& t : f.terms())
      flipped.push_back({t.mono, (t.mono[0] + t.mono[1]) % 2 ? fp_neg(t.coeff, p) : t.coeff});
    if (!(Polynomial::from_terms(w.ring, std::move(flipped)) == f))
      throw NotInvariantError("not invariant under the sign change of (t1, t2)");
  }

  // f = A(t^2) + e_m(t) B(t^2); halve exponents into u_i = t_i^2.
  std::vector<Variable> uvars;
  for (std::size_t i = 1; i <= m; ++i) uvars.push_back({"u" + std::to_string(i), 4});
  RingPtr uring = make_ring(p, uvars, "u");
  std::vector<Term> even, odd;
  for (const auto& t : f.terms()) {
    bool all_even = true, all_odd = true;
    for (std::size_t i = 0; i < m; ++i) {
      if (t.mono[i] % 2) all_even = false;
      else all_odd = false;
    }
    Monomial half;
    if (all_even) {
      for (std::size_t i = 0; i < m; ++i) half.set(i, t.mono[i] / 2);
      even.push_back({half, t.coeff});
    } else if (all_odd) {
      for (std::size_t i = 0; i < m; ++i) half.set(i, (t.mono[i] - 1) / 2);
      odd.push_back({half, t.coeff});
    } else {
      throw NotInvariantError("monomial with mixed exponent parity");
    }
  }
  PontryaginRing full(ModelKind::B, w.m, p);
  auto to_model = [&](const Polynomial& g) {
    std::vector<Term> terms;
    for (const auto& t : g.terms()) {
      Monomial mm = t.mono;
      if (model.kind() == ModelKind::D) {
        mm.set(m - 1, 2 * t.mono[m - 1]);
      }
      terms.push_back({mm, t.coeff});
    }
    return Polynomial::from_terms(model.ring(), std::move(terms));
  };
  Polynomial a = to_model(
      decompose_symmetric(Polynomial::from_terms(uring, std::move(even)), full.ring()));
  Polynomial b = to_model(
      decompose_symmetric(Polynomial::from_terms(uring, std::move(odd)), full.ring()));
  return a + b * model.euler();
}

/// The reflection at the simple root
///   alpha_1 = (e_1 + e_8)/2 - (e_2 + ... + e_7)/2
/// acting on Z/p[t_1..t_8], where t_1 = -e_1, t_8 = -e_8, t_i = e_i.
/// Returns the images of t_1..t_8.
inline std::vector<Polynomial> phi_linear_images(const TWorld& w) {
  if (w.m != 8) throw PreconditionError("phi_reflect_exact: m must be 8");
  const Residue p = w.ring->prime();
  // 2*alpha_1 in epsilon coordinates; sign of t_i relative to e_i.
  const std::array<int, 8> a = {1, -1, -1, -1, -1, -1, -1, 1};
  const std::array<int, 8> sigma = {-1, 1, 1, 1, 1, 1, 1, -1};
  int aa = 0;
  for (int v : a) aa += v * v;
  // x_i o s = x_i - 2 a_i (sum_j a_j x_j) / (a, a), with x_j = sigma_j t_j.
  std::vector<Polynomial> images;
  Residue inv = fp_inv(static_cast<Residue>(aa), p);
  for (std::size_t i = 0; i < 8; ++i) {
    std::vector<Term> terms;
    for (std::size_t j = 0; j < 8; ++j) {
      // coefficient of t_j in sigma_i * (x_i - 2 a_i a_j sigma_j t_j / (a,a))
      std::int64_t num = -2LL * sigma[i] * a[i] * a[j] * sigma[j];
      Residue c = fp_mul(fp_reduce(num, p), inv, p);
      if (i == j) c = fp_add(c, 1, p);  // sigma_i * x_i = t_i
      terms.push_back({Monomial::variable(j), c});
    }
    images.push_back(Polynomial::from_terms(w.ring, std::move(terms)));
  }
  return images;
}

inline Polynomial phi_reflect_exact(const TWorld& w, const Polynomial& f) {
  return RingMap("phi", w.ring, w.ring, phi_linear_images(w))(f);
}

/// Images of the reflection on Z/p[c_1..c_8] modulo (c_1^2), together with
/// the catalog of the h_i in phi(p_i) = p_i + h_i c_1.
class PhiData {
 public:
  explicit PhiData(Residue p) : chern_(make_chern_ring(8, p)) {
    TWorld w = TWorld::make(8, p);
    auto lin = phi_linear_images(w);
    RingMap phi("phi", w.ring, w.ring, lin);
    std::vector<Polynomial> images;
    for (int j = 1; j <= 8; ++j)
      images.push_back(decompose_symmetric(phi(elem_sym_t(w, SymKind::Chern, j)), chern_));
    phi_c_ = std::make_unique<RingMap>("phi_c", chern_, chern_, std::move(images));

    static const char* const kH[] = {
        "3/2*c3",
        "-5/2*c5 - 1/2*c3*c2",
        "7/2*c7 + 3/2*c5*c2 - 1/2*c4*c3",
        "-5/2*c7*c2 + 3/2*c6*c3 - 1/2*c5*c4",
        "-5/2*c8*c3 + 3/2*c7*c4 - 1/2*c6*c5",
        "3/2*c8*c5 - 1/2*c7*c6",
    };
    for (int i = 2; i <= 7; ++i) h_.push_back(parse_polynomial(chern_, kH[i - 2]));
  }

  const RingPtr& chern() const { return chern_; }

  /// Exact image phi(c_j) as a polynomial in the c's.
  const Polynomial& phi_c(int j) const { return phi_c_->image(static_cast<std::size_t>(j - 1)); }

  /// h_i for 2 <= i <= 7.
  const Polynomial& h(int i) const { return h_.at(static_cast<std::size_t>(i - 2)); }

  /// The catalogued truncated image: p_1 for i = 1, p_i + h_i c_1 for
  /// 2 <= i <= 7, in c-variables.
  Polynomial catalog_phi_p(int i) const {
    Polynomial pi = pontryagin_in_chern(i, chern_);
    if (i == 1) return pi;
    return pi + h(i) * Polynomial::variable(chern_, 0);
  }

  /// c_8 - 1/4 c_7 c_1.
  Polynomial catalog_phi_c8() const { return parse_polynomial(chern_, "c8 - 1/4*c7*c1"); }

  /// phi(f) mod (c_1^2) for f in Z/p[c_1..c_8].
  Polynomial phi_truncated(const Polynomial& f) const { return phi_c_->apply_truncated(f, 0, 1); }

 private:
  RingPtr chern_;
  std::unique_ptr<RingMap> phi_c_;
  std::vector<Polynomial> h_;
};

/// Shared PhiData per prime, built on first use.
inline const PhiData& phi_data(Residue p) {
  static std::mutex mu;
  static std::map<Residue, std::unique_ptr<PhiData>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[p];
  if (!slot) slot = std::make_unique<PhiData>(p);
  return *slot;
}

inline Polynomial phi_truncated(const Polynomial& f) {
  return phi_data(f.prime()).phi_truncated(f);
}

/// f mod (c_1^2) in a Chern ring.
inline Polynomial mod_c1_squared(const Polynomial& f) { return f.truncated(0, 1); }

}  // namespace samelson

#endif  // SAMELSON_SYMFUN_HPP
