#pragma once

#include "exact/rational.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace quadpois::exact {

// The variable universe of a polynomial: ordered names plus a flag marking
// variables that are treated as units (the distinguished parameter alpha).
class Ring {
 public:
  static std::shared_ptr<const Ring> make(std::vector<std::string> names,
                                          std::vector<std::string> invertible = {});
  // The ring with no variables; polynomials over it are rational constants.
  static const std::shared_ptr<const Ring>& scalars();

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  bool is_invertible(std::size_t i) const { return invertible_[i]; }

  bool same_as(const Ring& other) const { return this == &other || names_ == other.names_; }

 private:
  Ring() = default;
  std::vector<std::string> names_;
  std::vector<bool> invertible_;
};

using RingPtr = std::shared_ptr<const Ring>;

// Exponent vector with cached total degree.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint16_t> exps);

  static Monomial unit(std::size_t nvars, std::size_t var);

  std::size_t size() const { return e_.size(); }
  unsigned degree() const { return degree_; }
  std::uint16_t operator[](std::size_t i) const { return e_[i]; }
  const std::vector<std::uint16_t>& exponents() const { return e_; }
  bool is_one() const { return degree_ == 0; }

  void set(std::size_t i, std::uint16_t value);
  Monomial operator*(const Monomial& other) const;
  // Requires other to divide *this.
  Monomial divided_by(const Monomial& other) const;
  bool divisible_by(const Monomial& other) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return a.e_ != b.e_; }

 private:
  std::vector<std::uint16_t> e_;
  unsigned degree_ = 0;
};

// Graded lexicographic order, descending: higher total degree first, then
// larger exponent of the first variable. Iterating a map keyed with this
// comparator yields the canonical printing order.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree() != b.degree()) return a.degree() > b.degree();
    return a.exponents() > b.exponents();
  }
};

// Exact sparse multivariate polynomial over Q. Never stores zero
// coefficients. A polynomial over Ring::scalars() acts as a scalar and
// combines with polynomials from any ring.
class Poly {
 public:
  using Terms = std::map<Monomial, Rational, GrlexGreater>;

  Poly() : ring_(Ring::scalars()) {}
  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}
  Poly(RingPtr ring, const Rational& c);
  Poly(const Rational& c);  // NOLINT: scalars convert implicitly
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT

  static Poly variable(const RingPtr& ring, std::size_t var);
  static Poly variable(const RingPtr& ring, std::string_view name);
  static Poly monomial(const RingPtr& ring, Monomial m, const Rational& c = 1);

  const RingPtr& ring() const { return ring_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Coefficient of the unit monomial.
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;
  unsigned total_degree() const;
  unsigned degree_in(std::size_t var) const;
  // Polynomial q with p = sum_k var^k * q_k; returns q_power (free of var).
  Poly coefficient_in(std::size_t var, unsigned power) const;
  bool contains_variable(std::size_t var) const;
  // True if every term has total degree d in the variables [first, last).
  bool homogeneous_in(std::size_t first, std::size_t last, unsigned d) const;

  void add_term(const Monomial& m, const Rational& c);

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  Poly& operator*=(const Rational& c);
  Poly operator-() const;

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly pow(unsigned k) const;
  Poly derivative(std::size_t var) const;
  // Simultaneous substitution var -> value; unlisted variables are kept.
  Poly substitute(const std::map<std::size_t, Poly>& assignment) const;

  // Move into a ring holding a superset of this ring's variables (matched by
  // name). Throws InvalidArgument if a used variable is missing.
  Poly embed(const RingPtr& target) const;

  std::string to_string() const;

 private:
  // Brings a scalar-ring operand into the other's ring; checks compatibility.
  void unify_ring(const Poly& other);
  Poly lifted_to(const RingPtr& target) const;

  RingPtr ring_;
  Terms terms_;
};

// Smallest ring containing the variables of both, a's first. Variables are
// matched by name and keep their invertibility flag.
RingPtr union_ring(const RingPtr& a, const RingPtr& b);

// Renders sum c_i * word_i as "2*A - (x + 1)*B + C". An empty word stands
// for the constant term. Returns "0" for no terms.
std::string format_combination(const std::vector<std::pair<Poly, std::string>>& terms);

// Parses canonical text like "x1^2 + (1/2)*x2*x3 - alpha*x1". Identifiers
// must be variables of the ring. Throws ParseError.
Poly parse_poly(const RingPtr& ring, std::string_view text);

}  // namespace quadpois::exact
