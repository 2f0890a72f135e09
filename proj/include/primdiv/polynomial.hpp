#ifndef PRIMDIV_POLYNOMIAL_HPP
#define PRIMDIV_POLYNOMIAL_HPP

#include "primdiv/realball.hpp"

#include <gmpxx.h>

#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

namespace primdiv {

/* Dense polynomial with exact integer coefficients, lowest degree first.
 * The coefficient vector never ends in a zero; the zero polynomial has
 * no coefficients and degree -1.
 */
class IntegerPolynomial {
  public:
    IntegerPolynomial() = default;
    explicit IntegerPolynomial(std::vector<mpz_class> coefficients);
    IntegerPolynomial(std::initializer_list<long> coefficients);

    static IntegerPolynomial monomial(mpz_class const & c, std::size_t degree);
    /// X^n - 1
    static IntegerPolynomial x_pow_minus_one(std::size_t n);

    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    /// Coefficient of X^i; zero beyond the degree.
    mpz_class coefficient(std::size_t i) const;
    std::vector<mpz_class> const & coefficients() const { return coeffs_; }
    mpz_class const & leading() const;

    bool operator==(IntegerPolynomial const & other) const { return coeffs_ == other.coeffs_; }

    IntegerPolynomial & operator+=(IntegerPolynomial const & b);
    IntegerPolynomial & operator-=(IntegerPolynomial const & b);
    IntegerPolynomial & operator*=(mpz_class const & c);
    friend IntegerPolynomial operator+(IntegerPolynomial a, IntegerPolynomial const & b) { return a += b; }
    friend IntegerPolynomial operator-(IntegerPolynomial a, IntegerPolynomial const & b) { return a -= b; }
    friend IntegerPolynomial operator*(IntegerPolynomial const & a, IntegerPolynomial const & b);
    friend IntegerPolynomial operator*(IntegerPolynomial a, mpz_class const & c) { return a *= c; }

    /* Exact quotient by a monic divisor. Throws std::domain_error if the
     * divisor is not monic or the division leaves a remainder.
     */
    IntegerPolynomial divexact(IntegerPolynomial const & monic_divisor) const;

    IntegerPolynomial derivative() const;
    /// f(sign * X^e), sign = +1 or -1.
    IntegerPolynomial substitute_monomial(int sign, std::size_t e) const;

    mpz_class evaluate(mpz_class const & x) const;
    /// b^deg * f(a/b), exact.
    mpz_class evaluate_homogeneous(mpz_class const & a, mpz_class const & b) const;
    RealBall evaluate(RealBall const & x) const;
    ComplexBall evaluate(ComplexBall const & x) const;

    /// Largest coefficient size in bits.
    std::size_t max_coefficient_bits() const;
    /// Sum of |coefficients|.
    mpz_class l1_norm() const;

    std::string to_string(char var = 'X') const;
    friend std::ostream & operator<<(std::ostream & os, IntegerPolynomial const & f) { return os << f.to_string(); }

  private:
    void normalize();

    std::vector<mpz_class> coeffs_;
};

} // namespace primdiv

#endif
