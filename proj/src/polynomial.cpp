#include "primdiv/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace primdiv {

IntegerPolynomial::IntegerPolynomial(std::vector<mpz_class> coefficients)
    : coeffs_(std::move(coefficients))
{
    normalize();
}

IntegerPolynomial::IntegerPolynomial(std::initializer_list<long> coefficients)
{
    coeffs_.reserve(coefficients.size());
    for (long c : coefficients)
        coeffs_.emplace_back(c);
    normalize();
}

IntegerPolynomial IntegerPolynomial::monomial(mpz_class const & c, std::size_t degree)
{
    std::vector<mpz_class> v(degree + 1);
    v[degree] = c;
    return IntegerPolynomial(std::move(v));
}

IntegerPolynomial IntegerPolynomial::x_pow_minus_one(std::size_t n)
{
    std::vector<mpz_class> v(n + 1);
    v[0] = -1;
    v[n] += 1;
    return IntegerPolynomial(std::move(v));
}

void IntegerPolynomial::normalize()
{
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

mpz_class IntegerPolynomial::coefficient(std::size_t i) const
{
    return i < coeffs_.size() ? coeffs_[i] : mpz_class(0);
}

mpz_class const & IntegerPolynomial::leading() const
{
    if (coeffs_.empty())
        throw std::domain_error("leading coefficient of the zero polynomial");
    return coeffs_.back();
}

IntegerPolynomial & IntegerPolynomial::operator+=(IntegerPolynomial const & b)
{
    if (b.coeffs_.size() > coeffs_.size())
        coeffs_.resize(b.coeffs_.size());
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i)
        coeffs_[i] += b.coeffs_[i];
    normalize();
    return *this;
}

IntegerPolynomial & IntegerPolynomial::operator-=(IntegerPolynomial const & b)
{
    if (b.coeffs_.size() > coeffs_.size())
        coeffs_.resize(b.coeffs_.size());
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i)
        coeffs_[i] -= b.coeffs_[i];
    normalize();
    return *this;
}

IntegerPolynomial & IntegerPolynomial::operator*=(mpz_class const & c)
{
    if (c == 0) {
        coeffs_.clear();
        return *this;
    }
    for (auto & x : coeffs_)
        x *= c;
    return *this;
}

IntegerPolynomial operator*(IntegerPolynomial const & a, IntegerPolynomial const & b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<mpz_class> r(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            mpz_addmul(r[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
    }
    return IntegerPolynomial(std::move(r));
}

IntegerPolynomial IntegerPolynomial::divexact(IntegerPolynomial const & d) const
{
    if (d.is_zero() || d.leading() != 1)
        throw std::domain_error("divexact: divisor must be monic");
    if (is_zero())
        return {};
    long const dd = d.degree();
    if (degree() < dd)
        throw std::domain_error("divexact: nonzero remainder");
    std::vector<mpz_class> rem = coeffs_;
    std::vector<mpz_class> quo(static_cast<std::size_t>(degree() - dd + 1));
    for (long i = degree(); i >= dd; --i) {
        mpz_class const c = rem[i];
        if (c == 0)
            continue;
        quo[i - dd] = c;
        for (long j = 0; j <= dd; ++j)
            mpz_submul(rem[i - dd + j].get_mpz_t(), c.get_mpz_t(), d.coeffs_[j].get_mpz_t());
    }
    for (long i = 0; i < dd; ++i)
        if (rem[i] != 0)
            throw std::domain_error("divexact: nonzero remainder");
    return IntegerPolynomial(std::move(quo));
}

IntegerPolynomial IntegerPolynomial::derivative() const
{
    if (coeffs_.size() <= 1)
        return {};
    std::vector<mpz_class> r(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        r[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
    return IntegerPolynomial(std::move(r));
}

IntegerPolynomial IntegerPolynomial::substitute_monomial(int sign, std::size_t e) const
{
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("substitute_monomial: sign must be +1 or -1");
    if (e == 0)
        throw std::invalid_argument("substitute_monomial: exponent must be positive");
    if (is_zero())
        return {};
    std::vector<mpz_class> r((coeffs_.size() - 1) * e + 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        r[i * e] = (sign < 0 && (i & 1)) ? mpz_class(-coeffs_[i]) : coeffs_[i];
    return IntegerPolynomial(std::move(r));
}

mpz_class IntegerPolynomial::evaluate(mpz_class const & x) const
{
    mpz_class acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    return acc;
}

mpz_class IntegerPolynomial::evaluate_homogeneous(mpz_class const & a, mpz_class const & b) const
{
    if (is_zero())
        return 0;
    mpz_class acc = coeffs_.back();
    mpz_class bpow = 1;
    for (long i = degree() - 1; i >= 0; --i) {
        bpow *= b;
        acc *= a;
        mpz_addmul(acc.get_mpz_t(), coeffs_[i].get_mpz_t(), bpow.get_mpz_t());
    }
    return acc;
}

RealBall IntegerPolynomial::evaluate(RealBall const & x) const
{
    Precision const prec = x.precision();
    RealBall acc(prec);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc *= x;
        acc += RealBall::from_mpz(*it, prec);
    }
    return acc;
}

ComplexBall IntegerPolynomial::evaluate(ComplexBall const & x) const
{
    Precision const prec = x.re.precision();
    ComplexBall acc(prec);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * x;
        acc.re += RealBall::from_mpz(*it, prec);
    }
    return acc;
}

std::size_t IntegerPolynomial::max_coefficient_bits() const
{
    std::size_t bits = 0;
    for (auto const & c : coeffs_)
        bits = std::max(bits, mpz_sizeinbase(c.get_mpz_t(), 2));
    return bits;
}

mpz_class IntegerPolynomial::l1_norm() const
{
    mpz_class s = 0;
    for (auto const & c : coeffs_)
        s += abs(c);
    return s;
}

std::string IntegerPolynomial::to_string(char var) const
{
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (long i = degree(); i >= 0; --i) {
        mpz_class const & c = coeffs_[i];
        if (c == 0)
            continue;
        mpz_class a = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        if (a != 1 || i == 0)
            os << a.get_str();
        if (i >= 1)
            os << var;
        if (i >= 2)
            os << '^' << i;
    }
    return os.str();
}

} // namespace primdiv
