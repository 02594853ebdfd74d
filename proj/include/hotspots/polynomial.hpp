#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace hotspots {

/// Polynomial with exact integer coefficients, ascending degree. Arithmetic
/// throws on 64-bit overflow instead of wrapping.
class IntPolynomial {
public:
    IntPolynomial() = default;
    IntPolynomial(std::initializer_list<std::int64_t> coeffs);
    explicit IntPolynomial(std::vector<std::int64_t> coeffs);

    static IntPolynomial x() { return IntPolynomial{0, 1}; }
    static IntPolynomial constant(std::int64_t c) { return IntPolynomial{c}; }

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    std::int64_t operator[](int k) const { return k < static_cast<int>(c_.size()) ? c_[k] : 0; }
    const std::vector<std::int64_t>& coefficients() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    double operator()(double x) const;
    std::string to_string() const;

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(std::int64_t s, const IntPolynomial& a);
    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.c_ == b.c_; }

private:
    void trim();
    std::vector<std::int64_t> c_;
};

IntPolynomial pow(const IntPolynomial& p, int n);

}  // namespace hotspots
