#include "hotspots/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "hotspots/error.hpp"

namespace hotspots {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::resource_limit, "integer polynomial overflow");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::resource_limit, "integer polynomial overflow");
    return r;
}

}  // namespace

IntPolynomial::IntPolynomial(std::initializer_list<std::int64_t> coeffs) : c_(coeffs) { trim(); }
IntPolynomial::IntPolynomial(std::vector<std::int64_t> coeffs) : c_(std::move(coeffs)) { trim(); }

void IntPolynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

double IntPolynomial::operator()(double x) const {
    double out = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) out = out * x + static_cast<double>(*it);
    return out;
}

std::string IntPolynomial::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const std::int64_t a = c_[k];
        if (a == 0) continue;
        if (!first) out << (a < 0 ? " - " : " + ");
        else if (a < 0) out << "-";
        const std::int64_t m = a < 0 ? -a : a;
        if (m != 1 || k == 0) out << m;
        if (k >= 1) out << "x";
        if (k >= 2) out << "^" << k;
        first = false;
    }
    return out.str();
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<std::int64_t> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = checked_add(a[static_cast<int>(k)], b[static_cast<int>(k)]);
    return IntPolynomial(std::move(c));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) { return a + (-1) * b; }

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<std::int64_t> c(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = checked_add(c[i + j], checked_mul(a.c_[i], b.c_[j]));
    }
    return IntPolynomial(std::move(c));
}

IntPolynomial operator*(std::int64_t s, const IntPolynomial& a) {
    std::vector<std::int64_t> c(a.c_.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = checked_mul(s, a.c_[k]);
    return IntPolynomial(std::move(c));
}

IntPolynomial pow(const IntPolynomial& p, int n) {
    if (n < 0) throw Error(ErrorCode::invalid_argument, "negative polynomial power");
    IntPolynomial out{1};
    for (int i = 0; i < n; ++i) out = out * p;
    return out;
}

}  // namespace hotspots
