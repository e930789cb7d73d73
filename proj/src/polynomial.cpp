#include "starlike/polynomial.hpp"

#include <utility>

namespace starlike {

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.push_back(0.0);
}

int Polynomial::degree() const noexcept {
    int d = static_cast<int>(c_.size()) - 1;
    while (d > 0 && c_[d] == 0.0) --d;
    return d < 0 ? 0 : d;
}

double Polynomial::operator()(double x) const noexcept {
    double r = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return Polynomial({0.0});
    std::vector<double> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
    return Polynomial(std::move(d));
}

Polynomial Polynomial::shifted(double shift) const {
    // Repeated synthetic division by (x - shift) yields the Taylor coefficients.
    std::vector<double> a = c_;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t k = n - 1; k > i; --k) a[k - 1] += shift * a[k];
    return Polynomial(std::move(a));
}

Polynomial Polynomial::plus_constant(double c) const {
    std::vector<double> a = c_;
    a[0] += c;
    return Polynomial(std::move(a));
}

Polynomial Polynomial::reflected() const {
    std::vector<double> a = c_;
    for (std::size_t k = 1; k < a.size(); k += 2) a[k] = -a[k];
    return Polynomial(std::move(a));
}

}  // namespace starlike
