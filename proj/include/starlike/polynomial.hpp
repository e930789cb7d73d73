#pragma once

#include <vector>

namespace starlike {

/// Real polynomial with coefficients in ascending order: c[0] + c[1] x + ...
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs);

    const std::vector<double>& coeffs() const noexcept { return c_; }

    /// Degree after trimming trailing zeros; the zero polynomial has degree 0.
    int degree() const noexcept;

    double operator()(double x) const noexcept;
    Polynomial derivative() const;

    /// Returns q with q(x) = p(x + shift) (Taylor shift).
    Polynomial shifted(double shift) const;

    /// Returns q with q(x) = p(x) + c.
    Polynomial plus_constant(double c) const;

    /// Returns q with q(x) = p(-x).
    Polynomial reflected() const;

private:
    std::vector<double> c_;
};

}  // namespace starlike
