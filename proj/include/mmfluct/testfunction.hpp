#pragma once
#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace mmfluct {

enum class TestFunctionKind { Linear, Polynomial, GaussianBump, Indicator, Scaled };

// Linear-statistic test function with value, derivative, and Fourier
// transform access.  The transform convention is
//   fhat(k) = (1/2pi) int e^{ikt} f(t) dt.
class TestFunction {
public:
    static TestFunction linear(double t);
    static TestFunction polynomial(std::vector<double> coeffs);
    // height * exp(-(x-center)^2 / (2 width^2))
    static TestFunction gaussian_bump(double height = 1.0, double width = 1.0,
                                      double center = 0.0);
    static TestFunction indicator(double a, double b);
    // base((x - center) * scale); in the microscopic regime scale = n,
    // intermediate scale = n^alpha
    static TestFunction scaled(const TestFunction& base, double center, double scale);

    TestFunctionKind kind() const { return kind_; }
    bool has_derivative() const { return static_cast<bool>(deriv_); }
    bool has_fourier() const { return static_cast<bool>(fourier_); }

    double operator()(double x) const { return value_(x); }
    double derivative(double x) const;
    std::complex<double> fourier(double k) const;

    // indicator endpoints
    double lower() const { return a_; }
    double upper() const { return b_; }
    double scale_param() const { return scale_; }
    double center_param() const { return center_; }
    double linear_coefficient() const { return t_; }

    std::string describe() const;

private:
    TestFunction() = default;
    TestFunctionKind kind_ = TestFunctionKind::Linear;
    std::function<double(double)> value_;
    std::function<double(double)> deriv_;
    std::function<std::complex<double>(double)> fourier_;
    double a_ = 0.0, b_ = 0.0, t_ = 0.0, scale_ = 1.0, center_ = 0.0;
    std::string desc_;
};

} // namespace mmfluct
