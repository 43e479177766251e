#include "mmfluct/testfunction.hpp"
#include "mmfluct/polynomial.hpp"

#include <cmath>
#include <stdexcept>

namespace mmfluct {

TestFunction TestFunction::linear(double t) {
    TestFunction f;
    f.kind_ = TestFunctionKind::Linear;
    f.t_ = t;
    f.value_ = [t](double x) { return t * x; };
    f.deriv_ = [t](double) { return t; };
    f.desc_ = "linear(t=" + std::to_string(t) + ")";
    return f;
}

TestFunction TestFunction::polynomial(std::vector<double> coeffs) {
    TestFunction f;
    f.kind_ = TestFunctionKind::Polynomial;
    Poly p(std::move(coeffs));
    Poly dp = p.derivative();
    f.value_ = [p](double x) { return p(x); };
    f.deriv_ = [dp](double x) { return dp(x); };
    f.desc_ = "polynomial(deg=" + std::to_string(p.degree()) + ")";
    return f;
}

TestFunction TestFunction::gaussian_bump(double height, double width, double center) {
    if (!(width > 0.0)) throw std::domain_error("gaussian_bump: width must be positive");
    TestFunction f;
    f.kind_ = TestFunctionKind::GaussianBump;
    f.center_ = center;
    f.value_ = [height, width, center](double x) {
        double u = (x - center) / width;
        return height * std::exp(-0.5 * u * u);
    };
    f.deriv_ = [height, width, center](double x) {
        double u = (x - center) / width;
        return -height * u / width * std::exp(-0.5 * u * u);
    };
    // (1/2pi) int e^{ikt} h e^{-(t-c)^2/(2w^2)} dt = h w / sqrt(2pi) e^{ikc - k^2 w^2/2}
    f.fourier_ = [height, width, center](double k) {
        double mag = height * width / std::sqrt(2.0 * M_PI) * std::exp(-0.5 * k * k * width * width);
        return std::polar(mag, k * center);
    };
    f.desc_ = "gaussian-bump(h=" + std::to_string(height) + ",w=" + std::to_string(width) + ")";
    return f;
}

TestFunction TestFunction::indicator(double a, double b) {
    if (!(a < b)) throw std::domain_error("indicator: need a < b");
    TestFunction f;
    f.kind_ = TestFunctionKind::Indicator;
    f.a_ = a;
    f.b_ = b;
    f.value_ = [a, b](double x) { return (x > a && x < b) ? 1.0 : 0.0; };
    f.fourier_ = [a, b](double k) -> std::complex<double> {
        if (k == 0.0) return {(b - a) / (2.0 * M_PI), 0.0};
        std::complex<double> i(0.0, 1.0);
        return (std::exp(i * k * b) - std::exp(i * k * a)) / (2.0 * M_PI * i * k);
    };
    f.desc_ = "indicator(" + std::to_string(a) + "," + std::to_string(b) + ")";
    return f;
}

TestFunction TestFunction::scaled(const TestFunction& base, double center, double scale) {
    if (!(scale > 0.0)) throw std::domain_error("scaled: scale must be positive");
    TestFunction f;
    f.kind_ = TestFunctionKind::Scaled;
    f.center_ = center;
    f.scale_ = scale;
    auto bv = base.value_;
    f.value_ = [bv, center, scale](double x) { return bv((x - center) * scale); };
    if (base.deriv_) {
        auto bd = base.deriv_;
        f.deriv_ = [bd, center, scale](double x) { return scale * bd((x - center) * scale); };
    }
    if (base.fourier_) {
        auto bf = base.fourier_;
        f.fourier_ = [bf, center, scale](double k) {
            return bf(k / scale) / scale * std::polar(1.0, k * center);
        };
    }
    f.desc_ = "scaled(" + base.desc_ + ",x0=" + std::to_string(center) +
              ",s=" + std::to_string(scale) + ")";
    return f;
}

double TestFunction::derivative(double x) const {
    if (!deriv_) throw std::domain_error("TestFunction: derivative not available for " + desc_);
    return deriv_(x);
}

std::complex<double> TestFunction::fourier(double k) const {
    if (!fourier_) throw std::domain_error("TestFunction: Fourier transform not available for " + desc_);
    return fourier_(k);
}

std::string TestFunction::describe() const { return desc_; }

} // namespace mmfluct
