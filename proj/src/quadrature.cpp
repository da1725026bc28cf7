#include "girard/quadrature.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <stdexcept>

namespace girard::quadrature {

double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    double tolerance) {
    if (!f) throw std::invalid_argument("integrand has no evaluator");
    if (!(a < b)) throw std::invalid_argument("integration bounds must satisfy a < b");

    boost::math::quadrature::tanh_sinh<double> integrator;
    double error = 0.0;
    double l1 = 0.0;
    double value = 0.0;
    try {
        value = integrator.integrate(f, a, b, tolerance, &error, &l1);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("quadrature failed: ") + e.what());
    }
    if (!std::isfinite(value) || error > tolerance * std::max(1.0, l1)) {
        throw std::runtime_error("quadrature failed to reach the requested accuracy");
    }
    return value;
}

}  // namespace girard::quadrature
