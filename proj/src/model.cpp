#include "substefan/model.hpp"

#include <cmath>

namespace substefan {

Dimensionless to_dimensionless(double t, double X, double C, const ModelParams& params) {
    params.validate();
    if (!params.physical) {
        throw std::invalid_argument("to_dimensionless: physical parameter block is required");
    }
    const auto& ph = *params.physical;
    const double tau = t * std::pow(ph.d_alpha / (ph.l * ph.l), 1.0 / params.alpha);
    return {tau, X / ph.l, C / ph.cs};
}

}  // namespace substefan
