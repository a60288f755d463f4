#include "pricing/model.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace pricing {

void PricingModel::validate() const {
    if (horizon < 1) throw std::invalid_argument("model: horizon must be >= 1");
    if (max_inventory < 1) throw std::invalid_argument("model: max_inventory must be >= 1");
    if (prices.empty()) throw std::invalid_argument("model: price grid is empty");
    for (std::size_t k = 0; k < prices.size(); ++k) {
        if (!(prices[k] > 0.0)) throw std::invalid_argument("model: prices must be positive");
        if (k > 0 && !(prices[k] > prices[k - 1]))
            throw std::invalid_argument("model: prices must be strictly increasing");
    }
    if (!(lambda_min > 0.0) || !(lambda_max >= lambda_min))
        throw std::invalid_argument("model: need 0 < lambda_min <= lambda_max");
    if (static_cast<int>(lambda.size()) != horizon)
        throw std::invalid_argument("model: lambda must have one row per period");
    for (const auto& row : lambda) {
        if (row.size() != prices.size())
            throw std::invalid_argument("model: lambda row width must match the price grid");
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (!std::isfinite(row[k]) || row[k] < lambda_min || row[k] > lambda_max)
                throw std::invalid_argument("model: lambda outside [lambda_min, lambda_max]");
            if (k > 0 && row[k] > row[k - 1] + 1e-12)
                throw std::invalid_argument("model: lambda must be non-increasing in price");
        }
    }
}

PricingModel make_model(int horizon, int max_inventory, std::vector<double> prices,
                        std::vector<double> rates, double lambda_min, double lambda_max) {
    PricingModel m;
    m.horizon = horizon;
    m.max_inventory = max_inventory;
    m.prices = std::move(prices);
    m.lambda.assign(horizon, rates);
    m.lambda_min = lambda_min;
    m.lambda_max = lambda_max;
    m.validate();
    return m;
}

PricingModel default_model() {
    return make_model(4, 15, {8.0, 9.0, 10.0}, {6.0, 4.0, 2.5}, 1.0, 10.0);
}

}  // namespace pricing
