#include "convdiff/forcing.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace convdiff {

namespace {
constexpr double kOmega = 7.0 * std::numbers::pi / 2.0;
}

Forcing::Forcing(Tag tag, double mean, std::string label, std::function<double(double)> fn)
    : tag_(tag), mean_(mean), label_(std::move(label)), fn_(std::move(fn)) {}

Forcing Forcing::one() {
    return Forcing(Tag::One, 1.0, "1", [](double) { return 1.0; });
}

Forcing Forcing::one_minus_two_x() {
    return Forcing(Tag::OneMinusTwoX, 0.0, "1-2x", [](double x) { return 1.0 - 2.0 * x; });
}

Forcing Forcing::two_x() {
    return Forcing(Tag::TwoX, 1.0, "2x", [](double x) { return 2.0 * x; });
}

Forcing Forcing::cos_seven_pi_half() {
    // mean = (2/(7*pi)) * sin(7*pi/2) = -2/(7*pi)
    return Forcing(Tag::CosSevenPiHalf, -2.0 / (7.0 * std::numbers::pi), "cos7pi2",
                   [](double x) { return std::cos(kOmega * x); });
}

Forcing Forcing::custom(std::function<double(double)> fn) {
    if (!fn) throw std::invalid_argument("Forcing::custom: empty callable");
    return Forcing(Tag::Custom, std::numeric_limits<double>::quiet_NaN(), "custom", std::move(fn));
}

std::optional<Forcing> Forcing::from_label(std::string_view label) {
    if (label == "1") return one();
    if (label == "1-2x") return one_minus_two_x();
    if (label == "2x") return two_x();
    if (label == "cos7pi2") return cos_seven_pi_half();
    return std::nullopt;
}

double Forcing::operator()(double x) const { return fn_(x); }

} // namespace convdiff
