#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace convdiff {

/// Right-hand side of the model problem. The four named forcings have closed
/// forms for their mean, reduced solutions and exact solution; Custom is a
/// pointwise escape hatch without exact-solution support.
class Forcing {
public:
    enum class Tag { One, OneMinusTwoX, TwoX, CosSevenPiHalf, Custom };

    static Forcing one();
    static Forcing one_minus_two_x();
    static Forcing two_x();
    static Forcing cos_seven_pi_half();
    static Forcing custom(std::function<double(double)> fn);

    /// Parses the CLI spelling: "1", "1-2x", "2x", "cos7pi2".
    static std::optional<Forcing> from_label(std::string_view label);

    Tag tag() const noexcept { return tag_; }
    bool has_exact() const noexcept { return tag_ != Tag::Custom; }
    double operator()(double x) const;
    double mean() const noexcept { return mean_; }
    std::string_view label() const noexcept { return label_; }

private:
    Forcing(Tag tag, double mean, std::string label, std::function<double(double)> fn);

    Tag tag_;
    double mean_;
    std::string label_;
    std::function<double(double)> fn_;
};

} // namespace convdiff
