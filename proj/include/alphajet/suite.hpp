#pragma once

// Property suites. Every property is a predicate over randomly generated
// cases; case i of property P draws from Rng::derive(seed, P, i), so results
// depend only on the seed and the mode.

#include "alphajet/random.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace alphajet {

struct SuiteOptions
{
    std::uint64_t seed = 0;
    Mode mode = Mode::Exact;
    /// 0 keeps each property's default case count.
    std::size_t cases = 0;
};

struct Outcome
{
    bool ok = true;
    double deviation = 0.0;
    std::string detail;

    /// Folds one comparison into the outcome; the first failure's text is kept.
    void check(bool good, double dev, const std::string& what);
};

struct Property
{
    std::string module;
    std::string name;
    std::size_t default_cases;
    /// Enumerations over a fixed range ignore SuiteOptions::cases.
    bool fixed;
    std::function<Outcome(Rng&, std::size_t, Mode)> run;
};

struct PropertyResult
{
    std::string module;
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    double max_abs_deviation = 0.0;
    std::string first_failure;

    bool pass() const noexcept { return failures == 0; }
};

const std::vector<Property>& all_properties();
/// Throws InvalidArgument for an unknown name.
const Property& find_property(std::string_view name);

PropertyResult run_property(const Property& p, const SuiteOptions& options);
/// Every property, in registration order (weil_algebra, smooth_expr, map_jet,
/// alpha_jet, bundle_charts).
std::vector<PropertyResult> run_all_suites(const SuiteOptions& options);

} // namespace alphajet
