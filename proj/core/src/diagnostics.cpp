#include "illiqcorr/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "illiqcorr/errors.hpp"

namespace illiq::diag {

Profile probability_profile(const ReturnSeries& series) {
    const std::size_t n = series.size();
    const std::size_t total = series.nonzero_count();
    if (total == 0) throw AllZero();

    Profile p;
    p.kind = ProfileKind::Probability;
    p.s.resize(n);
    p.value.resize(n);
    std::size_t running = 0;
    for (std::size_t k = 0; k < n; ++k) {
        running += series.indicators[k];
        p.s[k] = static_cast<double>(k + 1) / static_cast<double>(n);
        p.value[k] = static_cast<double>(running) / static_cast<double>(total);
    }
    return p;
}

Profile absolute_return_profile(const ReturnSeries& series) {
    std::vector<double> abs_nonzero;
    abs_nonzero.reserve(series.size());
    double total = 0.0;
    for (std::size_t t = 0; t < series.size(); ++t) {
        if (!series.indicators[t]) continue;
        const double a = std::fabs(series.values[t]);
        abs_nonzero.push_back(a);
        total += a;
    }
    const std::size_t nu = abs_nonzero.size();
    if (nu < 2) throw TooFewNonzero(nu, 2);

    Profile p;
    p.kind = ProfileKind::AbsoluteReturn;
    p.s.resize(nu);
    p.value.resize(nu);
    double running = 0.0;
    for (std::size_t j = 0; j < nu; ++j) {
        running += abs_nonzero[j];
        p.s[j] = static_cast<double>(j + 1) / static_cast<double>(nu);
        p.value[j] = running / total;
    }
    // guard the tail against rounding: the profile ends at exactly 1
    p.value[nu - 1] = 1.0;
    return p;
}

std::string profile_kind_name(ProfileKind kind) {
    return kind == ProfileKind::Probability ? "probability" : "absolute_return";
}

void write_profile_csv(const Profile& profile, std::ostream& out) {
    const auto saved = out.precision(std::numeric_limits<double>::max_digits10);
    out << "s,value,kind\n";
    const std::string name = profile_kind_name(profile.kind);
    for (std::size_t i = 0; i < profile.size(); ++i)
        out << profile.s[i] << ',' << profile.value[i] << ',' << name << '\n';
    out.precision(saved);
}

}  // namespace illiq::diag
