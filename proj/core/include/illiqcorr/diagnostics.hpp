#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "illiqcorr/series.hpp"

namespace illiq::diag {

// Cumulative profiles compared against the identity to decide which
// autocorrelation family a series calls for. A probability profile hugging
// the diagonal says the zero-return probability is roughly constant; an
// absolute-return profile bowing away from it signals a drifting return
// scale.
enum class ProfileKind { Probability, AbsoluteReturn };

struct Profile {
    ProfileKind kind = ProfileKind::Probability;
    std::vector<double> s;       // grid points in (0,1]
    std::vector<double> value;   // nondecreasing, ends at exactly 1

    std::size_t size() const { return s.size(); }
};

/**
 * Normalized running count of nonzero returns, evaluated at s = k/n:
 * the fraction of all trading activity that happened by time k.
 * @throws AllZero
 */
Profile probability_profile(const ReturnSeries& series);

/**
 * Normalized running sum of |r| over the nonzero observations only,
 * evaluated at s = j/nu for the j-th nonzero value.
 * @throws TooFewNonzero
 */
Profile absolute_return_profile(const ReturnSeries& series);

std::string profile_kind_name(ProfileKind kind);

/** Plot-ready export: rows s,value,kind. */
void write_profile_csv(const Profile& profile, std::ostream& out);

}  // namespace illiq::diag
