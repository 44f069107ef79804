#pragma once

#include <stdexcept>
#include <string>

namespace tcmc {

/// A loop left the big cell: the factorization linear system is singular
/// (or numerically indistinguishable from singular) at the working
/// truncation order. Carries the reciprocal condition estimate.
class big_cell_error : public std::runtime_error {
public:
    explicit big_cell_error(double rcond_estimate, const std::string& where)
        : std::runtime_error("big-cell failure in " + where +
                             " (reciprocal condition estimate " +
                             std::to_string(rcond_estimate) + ")"),
          rcond(rcond_estimate) {}
    double rcond;
};

/// Cumulative truncation loss exceeded the configured budget; results would
/// be silently wrong. The fix is a larger truncation order.
class truncation_overflow : public std::runtime_error {
public:
    explicit truncation_overflow(double loss)
        : std::runtime_error("cumulative truncation tail loss " +
                             std::to_string(loss) +
                             " exceeds budget; increase the truncation order N"),
          tail_loss(loss) {}
    double tail_loss;
};

class not_invertible_error : public std::runtime_error {
public:
    explicit not_invertible_error(const std::string& what)
        : std::runtime_error(what) {}
};

} // namespace tcmc
