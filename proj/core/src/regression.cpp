#include "leaderscope/regression.hpp"

#include <cmath>

#include "leaderscope/errors.hpp"

namespace leaderscope {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size())
        fail(ErrorKind::config, "OutOfDomain", "fit_line: mismatched lengths");
    const std::size_t n = x.size();
    if (n < 2) fail(ErrorKind::precondition, "ResolutionError", "fit_line: need at least 2 points");

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= double(n);
    my /= double(n);

    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0)
        fail(ErrorKind::precondition, "ResolutionError", "fit_line: degenerate abscissae");

    LineFit fit;
    fit.n = n;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (n > 2) {
        double rss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = y[i] - (fit.intercept + fit.slope * x[i]);
            rss += r * r;
        }
        fit.stderr_slope = std::sqrt(rss / double(n - 2) / sxx);
    }
    return fit;
}

}  // namespace leaderscope
