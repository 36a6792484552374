#include "leaderscope/wavelet.hpp"

#include <algorithm>
#include <cmath>

namespace leaderscope {

namespace {

// Orthonormal Daubechies analysis low-pass taps (extremal phase), ascending
// index, normalized to Σ = √2. 20 significant digits.
constexpr double k_haar[] = {
    0.70710678118654752440,
    0.70710678118654752440,
};
constexpr double k_db2[] = {
    -0.12940952255126038117,
    0.22414386804201338103,
    0.83651630373780790558,
    0.48296291314453414337,
};
constexpr double k_db3[] = {
    0.035226291885709536603,
    -0.085441273882026661693,
    -0.13501102001025458870,
    0.45987750211849157010,
    0.80689150931109257649,
    0.33267055295008261600,
};
constexpr double k_db4[] = {
    -0.010597401785069032105,
    0.032883011666885199735,
    0.030841381835560763627,
    -0.18703481171909308408,
    -0.027983769416859854211,
    0.63088076792985890788,
    0.71484657055291564709,
    0.23037781330889650086,
};
constexpr double k_db6[] = {
    -0.0010773010853084795649,
    0.0047772575109455106396,
    0.00055384220116149613925,
    -0.031582039317486029565,
    0.027522865530305728626,
    0.097501605587323049102,
    -0.12976686756726193556,
    -0.22626469396543982008,
    0.31525035170919762909,
    0.75113390802109535068,
    0.49462389039845308568,
    0.11154074335010946362,
};
constexpr double k_db8[] = {
    -0.00011747678412476953373,
    0.00067544940645056936637,
    -0.00039174037337694704630,
    -0.0048703529934515743104,
    0.0087460940474057767164,
    0.013981027917398281649,
    -0.044088253930794751507,
    -0.017369301001807546170,
    0.12874742662047845886,
    0.00047248457391328277036,
    -0.28401554296154692652,
    -0.015829105256349305667,
    0.58535468365420671277,
    0.67563073629728980681,
    0.31287159091429997066,
    0.054415842243104009955,
};

WaveletFilter build(const char* name, const double* taps, std::size_t len, int vm) {
    WaveletFilter f;
    f.name = name;
    f.lo.assign(taps, taps + len);
    f.hi.resize(len);
    for (std::size_t m = 0; m < len; ++m)
        f.hi[m] = ((m % 2 == 0) ? 1.0 : -1.0) * f.lo[len - 1 - m];
    f.vanishing_moments = vm;
    const double radius = std::max(1.0, double(len - 1) / 2.0);
    f.support_radius_log2 = int(std::ceil(std::log2(radius)));
    return f;
}

/// One periodic analysis step along a stride-1 row of length n (even):
/// approx[k] = Σ_m lo[m]·x[(2k+m) mod n], detail likewise with hi.
void analysis_step(const double* x, std::int64_t n, const WaveletFilter& f, double* approx,
                   double* detail) {
    const std::int64_t half = n / 2;
    const std::int64_t L = std::int64_t(f.lo.size());
    for (std::int64_t k = 0; k < half; ++k) {
        double a = 0.0, d = 0.0;
        const std::int64_t base = 2 * k;
        for (std::int64_t m = 0; m < L; ++m) {
            const double v = x[(base + m) % n];
            a += f.lo[m] * v;
            d += f.hi[m] * v;
        }
        approx[k] = a;
        detail[k] = d;
    }
}

/// Adjoint of analysis_step (exact inverse by orthonormality).
void synthesis_step(const double* approx, const double* detail, std::int64_t n,
                    const WaveletFilter& f, double* x) {
    const std::int64_t half = n / 2;
    const std::int64_t L = std::int64_t(f.lo.size());
    std::fill(x, x + n, 0.0);
    for (std::int64_t k = 0; k < half; ++k) {
        const std::int64_t base = 2 * k;
        for (std::int64_t m = 0; m < L; ++m) {
            x[(base + m) % n] += f.lo[m] * approx[k] + f.hi[m] * detail[k];
        }
    }
}

}  // namespace

WaveletFilter make_filter(const std::string& name) {
    if (name == "haar" || name == "db1") return build("haar", k_haar, 2, 1);
    if (name == "db2") return build("db2", k_db2, 4, 2);
    if (name == "db3") return build("db3", k_db3, 6, 3);
    if (name == "db4") return build("db4", k_db4, 8, 4);
    if (name == "db6") return build("db6", k_db6, 12, 6);
    if (name == "db8") return build("db8", k_db8, 16, 8);
    fail(ErrorKind::config, "FilterMismatch", "unknown filter '" + name + "'");
}

std::vector<std::string> filter_names() { return {"haar", "db2", "db3", "db4", "db6", "db8"}; }

double orthogonality_defect(const WaveletFilter& f) {
    const std::int64_t L = std::int64_t(f.lo.size());
    double worst = 0.0;
    for (std::int64_t t = 0; 2 * t < L; ++t) {
        double ll = 0.0, hh = 0.0, lh = 0.0;
        for (std::int64_t m = 0; m + 2 * t < L; ++m) {
            ll += f.lo[m] * f.lo[m + 2 * t];
            hh += f.hi[m] * f.hi[m + 2 * t];
            lh += f.lo[m] * f.hi[m + 2 * t];
        }
        const double target = (t == 0) ? 1.0 : 0.0;
        worst = std::max({worst, std::abs(ll - target), std::abs(hh - target), std::abs(lh)});
    }
    return worst;
}

void check_signal(const Signal& signal) {
    if (signal.d != 1 && signal.d != 2)
        fail(ErrorKind::input, "InvalidShape", "signal: d must be 1 or 2");
    if (signal.J < 0 || signal.J > 30)
        fail(ErrorKind::input, "InvalidShape", "signal: J out of range");
    const std::size_t expect = std::size_t(1) << (std::size_t(signal.J) * signal.d);
    if (signal.samples.size() != expect)
        fail(ErrorKind::input, "InvalidShape",
             "signal: expected " + std::to_string(expect) + " samples (d = " +
                 std::to_string(signal.d) + ", J = " + std::to_string(signal.J) + "), got " +
                 std::to_string(signal.samples.size()));
}

CoefficientPyramid CoefficientPyramid::zeros(int d, int J) {
    if (d != 1 && d != 2) fail(ErrorKind::config, "OutOfDomain", "pyramid: d must be 1 or 2");
    if (J < 0 || J > 30) fail(ErrorKind::config, "OutOfDomain", "pyramid: J out of range");
    CoefficientPyramid pyr;
    pyr.d = d;
    pyr.J = J;
    pyr.coarse.assign(1, 0.0);
    pyr.detail.resize(J);
    const int n_or = pyr.orientations();
    for (int j = 0; j < J; ++j) {
        pyr.detail[j].resize(n_or);
        for (int i = 0; i < n_or; ++i)
            pyr.detail[j][i].assign(std::size_t(pyr.cubes_per_scale(j)), 0.0);
    }
    return pyr;
}

void CoefficientPyramid::check() const {
    if (d != 1 && d != 2) fail(ErrorKind::input, "InvalidShape", "pyramid: d must be 1 or 2");
    if (J < 0 || J > 30) fail(ErrorKind::input, "InvalidShape", "pyramid: J out of range");
    if (coarse.size() != 1) fail(ErrorKind::input, "InvalidShape", "pyramid: coarse must hold one value");
    if (int(detail.size()) != J) fail(ErrorKind::input, "InvalidShape", "pyramid: scale count mismatch");
    for (int j = 0; j < J; ++j) {
        if (int(detail[j].size()) != orientations())
            fail(ErrorKind::input, "InvalidShape", "pyramid: orientation count mismatch at scale " +
                                                       std::to_string(j));
        for (const auto& band : detail[j])
            if (band.size() != std::size_t(cubes_per_scale(j)))
                fail(ErrorKind::input, "InvalidShape",
                     "pyramid: coefficient count mismatch at scale " + std::to_string(j));
    }
}

CoefficientPyramid decompose(const Signal& signal, const WaveletFilter& filter) {
    check_signal(signal);
    const int J = signal.J;
    CoefficientPyramid pyr = CoefficientPyramid::zeros(signal.d, J);

    if (signal.d == 1) {
        std::vector<double> a = signal.samples;
        std::vector<double> next, det;
        for (int j = J - 1; j >= 0; --j) {
            const std::int64_t n = std::int64_t(1) << (j + 1);
            next.resize(n / 2);
            det.resize(n / 2);
            analysis_step(a.data(), n, filter, next.data(), det.data());
            const double scale = pow2(double(j - J) / 2.0);  // L∞ normalization, d = 1
            for (std::int64_t k = 0; k < n / 2; ++k) pyr.detail[j][0][k] = scale * det[k];
            a.assign(next.begin(), next.end());
        }
        pyr.coarse[0] = pow2(-double(J) / 2.0) * a[0];
        return pyr;
    }

    // d == 2: separable step per level. Grid at level j+1 is n×n, row-major.
    std::vector<double> a = signal.samples;
    for (int j = J - 1; j >= 0; --j) {
        const std::int64_t n = std::int64_t(1) << (j + 1);
        const std::int64_t half = n / 2;
        // Along axis 0 (rows): produce low/high halves per row.
        std::vector<double> lo_x(half * n), hi_x(half * n);  // [k0 + half*k1]
        std::vector<double> row_a(half), row_d(half);
        for (std::int64_t k1 = 0; k1 < n; ++k1) {
            analysis_step(a.data() + k1 * n, n, filter, row_a.data(), row_d.data());
            for (std::int64_t k0 = 0; k0 < half; ++k0) {
                lo_x[k0 + half * k1] = row_a[k0];
                hi_x[k0 + half * k1] = row_d[k0];
            }
        }
        // Along axis 1 (columns) on each half.
        std::vector<double> col(n), col_a(half), col_d(half);
        std::vector<double> ll(half * half), lh(half * half), hl(half * half), hh(half * half);
        for (std::int64_t k0 = 0; k0 < half; ++k0) {
            for (std::int64_t k1 = 0; k1 < n; ++k1) col[k1] = lo_x[k0 + half * k1];
            analysis_step(col.data(), n, filter, col_a.data(), col_d.data());
            for (std::int64_t k1 = 0; k1 < half; ++k1) {
                ll[k0 + half * k1] = col_a[k1];
                lh[k0 + half * k1] = col_d[k1];
            }
            for (std::int64_t k1 = 0; k1 < n; ++k1) col[k1] = hi_x[k0 + half * k1];
            analysis_step(col.data(), n, filter, col_a.data(), col_d.data());
            for (std::int64_t k1 = 0; k1 < half; ++k1) {
                hl[k0 + half * k1] = col_a[k1];
                hh[k0 + half * k1] = col_d[k1];
            }
        }
        const double scale = pow2(double(j - J));  // 2^{(j−J)d/2}, d = 2
        for (std::int64_t t = 0; t < half * half; ++t) {
            pyr.detail[j][0][t] = scale * hl[t];  // i = 1: high-pass along axis 0
            pyr.detail[j][1][t] = scale * lh[t];  // i = 2: high-pass along axis 1
            pyr.detail[j][2][t] = scale * hh[t];  // i = 3: high-pass along both
        }
        a.assign(ll.begin(), ll.end());
    }
    pyr.coarse[0] = pow2(-double(J)) * a[0];
    return pyr;
}

Signal reconstruct(const CoefficientPyramid& pyramid, const WaveletFilter& filter) {
    pyramid.check();
    const int J = pyramid.J;
    Signal out;
    out.d = pyramid.d;
    out.J = J;

    if (pyramid.d == 1) {
        std::vector<double> a{pow2(double(J) / 2.0) * pyramid.coarse[0]};
        std::vector<double> det, next;
        for (int j = 0; j < J; ++j) {
            const std::int64_t n = std::int64_t(1) << (j + 1);
            const double unscale = pow2(double(J - j) / 2.0);
            det.resize(n / 2);
            for (std::int64_t k = 0; k < n / 2; ++k) det[k] = unscale * pyramid.detail[j][0][k];
            next.resize(n);
            synthesis_step(a.data(), det.data(), n, filter, next.data());
            a.assign(next.begin(), next.end());
        }
        out.samples = std::move(a);
        return out;
    }

    std::vector<double> a{pow2(double(J)) * pyramid.coarse[0]};
    for (int j = 0; j < J; ++j) {
        const std::int64_t half = std::int64_t(1) << j;
        const std::int64_t n = 2 * half;
        const double unscale = pow2(double(J - j));
        // Undo the column step: reassemble the two x-halves at height n.
        std::vector<double> lo_x(half * n), hi_x(half * n);
        std::vector<double> col_a(half), col_d(half), col(n);
        for (std::int64_t k0 = 0; k0 < half; ++k0) {
            for (std::int64_t k1 = 0; k1 < half; ++k1) {
                col_a[k1] = a[k0 + half * k1];
                col_d[k1] = unscale * pyramid.detail[j][1][k0 + half * k1];  // LH
            }
            synthesis_step(col_a.data(), col_d.data(), n, filter, col.data());
            for (std::int64_t k1 = 0; k1 < n; ++k1) lo_x[k0 + half * k1] = col[k1];
            for (std::int64_t k1 = 0; k1 < half; ++k1) {
                col_a[k1] = unscale * pyramid.detail[j][0][k0 + half * k1];  // HL
                col_d[k1] = unscale * pyramid.detail[j][2][k0 + half * k1];  // HH
            }
            synthesis_step(col_a.data(), col_d.data(), n, filter, col.data());
            for (std::int64_t k1 = 0; k1 < n; ++k1) hi_x[k0 + half * k1] = col[k1];
        }
        // Undo the row step.
        std::vector<double> next(n * n), row_a(half), row_d(half);
        for (std::int64_t k1 = 0; k1 < n; ++k1) {
            for (std::int64_t k0 = 0; k0 < half; ++k0) {
                row_a[k0] = lo_x[k0 + half * k1];
                row_d[k0] = hi_x[k0 + half * k1];
            }
            synthesis_step(row_a.data(), row_d.data(), n, filter, next.data() + k1 * n);
        }
        a = std::move(next);
    }
    out.samples = std::move(a);
    return out;
}

}  // namespace leaderscope
